#pragma once

#include <cmath>

namespace hmcf {

/// A point of the first Heisenberg group, x = (x1, x2, x3) with x3 the
/// vertical coordinate. Also used for algebra coordinates of SE(2).
struct GroupPoint {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;

  friend bool operator==(const GroupPoint&, const GroupPoint&) = default;
};

inline GroupPoint operator-(const GroupPoint& a) { return {-a.x1, -a.x2, -a.x3}; }

/// x o y = (x1 + y1, x2 + y2, x3 + y3 + (x1 y2 - x2 y1) / 2).
inline GroupPoint group_mul(const GroupPoint& x, const GroupPoint& y) {
  return {x.x1 + y.x1, x.x2 + y.x2, x.x3 + y.x3 + 0.5 * (x.x1 * y.x2 - x.x2 * y.x1)};
}

inline GroupPoint group_inv(const GroupPoint& x) { return -x; }

/// Anisotropic dilation (l x1, l x2, l^2 x3).
inline GroupPoint dilate(double lambda, const GroupPoint& x) {
  return {lambda * x.x1, lambda * x.x2, lambda * lambda * x.x3};
}

/// Homogeneous gauge ((x1^2 + x2^2)^2 + 16 x3^2)^(1/4).
inline double gauge_norm(const GroupPoint& x) {
  const double rho2 = x.x1 * x.x1 + x.x2 * x.x2;
  return std::sqrt(std::sqrt(rho2 * rho2 + 16.0 * x.x3 * x.x3));
}

inline bool is_finite(const GroupPoint& x) {
  return std::isfinite(x.x1) && std::isfinite(x.x2) && std::isfinite(x.x3);
}

}  // namespace hmcf
