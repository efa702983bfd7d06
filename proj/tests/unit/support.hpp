#pragma once

#include <cmath>
#include <functional>
#include <random>

#include "hmcf/grid.hpp"
#include "hmcf/operators.hpp"

namespace hmcf::test {

inline std::array<AxisBoundary, 3> replicate3() {
  return {AxisBoundary::replicate(), AxisBoundary::replicate(), AxisBoundary::replicate()};
}

inline std::array<AxisBoundary, 3> far3(double v) {
  const auto f = AxisBoundary::far_field(v, v);
  return {f, f, f};
}

inline ScalarField fill(const UniformGrid3& g, const std::array<AxisBoundary, 3>& b,
                        const std::function<double(const GroupPoint&)>& f) {
  ScalarField m(g, b);
  for (int i = 0; i < g.dims[0]; ++i)
    for (int j = 0; j < g.dims[1]; ++j)
      for (int k = 0; k < g.dims[2]; ++k) m.at(i, j, k) = f(g.point(i, j, k));
  return m;
}

inline ScalarField random_field(const UniformGrid3& g, const std::array<AxisBoundary, 3>& b, std::mt19937_64& rng,
                                double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> U(lo, hi);
  ScalarField m(g, b);
  for (auto& v : m.values()) v = U(rng);
  return m;
}

/// u = sin(x1) cos(x2) + x1 x3 + 0.3 x3^2, with exact derivatives.
inline TestFunction smooth_function() {
  TestFunction u;
  u.value = [](const GroupPoint& x) { return std::sin(x.x1) * std::cos(x.x2) + x.x1 * x.x3 + 0.3 * x.x3 * x.x3; };
  u.grad = [](const GroupPoint& x) {
    return TestFunction::Vec{std::cos(x.x1) * std::cos(x.x2) + x.x3, -std::sin(x.x1) * std::sin(x.x2),
                             x.x1 + 0.6 * x.x3};
  };
  u.hess = [](const GroupPoint& x) {
    const double s1 = std::sin(x.x1), c1 = std::cos(x.x1), s2 = std::sin(x.x2), c2 = std::cos(x.x2);
    return TestFunction::Mat{{{-s1 * c2, -c1 * s2, 1.0}, {-c1 * s2, -s1 * c2, 0.0}, {1.0, 0.0, 0.6}}};
  };
  return u;
}

}  // namespace hmcf::test
