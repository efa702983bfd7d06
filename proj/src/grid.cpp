#include "hmcf/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hmcf/errors.hpp"

namespace hmcf {

UniformGrid3 UniformGrid3::box(const GroupPoint& lo, const GroupPoint& hi, std::array<int, 3> dims) {
  UniformGrid3 g;
  g.origin = lo;
  g.dims = dims;
  const std::array<double, 3> span{hi.x1 - lo.x1, hi.x2 - lo.x2, hi.x3 - lo.x3};
  for (int a = 0; a < 3; ++a) {
    require(dims[a] >= 3, ErrorCode::InvalidArgument, "grid needs at least 3 nodes per axis");
    g.spacing[a] = span[a] / (dims[a] - 1);
  }
  g.validate();
  return g;
}

UniformGrid3 UniformGrid3::centered(std::array<double, 3> half_width, std::array<int, 3> dims) {
  return box({-half_width[0], -half_width[1], -half_width[2]}, {half_width[0], half_width[1], half_width[2]}, dims);
}

void UniformGrid3::validate() const {
  for (int a = 0; a < 3; ++a) {
    require(dims[a] >= 3, ErrorCode::InvalidArgument, "grid needs at least 3 nodes per axis");
    require(spacing[a] > 0.0 && std::isfinite(spacing[a]), ErrorCode::InvalidArgument,
            "grid spacing must be positive on axis " + std::to_string(a + 1));
  }
  require(is_finite(origin), ErrorCode::InvalidArgument, "grid origin must be finite");
}

double UniformGrid3::max_spacing() const { return *std::max_element(spacing.begin(), spacing.end()); }

ScalarField::ScalarField(UniformGrid3 grid, std::array<AxisBoundary, 3> boundary, double fill)
    : grid_(grid), boundary_(boundary), values_(grid.size(), fill) {
  grid_.validate();
}

void ScalarField::set_boundary(std::array<AxisBoundary, 3> b) { boundary_ = b; }

namespace {

// Resolves one axis. Returns false and sets `far` when the index falls in a
// far-field ghost region.
inline bool resolve_axis(int& idx, int n, const AxisBoundary& b, double& far) {
  if (idx >= 0 && idx < n) return true;
  switch (b.kind) {
    case BoundaryKind::Periodic:
      idx = ((idx % n) + n) % n;
      return true;
    case BoundaryKind::Replicate:
      idx = idx < 0 ? 0 : n - 1;
      return true;
    case BoundaryKind::FarField:
      far = idx < 0 ? b.lo : b.hi;
      return false;
  }
  return true;
}

}  // namespace

double ScalarField::fetch(int i, int j, int k) const {
  double far = 0.0;
  if (!resolve_axis(i, grid_.dims[0], boundary_[0], far)) return far;
  if (!resolve_axis(j, grid_.dims[1], boundary_[1], far)) return far;
  if (!resolve_axis(k, grid_.dims[2], boundary_[2], far)) return far;
  return values_[grid_.index(i, j, k)];
}

double ScalarField::sample(const GroupPoint& x) const {
  const double p[3] = {grid_.locate(0, x.x1), grid_.locate(1, x.x2), grid_.locate(2, x.x3)};
  int base[3];
  double frac[3];
  for (int a = 0; a < 3; ++a) {
    const double f = std::floor(p[a]);
    base[a] = static_cast<int>(f);
    frac[a] = p[a] - f;
  }
  double acc = 0.0;
  for (int c = 0; c < 8; ++c) {
    const int di = c >> 2 & 1, dj = c >> 1 & 1, dk = c & 1;
    const double w = (di ? frac[0] : 1.0 - frac[0]) * (dj ? frac[1] : 1.0 - frac[1]) * (dk ? frac[2] : 1.0 - frac[2]);
    if (w == 0.0) continue;
    acc += w * fetch(base[0] + di, base[1] + dj, base[2] + dk);
  }
  return acc;
}

double ScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double ScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }
double ScalarField::sum() const { return std::accumulate(values_.begin(), values_.end(), 0.0); }

std::array<AxisBoundary, 3> uniform_far_field(double value) {
  const auto b = AxisBoundary::far_field(value, value);
  return {b, b, b};
}

}  // namespace hmcf
