#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "hmcf/group.hpp"

namespace hmcf {

enum class BoundaryKind {
  FarField,   // ghost cells take the far-field value of the side they lie on
  Replicate,  // ghost cells copy the nearest in-grid value
  Periodic,
};

struct AxisBoundary {
  BoundaryKind kind = BoundaryKind::Replicate;
  double lo = 0.0;  // far-field value on the -infinity side
  double hi = 0.0;  // far-field value on the +infinity side

  static AxisBoundary far_field(double lo, double hi) { return {BoundaryKind::FarField, lo, hi}; }
  static AxisBoundary replicate() { return {BoundaryKind::Replicate, 0.0, 0.0}; }
  static AxisBoundary periodic() { return {BoundaryKind::Periodic, 0.0, 0.0}; }
};

/// Uniform node-centred grid. On a periodic axis the n nodes cover
/// [origin, origin + n h) and node n coincides with node 0.
struct UniformGrid3 {
  GroupPoint origin;
  std::array<double, 3> spacing{1.0, 1.0, 1.0};
  std::array<int, 3> dims{3, 3, 3};

  /// Nodes at both ends of [lo, hi] on every axis.
  static UniformGrid3 box(const GroupPoint& lo, const GroupPoint& hi, std::array<int, 3> dims);
  /// Symmetric box [-half, half] per axis.
  static UniformGrid3 centered(std::array<double, 3> half_width, std::array<int, 3> dims);

  void validate() const;

  std::size_t size() const { return std::size_t(dims[0]) * dims[1] * dims[2]; }
  std::size_t index(int i, int j, int k) const { return (std::size_t(i) * dims[1] + j) * dims[2] + k; }

  double coord(int axis, double idx) const {
    const double o = axis == 0 ? origin.x1 : axis == 1 ? origin.x2 : origin.x3;
    return o + idx * spacing[axis];
  }
  GroupPoint point(int i, int j, int k) const { return {coord(0, i), coord(1, j), coord(2, k)}; }
  double upper(int axis) const { return coord(axis, dims[axis] - 1); }
  /// Fractional node index of a coordinate.
  double locate(int axis, double x) const {
    const double o = axis == 0 ? origin.x1 : axis == 1 ? origin.x2 : origin.x3;
    return (x - o) / spacing[axis];
  }
  double max_spacing() const;
};

/// Values on a UniformGrid3, k (axis 3) fastest.
class ScalarField {
 public:
  ScalarField() = default;
  ScalarField(UniformGrid3 grid, std::array<AxisBoundary, 3> boundary, double fill = 0.0);

  const UniformGrid3& grid() const { return grid_; }
  const std::array<AxisBoundary, 3>& boundary() const { return boundary_; }
  void set_boundary(std::array<AxisBoundary, 3> b);

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  double& at(int i, int j, int k) { return values_[grid_.index(i, j, k)]; }
  double at(int i, int j, int k) const { return values_[grid_.index(i, j, k)]; }

  /// Value at any integer index, resolving out-of-range indices through the
  /// per-axis boundary policy.
  double fetch(int i, int j, int k) const;

  /// Trilinear interpolation at a physical point, boundary-aware.
  double sample(const GroupPoint& x) const;

  double min() const;
  double max() const;
  double sum() const;

  /// Same grid and boundary, values replaced.
  ScalarField like(double fill = 0.0) const { return ScalarField(grid_, boundary_, fill); }

 private:
  UniformGrid3 grid_;
  std::array<AxisBoundary, 3> boundary_{};
  std::vector<double> values_;
};

/// Far-field boundary on all three axes with the same value on both sides.
std::array<AxisBoundary, 3> uniform_far_field(double value);

}  // namespace hmcf
