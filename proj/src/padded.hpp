#pragma once

// Ghost-padded copy of a ScalarField so stencil inner loops run without
// boundary branches. Internal to the library.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "hmcf/grid.hpp"

namespace hmcf::detail {

struct Padded {
  std::array<int, 3> n{};    // interior dims
  std::array<int, 3> pad{};  // ghost width per side
  std::array<int, 3> dim{};  // padded dims
  std::vector<double> data;

  Padded() = default;
  Padded(std::array<int, 3> interior, std::array<int, 3> ghost);

  // Indices are interior-relative and may be negative down to -pad.
  std::size_t idx(int i, int j, int k) const {
    return (std::size_t(i + pad[0]) * dim[1] + std::size_t(j + pad[1])) * dim[2] + std::size_t(k + pad[2]);
  }
  double* line(int i, int j) { return data.data() + idx(i, j, 0); }
  const double* line(int i, int j) const { return data.data() + idx(i, j, 0); }

  void load(std::span<const double> interior);
  void store(std::span<double> interior) const;
  /// Fills every ghost cell from the interior according to the boundary policy.
  void fill_ghosts(const std::array<AxisBoundary, 3>& boundary);
};

Padded make_padded(const ScalarField& f, std::array<int, 3> ghost);

}  // namespace hmcf::detail
