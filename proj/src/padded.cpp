#include "padded.hpp"

#include <algorithm>

namespace hmcf::detail {

Padded::Padded(std::array<int, 3> interior, std::array<int, 3> ghost) : n(interior), pad(ghost) {
  for (int a = 0; a < 3; ++a) dim[a] = n[a] + 2 * pad[a];
  data.assign(std::size_t(dim[0]) * dim[1] * dim[2], 0.0);
}

void Padded::load(std::span<const double> interior) {
  for (int i = 0; i < n[0]; ++i)
    for (int j = 0; j < n[1]; ++j) {
      const double* src = interior.data() + (std::size_t(i) * n[1] + j) * n[2];
      std::copy(src, src + n[2], line(i, j));
    }
}

void Padded::store(std::span<double> interior) const {
  for (int i = 0; i < n[0]; ++i)
    for (int j = 0; j < n[1]; ++j) {
      const double* src = line(i, j);
      std::copy(src, src + n[2], interior.data() + (std::size_t(i) * n[1] + j) * n[2]);
    }
}

namespace {

inline bool resolve(int& idx, int n, const AxisBoundary& b, double& far) {
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

void Padded::fill_ghosts(const std::array<AxisBoundary, 3>& b) {
  auto ghost_value = [&](int i, int j, int k) {
    double far = 0.0;
    if (!resolve(i, n[0], b[0], far)) return far;
    if (!resolve(j, n[1], b[1], far)) return far;
    if (!resolve(k, n[2], b[2], far)) return far;
    return data[idx(i, j, k)];
  };
  for (int i = -pad[0]; i < n[0] + pad[0]; ++i) {
    const bool in_i = i >= 0 && i < n[0];
    for (int j = -pad[1]; j < n[1] + pad[1]; ++j) {
      const bool in_j = j >= 0 && j < n[1];
      double* col = line(i, j);
      if (in_i && in_j) {
        for (int k = -pad[2]; k < 0; ++k) col[k] = ghost_value(i, j, k);
        for (int k = n[2]; k < n[2] + pad[2]; ++k) col[k] = ghost_value(i, j, k);
      } else {
        for (int k = -pad[2]; k < n[2] + pad[2]; ++k) col[k] = ghost_value(i, j, k);
      }
    }
  }
}

Padded make_padded(const ScalarField& f, std::array<int, 3> ghost) {
  Padded p(f.grid().dims, ghost);
  p.load(f.values());
  p.fill_ghosts(f.boundary());
  return p;
}

}  // namespace hmcf::detail
