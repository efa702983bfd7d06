#pragma once

#include <string_view>

// Inner loops of the stencil and convolution sweeps. Every kernel runs along
// one contiguous x3-line of a padded buffer; callers precompute the per-line
// coefficients. A portable scalar table is always present, an AVX2 table is
// chosen at runtime when the CPU supports it.

namespace hmcf::simd {

/// Centred expanded sub-Laplacian on one line.
struct CenteredLine {
  int n;
  const double* c;  // (i, j)
  const double* e;  // (i+1, j)
  const double* w;  // (i-1, j)
  const double* nn; // (i, j+1)
  const double* s;  // (i, j-1)
  double c11, c22, c33, c23, c13;
  double* out;
};

/// One explicit substep of the monotone directional heat stencil. The four
/// neighbour lines are pre-offset by the integer part of their x3 shift and
/// linearly interpolated with weight f toward index k + 1.
struct DirectionalLine {
  int n;
  const double* c;
  const double* e;
  const double* w;
  const double* nn;
  const double* s;
  double fe, fw, fn, fs;
  double a1, a2;  // dt / h1^2, dt / h2^2
  double* out;
};

/// SE(2) sub-Laplacian cos^2 d11 + 2 sin cos d12 + sin^2 d22 + d_theta^2 on
/// one theta-line with per-k coefficients.
struct Se2Line {
  int n;
  const double* c;
  const double* e;
  const double* w;
  const double* nn;
  const double* s;
  const double* ne;
  const double* nw;
  const double* se;
  const double* sw;
  const double* a11;  // cos^2 / h1^2
  const double* a12;  // 2 sin cos / (4 h1 h2)
  const double* a22;  // sin^2 / h2^2
  double att;         // 1 / h_theta^2
  double* out;
};

struct Kernels {
  std::string_view name;
  void (*centered_line)(const CenteredLine&);
  void (*directional_line)(const DirectionalLine&);
  void (*se2_line)(const Se2Line&);
  /// y[k] += sum_t w[t] x[k + t] for k in [0, n).
  void (*fir_accumulate)(int n, const double* x, const double* w, int ntaps, double* y);
};

const Kernels& scalar_kernels();
/// Null when the AVX2 variant was not built or the CPU lacks AVX2/FMA.
const Kernels* avx2_kernels();
/// AVX2 if available unless HMCF_SIMD=scalar is set in the environment.
const Kernels& active_kernels();

}  // namespace hmcf::simd
