#include "hmcf/simd.hpp"

namespace hmcf::simd {

namespace {

void centered_line(const CenteredLine& a) {
  for (int k = 0; k < a.n; ++k) {
    const double c2 = 2.0 * a.c[k];
    a.out[k] = a.c11 * (a.e[k] + a.w[k] - c2) + a.c22 * (a.nn[k] + a.s[k] - c2) +
               a.c33 * (a.c[k + 1] + a.c[k - 1] - c2) +
               a.c23 * (a.nn[k + 1] - a.nn[k - 1] - a.s[k + 1] + a.s[k - 1]) +
               a.c13 * (a.e[k + 1] - a.e[k - 1] - a.w[k + 1] + a.w[k - 1]);
  }
}

void directional_line(const DirectionalLine& a) {
  const double ge = 1.0 - a.fe, gw = 1.0 - a.fw, gn = 1.0 - a.fn, gs = 1.0 - a.fs;
  // Increment form keeps constants exact.
  for (int k = 0; k < a.n; ++k) {
    const double c = a.c[k];
    const double de = ge * (a.e[k] - c) + a.fe * (a.e[k + 1] - c);
    const double dw = gw * (a.w[k] - c) + a.fw * (a.w[k + 1] - c);
    const double dn = gn * (a.nn[k] - c) + a.fn * (a.nn[k + 1] - c);
    const double ds = gs * (a.s[k] - c) + a.fs * (a.s[k + 1] - c);
    a.out[k] = c + a.a1 * (de + dw) + a.a2 * (dn + ds);
  }
}

void se2_line(const Se2Line& a) {
  for (int k = 0; k < a.n; ++k) {
    const double c2 = 2.0 * a.c[k];
    a.out[k] = a.a11[k] * (a.e[k] + a.w[k] - c2) + a.a12[k] * (a.ne[k] - a.se[k] - a.nw[k] + a.sw[k]) +
               a.a22[k] * (a.nn[k] + a.s[k] - c2) + a.att * (a.c[k + 1] + a.c[k - 1] - c2);
  }
}

void fir_accumulate(int n, const double* x, const double* w, int ntaps, double* y) {
  for (int t = 0; t < ntaps; ++t) {
    const double wt = w[t];
    const double* xt = x + t;
    for (int k = 0; k < n; ++k) y[k] += wt * xt[k];
  }
}

}  // namespace

const Kernels& scalar_kernels() {
  static const Kernels table{"scalar", centered_line, directional_line, se2_line, fir_accumulate};
  return table;
}

}  // namespace hmcf::simd
