// Compiled with -mavx2 -mfma. Only reached through avx2_kernels() after a
// runtime CPU check.
#include <immintrin.h>

#include "hmcf/simd.hpp"

namespace hmcf::simd::detail {

namespace {

inline __m256d ld(const double* p) { return _mm256_loadu_pd(p); }
inline __m256d bc(double v) { return _mm256_set1_pd(v); }

void centered_line(const CenteredLine& a) {
  const __m256d c11 = bc(a.c11), c22 = bc(a.c22), c33 = bc(a.c33), c23 = bc(a.c23), c13 = bc(a.c13);
  const __m256d two = bc(2.0);
  int k = 0;
  for (; k + 4 <= a.n; k += 4) {
    const __m256d c = ld(a.c + k);
    const __m256d c2 = _mm256_mul_pd(two, c);
    __m256d acc = _mm256_mul_pd(c11, _mm256_sub_pd(_mm256_add_pd(ld(a.e + k), ld(a.w + k)), c2));
    acc = _mm256_fmadd_pd(c22, _mm256_sub_pd(_mm256_add_pd(ld(a.nn + k), ld(a.s + k)), c2), acc);
    acc = _mm256_fmadd_pd(c33, _mm256_sub_pd(_mm256_add_pd(ld(a.c + k + 1), ld(a.c + k - 1)), c2), acc);
    const __m256d x23 = _mm256_add_pd(_mm256_sub_pd(ld(a.nn + k + 1), ld(a.nn + k - 1)),
                                      _mm256_sub_pd(ld(a.s + k - 1), ld(a.s + k + 1)));
    acc = _mm256_fmadd_pd(c23, x23, acc);
    const __m256d x13 = _mm256_add_pd(_mm256_sub_pd(ld(a.e + k + 1), ld(a.e + k - 1)),
                                      _mm256_sub_pd(ld(a.w + k - 1), ld(a.w + k + 1)));
    acc = _mm256_fmadd_pd(c13, x13, acc);
    _mm256_storeu_pd(a.out + k, acc);
  }
  for (; k < a.n; ++k) {
    const double c2 = 2.0 * a.c[k];
    a.out[k] = a.c11 * (a.e[k] + a.w[k] - c2) + a.c22 * (a.nn[k] + a.s[k] - c2) +
               a.c33 * (a.c[k + 1] + a.c[k - 1] - c2) +
               a.c23 * (a.nn[k + 1] - a.nn[k - 1] - a.s[k + 1] + a.s[k - 1]) +
               a.c13 * (a.e[k + 1] - a.e[k - 1] - a.w[k + 1] + a.w[k - 1]);
  }
}

void directional_line(const DirectionalLine& a) {
  const double ge = 1.0 - a.fe, gw = 1.0 - a.fw, gn = 1.0 - a.fn, gs = 1.0 - a.fs;
  const __m256d vge = bc(ge), vgw = bc(gw), vgn = bc(gn), vgs = bc(gs);
  const __m256d vfe = bc(a.fe), vfw = bc(a.fw), vfn = bc(a.fn), vfs = bc(a.fs);
  const __m256d va1 = bc(a.a1), va2 = bc(a.a2);
  auto side = [](__m256d g, __m256d f, const double* p, __m256d c) {
    return _mm256_fmadd_pd(f, _mm256_sub_pd(ld(p + 1), c), _mm256_mul_pd(g, _mm256_sub_pd(ld(p), c)));
  };
  int k = 0;
  for (; k + 4 <= a.n; k += 4) {
    const __m256d c = ld(a.c + k);
    const __m256d de = side(vge, vfe, a.e + k, c), dw = side(vgw, vfw, a.w + k, c);
    const __m256d dn = side(vgn, vfn, a.nn + k, c), ds = side(vgs, vfs, a.s + k, c);
    __m256d acc = _mm256_fmadd_pd(va1, _mm256_add_pd(de, dw), c);
    acc = _mm256_fmadd_pd(va2, _mm256_add_pd(dn, ds), acc);
    _mm256_storeu_pd(a.out + k, acc);
  }
  for (; k < a.n; ++k) {
    const double c = a.c[k];
    const double de = ge * (a.e[k] - c) + a.fe * (a.e[k + 1] - c);
    const double dw = gw * (a.w[k] - c) + a.fw * (a.w[k + 1] - c);
    const double dn = gn * (a.nn[k] - c) + a.fn * (a.nn[k + 1] - c);
    const double ds = gs * (a.s[k] - c) + a.fs * (a.s[k + 1] - c);
    a.out[k] = c + a.a1 * (de + dw) + a.a2 * (dn + ds);
  }
}

void se2_line(const Se2Line& a) {
  const __m256d two = bc(2.0), att = bc(a.att);
  int k = 0;
  for (; k + 4 <= a.n; k += 4) {
    const __m256d c = ld(a.c + k);
    const __m256d c2 = _mm256_mul_pd(two, c);
    __m256d acc = _mm256_mul_pd(ld(a.a11 + k), _mm256_sub_pd(_mm256_add_pd(ld(a.e + k), ld(a.w + k)), c2));
    const __m256d x12 = _mm256_add_pd(_mm256_sub_pd(ld(a.ne + k), ld(a.se + k)), _mm256_sub_pd(ld(a.sw + k), ld(a.nw + k)));
    acc = _mm256_fmadd_pd(ld(a.a12 + k), x12, acc);
    acc = _mm256_fmadd_pd(ld(a.a22 + k), _mm256_sub_pd(_mm256_add_pd(ld(a.nn + k), ld(a.s + k)), c2), acc);
    acc = _mm256_fmadd_pd(att, _mm256_sub_pd(_mm256_add_pd(ld(a.c + k + 1), ld(a.c + k - 1)), c2), acc);
    _mm256_storeu_pd(a.out + k, acc);
  }
  for (; k < a.n; ++k) {
    const double c2 = 2.0 * a.c[k];
    a.out[k] = a.a11[k] * (a.e[k] + a.w[k] - c2) + a.a12[k] * (a.ne[k] - a.se[k] - a.nw[k] + a.sw[k]) +
               a.a22[k] * (a.nn[k] + a.s[k] - c2) + a.att * (a.c[k + 1] + a.c[k - 1] - c2);
  }
}

void fir_accumulate(int n, const double* x, const double* w, int ntaps, double* y) {
  int k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d acc = ld(y + k);
    for (int t = 0; t < ntaps; ++t) acc = _mm256_fmadd_pd(bc(w[t]), ld(x + t + k), acc);
    _mm256_storeu_pd(y + k, acc);
  }
  for (; k < n; ++k) {
    double acc = y[k];
    for (int t = 0; t < ntaps; ++t) acc += w[t] * x[t + k];
    y[k] = acc;
  }
}

}  // namespace

const Kernels& avx2_table() {
  static const Kernels table{"avx2", centered_line, directional_line, se2_line, fir_accumulate};
  return table;
}

}  // namespace hmcf::simd::detail
