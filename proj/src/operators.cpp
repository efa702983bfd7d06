#include "hmcf/operators.hpp"

#include <cmath>
#include <string>

#include "hmcf/errors.hpp"
#include "hmcf/simd.hpp"
#include "padded.hpp"

namespace hmcf {

TestFunction TestFunction::graph(std::function<double(double, double)> f,
                                 std::function<std::array<double, 2>(double, double)> df,
                                 std::function<std::array<double, 3>(double, double)> d2f) {
  TestFunction u;
  u.value = [f](const GroupPoint& x) { return x.x3 - f(x.x1, x.x2); };
  u.grad = [df](const GroupPoint& x) -> Vec {
    const auto g = df(x.x1, x.x2);
    return {-g[0], -g[1], 1.0};
  };
  u.hess = [d2f](const GroupPoint& x) -> Mat {
    const auto h = d2f(x.x1, x.x2);  // f_xx, f_xy, f_yy
    return {{{-h[0], -h[1], 0.0}, {-h[1], -h[2], 0.0}, {0.0, 0.0, 0.0}}};
  };
  return u;
}

std::array<double, 2> horizontal_gradient(const TestFunction& u, const GroupPoint& x) {
  const auto g = u.grad(x);
  return {g[0] - 0.5 * x.x2 * g[2], g[1] + 0.5 * x.x1 * g[2]};
}

std::array<std::array<double, 2>, 2> horizontal_hessian(const TestFunction& u, const GroupPoint& x) {
  const auto H = u.hess(x);
  const double x1 = x.x1, x2 = x.x2;
  const double h11 = H[0][0] - x2 * H[0][2] + 0.25 * x2 * x2 * H[2][2];
  const double h22 = H[1][1] + x1 * H[1][2] + 0.25 * x1 * x1 * H[2][2];
  const double h12 = H[0][1] + 0.5 * x1 * H[0][2] - 0.5 * x2 * H[1][2] - 0.25 * x1 * x2 * H[2][2];
  return {{{h11, h12}, {h12, h22}}};
}

double exact_horizontal_laplacian(const TestFunction& u, const GroupPoint& x) {
  const auto h = horizontal_hessian(u, x);
  return h[0][0] + h[1][1];
}

double apply_X(const ScalarField& f, int which, int i, int j, int k) {
  const auto& g = f.grid();
  require(i >= 0 && i < g.dims[0] && j >= 0 && j < g.dims[1] && k >= 0 && k < g.dims[2],
          ErrorCode::IndexOutOfRange,
          "node (" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ") outside grid");
  require(which >= 1 && which <= 3, ErrorCode::InvalidArgument, "vector field index must be 1, 2 or 3");
  const double d3 = (f.fetch(i, j, k + 1) - f.fetch(i, j, k - 1)) / (2.0 * g.spacing[2]);
  if (which == 3) return d3;
  const GroupPoint x = g.point(i, j, k);
  if (which == 1) {
    const double d1 = (f.fetch(i + 1, j, k) - f.fetch(i - 1, j, k)) / (2.0 * g.spacing[0]);
    return d1 - 0.5 * x.x2 * d3;
  }
  const double d2 = (f.fetch(i, j + 1, k) - f.fetch(i, j - 1, k)) / (2.0 * g.spacing[1]);
  return d2 + 0.5 * x.x1 * d3;
}

ScalarField horizontal_laplacian(const ScalarField& f) {
  const auto& g = f.grid();
  const auto pad = detail::make_padded(f, {1, 1, 1});
  ScalarField out = f.like();
  const auto& kern = simd::active_kernels();
  const double h1 = g.spacing[0], h2 = g.spacing[1], h3 = g.spacing[2];
  const int n1 = g.dims[0], n2 = g.dims[1], n3 = g.dims[2];
  double* dst = out.values().data();
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n1; ++i) {
    const double x1 = g.coord(0, i);
    for (int j = 0; j < n2; ++j) {
      const double x2 = g.coord(1, j);
      simd::CenteredLine a{};
      a.n = n3;
      a.c = pad.line(i, j);
      a.e = pad.line(i + 1, j);
      a.w = pad.line(i - 1, j);
      a.nn = pad.line(i, j + 1);
      a.s = pad.line(i, j - 1);
      a.c11 = 1.0 / (h1 * h1);
      a.c22 = 1.0 / (h2 * h2);
      a.c33 = 0.25 * (x1 * x1 + x2 * x2) / (h3 * h3);
      a.c23 = x1 / (4.0 * h2 * h3);
      a.c13 = -x2 / (4.0 * h1 * h3);
      a.out = dst + g.index(i, j, 0);
      kern.centered_line(a);
    }
  }
  return out;
}

double taylor_residual(const TestFunction& u, const GroupPoint& x0, const GroupPoint& x) {
  const auto gh = horizontal_gradient(u, x0);
  const auto H = horizontal_hessian(u, x0);
  const double d3 = u.grad(x0)[2];
  const double quad = H[0][0] * x.x1 * x.x1 + 2.0 * H[0][1] * x.x1 * x.x2 + H[1][1] * x.x2 * x.x2;
  const double poly = u.value(x0) + gh[0] * x.x1 + gh[1] * x.x2 + d3 * x.x3 + 0.5 * quad;
  return u.value(group_mul(x0, x)) - poly;
}

double graph_horizontal_laplacian(const TestFunction& f, const GroupPoint& x, double char_tol) {
  const auto g = f.grad(x);
  const auto gh = horizontal_gradient(f, x);
  const double norm_h = std::hypot(gh[0], gh[1]);
  const double norm_e = std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2]);
  require(norm_h > char_tol * (1.0 + norm_e), ErrorCode::CharacteristicPoint,
          "horizontal gradient vanishes at the requested point");
  const auto H = horizontal_hessian(f, x);
  const double X1 = gh[0], X2 = gh[1];
  const double E = H[0][0] * X2 * X2 - 2.0 * H[0][1] * X1 * X2 + H[1][1] * X1 * X1;
  return E / (norm_h * norm_h * norm_h);
}

}  // namespace hmcf
