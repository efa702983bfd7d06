#pragma once

#include <array>
#include <functional>

#include "hmcf/grid.hpp"
#include "hmcf/group.hpp"

namespace hmcf {

/// Smooth function on R^3 with its exact Euclidean gradient and Hessian.
/// Used to drive tests of the discrete operators and the curvature formula.
struct TestFunction {
  using Vec = std::array<double, 3>;
  using Mat = std::array<std::array<double, 3>, 3>;

  std::function<double(const GroupPoint&)> value;
  std::function<Vec(const GroupPoint&)> grad;
  std::function<Mat(const GroupPoint&)> hess;

  /// Level function x3 - f(x1, x2) of the graph z = f(x, y).
  static TestFunction graph(std::function<double(double, double)> f,
                            std::function<std::array<double, 2>(double, double)> df,
                            std::function<std::array<double, 3>(double, double)> d2f);
};

/// Horizontal gradient (X1 u, X2 u) from exact derivatives.
std::array<double, 2> horizontal_gradient(const TestFunction& u, const GroupPoint& x);

/// Symmetrised horizontal Hessian [[X1X1u, (X1X2)*u], [(X1X2)*u, X2X2u]].
std::array<std::array<double, 2>, 2> horizontal_hessian(const TestFunction& u, const GroupPoint& x);

/// Exact sub-Laplacian X1X1u + X2X2u.
double exact_horizontal_laplacian(const TestFunction& u, const GroupPoint& x);

/// Centred difference of X_which u at a grid node (which in {1,2,3}).
/// Neighbours outside the grid are resolved through the boundary policy.
double apply_X(const ScalarField& field, int which, int i, int j, int k);

/// Sub-Laplacian in expanded coordinate form
/// d11 + d22 + (x1^2 + x2^2)/4 d33 + x1 d23 - x2 d13, centred differences.
ScalarField horizontal_laplacian(const ScalarField& field);

/// u(x0 o x) minus its second-order horizontal Taylor polynomial at x0.
double taylor_residual(const TestFunction& u, const GroupPoint& x0, const GroupPoint& x);

/// E / |grad_H f|^3 for a level function f, the sub-Laplacian of the signed
/// distance to its zero set. Throws CharacteristicPoint when
/// |grad_H f| <= char_tol * (1 + |grad f|).
double graph_horizontal_laplacian(const TestFunction& f, const GroupPoint& x, double char_tol = 1e-8);

}  // namespace hmcf
