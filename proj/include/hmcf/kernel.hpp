#pragma once

#include <memory>
#include <vector>

#include "hmcf/grid.hpp"
#include "hmcf/group.hpp"

namespace hmcf {

enum class KernelKind { Analytic, Heat };

/// Spatial discretisation of the sub-Laplacian inside the heat semigroup.
enum class HeatStencil {
  Directional,  // second differences along X1, X2 lines; monotone
  Centered,     // expanded coordinate form; second order, not monotone
};

/// Interaction kernel. The analytic kernel is the bump
///   J(x) = C exp(-1 / (1 - q)),  q = (x1^2 + x2^2 + |x3|) / s^2 < 1,
/// with s = support / 2 so that `support` is its gauge-norm radius.
/// The heat kernel is the sub-Laplacian semigroup at time `diffusion_time`.
struct KernelSpec {
  KernelKind kind = KernelKind::Heat;
  double support = 4.0;
  double diffusion_time = 1.0;
  int substeps = 0;  // 0: choose from the stability bound
  HeatStencil stencil = HeatStencil::Directional;

  static KernelSpec analytic(double support) {
    KernelSpec k;
    k.kind = KernelKind::Analytic;
    k.support = support;
    return k;
  }
  static KernelSpec heat(double tau = 1.0, HeatStencil stencil = HeatStencil::Directional) {
    KernelSpec k;
    k.kind = KernelKind::Heat;
    k.diffusion_time = tau;
    k.stencil = stencil;
    return k;
  }

  /// Bump scale s; the horizontal support radius of the analytic kernel.
  double scale() const { return 0.5 * support; }
  void validate() const;
};

/// Normalising constant C of the bump at scale s.
double bump_constant(double s);

double eval_kernel(const KernelSpec& J, const GroupPoint& x);

/// J^eps(x) = eps^-4 J(x1/eps, x2/eps, x3/eps^2); heat: tau -> eps^2 tau.
KernelSpec rescale_kernel(const KernelSpec& J, double eps);

/// Marginals of a kernel, tabulated on a uniform grid of spacing h centred at
/// zero. hat is the x3-marginal on the 2-D grid (row-major, x1 slow), bar the
/// (x2, x3)-marginal, moment(r) = int hat(r^2 + s^2) s^2 ds.
struct ReducedKernels {
  KernelSpec kernel;
  double h = 0.0;
  int half = 0;  // nodes r_i = i h for i in [-half, half]
  std::vector<double> bar;
  std::vector<double> moment;
  std::vector<double> hat;  // (2 half + 1)^2 values

  double r(int i) const { return (i - half) * h; }
  int size() const { return 2 * half + 1; }
  double bar_mass() const;
  double hat_mass() const;
};

/// Pointwise marginals, exact up to quadrature round-off.
double hat_kernel(const KernelSpec& J, double rho2);
double bar_kernel(const KernelSpec& J, double r);
double moment_kernel(const KernelSpec& J, double r);
/// Half-width beyond which bar and moment vanish (or drop below 1e-16 for heat).
double reduced_half_width(const KernelSpec& J);

/// Tabulate with spacing h. Default h puts 64 intervals across the support.
ReducedKernels reduce_kernels(const KernelSpec& J, double h = 0.0);

/// Precomputed weights of the group convolution m -> J * m on one grid.
/// Horizontal offsets use the trapezoidal rule on the grid; along x3 the
/// kernel is integrated exactly against the piecewise-linear interpolant of m,
/// including the shear of the group law, so x3 need not resolve eps^2.
class ConvolutionPlan {
 public:
  /// J is the already rescaled kernel J^eps.
  ConvolutionPlan(const UniformGrid3& grid, const KernelSpec& J, int phase_samples = 256);
  ~ConvolutionPlan();
  ConvolutionPlan(ConvolutionPlan&&) noexcept;
  ConvolutionPlan& operator=(ConvolutionPlan&&) noexcept;

  ScalarField apply(const ScalarField& m) const;
  int horizontal_offsets() const;
  /// Trapezoidal mass before renormalisation (should be close to 1).
  double raw_mass() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// (J^eps * m)(x) = int J^eps(y^-1 o x) m(y) dy on the grid of m.
/// Throws SupportUnresolved if the horizontal support radius of J^eps spans
/// fewer than 3 cells.
ScalarField group_convolve(const ScalarField& m, const KernelSpec& J, double eps);

/// Largest stable explicit substep for the given stencil on this grid.
double heat_stable_dt(const UniformGrid3& grid, HeatStencil stencil);
/// Substeps used for time tau: `requested` if positive (checked), else auto.
int heat_substeps(const UniformGrid3& grid, double tau, int requested, HeatStencil stencil);

/// v(tau) for dv/dt = sub-Laplacian v, v(0) = m, by explicit substeps.
ScalarField heat_semigroup(const ScalarField& m, double tau, int substeps = 0,
                           HeatStencil stencil = HeatStencil::Directional);

}  // namespace hmcf
