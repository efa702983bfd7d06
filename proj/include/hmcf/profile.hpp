#pragma once

#include <vector>

#include "hmcf/kernel.hpp"

namespace hmcf {

/// Symmetric uniform grid on [-r_max, r_max] with an odd node count so that
/// r = 0 is a node.
struct Phase1DGrid {
  double r_max = 20.0;
  int n = 801;

  static Phase1DGrid with_spacing(double r_max, double h);
  double h() const { return 2.0 * r_max / (n - 1); }
  double r(int i) const { return -r_max + i * h(); }
  int center() const { return n / 2; }
  void validate() const;
};

/// Roots of arctanh(m) / beta = m + a, i.e. m = tanh(beta (m + a)).
struct Equilibria {
  double m_minus = 0.0;
  double m_zero = 0.0;
  double m_plus = 0.0;
  bool triple = false;  // false: one root, copied into all three slots
};

/// Forcing threshold a0(beta) below which three roots exist.
double triple_root_threshold(double beta);
Equilibria equilibria(double beta, double a = 0.0);
/// As equilibria() but throws NoTripleRoot when |a| >= a0(beta).
Equilibria equilibria_triple(double beta, double a = 0.0);

struct InstantonProfile {
  Phase1DGrid grid;
  std::vector<double> values;
  double beta = 0.0;
  double m_beta = 0.0;
  double residual = 0.0;
  int iterations = 0;

  /// Linear interpolation, +-m_beta beyond the grid.
  double operator()(double r) const;
};

enum class InstantonInit { Tanh, SmoothedSign };

struct InstantonOptions {
  double omega = 0.5;
  double tol = 1e-10;
  int max_iter = 50000;
  InstantonInit init = InstantonInit::Tanh;
};

/// Discrete J-bar * f on the profile grid, f continued by the given far-field
/// values beyond the ends. bar must be tabulated at the grid spacing; its
/// weights are rescaled to unit discrete mass.
std::vector<double> convolve_bar(const ReducedKernels& barJ, const std::vector<double>& f, double lo = 0.0,
                                 double hi = 0.0);

/// Sup-norm of -m + tanh(beta J-bar * m) with +-m_beta far field.
double instanton_residual(const ReducedKernels& barJ, const std::vector<double>& m, double beta, double m_beta);

/// Odd increasing solution of m = tanh(beta J-bar * m) by damped iteration.
InstantonProfile compute_instanton(const ReducedKernels& barJ, double beta, const Phase1DGrid& grid,
                                   const InstantonOptions& opt = {});
InstantonProfile compute_instanton(const KernelSpec& J, double beta, const Phase1DGrid& grid,
                                   const InstantonOptions& opt = {});

/// Centred-difference derivative of the profile (one-sided via the far field).
std::vector<double> profile_derivative(const InstantonProfile& p);

/// L f = -f + beta (1 - m^2) (J-bar * f), f taken as zero beyond the grid.
std::vector<double> apply_linearized(const std::vector<double>& f, const InstantonProfile& p,
                                     const ReducedKernels& barJ);

/// int f g / (1 - m^2) dr on the profile grid. Throws WeightBlowup if the
/// weight exceeds 1e12 anywhere.
double l2mu_inner(const std::vector<double>& f, const std::vector<double>& g, const InstantonProfile& p);

struct CorrectorResult {
  std::vector<double> m1;
  double parallel_component = 0.0;  // <Rhat, m'>_mu / <m', m'>_mu
  double residual = 0.0;            // sup |L m1 - Rhat_perp| after removing its m' component
};

/// Solves L m1 = Rhat_perp with <m1, m'>_mu = 0 through a bordered dense system.
CorrectorResult solve_corrector(const std::vector<double>& rhat, const InstantonProfile& p,
                                const ReducedKernels& barJ, double tol = 1e-8);

struct Mobility {
  double theta = 0.0;
  double N = 0.0;
  double h = 0.0;
  double r_max = 0.0;
};

/// theta = beta / (2N) int int m'(r) m'(r + r1) M(r1) dr dr1 with
/// M(r1) = int hat(r1^2 + s^2) s^2 ds and N = <m', m'>_mu.
Mobility compute_theta(const KernelSpec& J, const InstantonProfile& p);

}  // namespace hmcf
