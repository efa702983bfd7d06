#include "hmcf/profile.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <string>

#include "hmcf/errors.hpp"

namespace hmcf {

Phase1DGrid Phase1DGrid::with_spacing(double r_max, double h) {
  require(r_max > 0.0 && h > 0.0, ErrorCode::InvalidArgument, "profile grid needs r_max > 0 and h > 0");
  Phase1DGrid g;
  g.r_max = r_max;
  int cells = static_cast<int>(std::lround(2.0 * r_max / h));
  if (cells % 2 != 0) ++cells;
  g.n = cells + 1;
  g.validate();
  return g;
}

void Phase1DGrid::validate() const {
  require(r_max > 0.0 && std::isfinite(r_max), ErrorCode::InvalidArgument, "r_max must be positive");
  require(n >= 5 && n % 2 == 1, ErrorCode::InvalidArgument, "profile grid needs an odd node count >= 5");
}

// ---------------------------------------------------------------------------
// Equilibria

double triple_root_threshold(double beta) {
  require(beta > 1.0, ErrorCode::InvalidArgument, "beta must exceed 1");
  const double mc = std::sqrt(1.0 - 1.0 / beta);
  return mc - std::atanh(mc) / beta;
}

namespace {

double bisect_root(double beta, double a, double lo, double hi) {
  auto f = [&](double m) { return std::atanh(m) / beta - m - a; };
  boost::math::tools::eps_tolerance<double> tol(52);
  const auto r = boost::math::tools::bisect(f, lo, hi, tol);
  return 0.5 * (r.first + r.second);
}

}  // namespace

Equilibria equilibria(double beta, double a) {
  require(beta > 1.0, ErrorCode::InvalidArgument, "beta must exceed 1");
  require(std::isfinite(a), ErrorCode::InvalidArgument, "forcing must be finite");
  const double mc = std::sqrt(1.0 - 1.0 / beta);
  const double edge = 1.0 - 1e-15;
  Equilibria e;
  if (std::abs(a) < triple_root_threshold(beta)) {
    e.triple = true;
    e.m_minus = bisect_root(beta, a, -edge, -mc);
    e.m_plus = bisect_root(beta, a, mc, edge);
    e.m_zero = a == 0.0 ? 0.0 : bisect_root(beta, a, -mc, mc);
    return e;
  }
  // Single root, on the side of the forcing.
  const double root = a > 0.0 ? bisect_root(beta, a, -mc, edge) : bisect_root(beta, a, -edge, mc);
  e.m_minus = e.m_zero = e.m_plus = root;
  return e;
}

Equilibria equilibria_triple(double beta, double a) {
  const auto e = equilibria(beta, a);
  require(e.triple, ErrorCode::NoTripleRoot,
          "forcing " + std::to_string(a) + " exceeds threshold " + std::to_string(triple_root_threshold(beta)) +
              "; single root " + std::to_string(e.m_plus));
  return e;
}

// ---------------------------------------------------------------------------
// Instanton

double InstantonProfile::operator()(double r) const {
  const double h = grid.h();
  const double p = (r + grid.r_max) / h;
  if (p <= 0.0) return p < 0.0 ? -m_beta : values.front();
  if (p >= grid.n - 1) return p > grid.n - 1 ? m_beta : values.back();
  const int i = static_cast<int>(p);
  const double f = p - i;
  return (1.0 - f) * values[i] + f * values[i + 1];
}

std::vector<double> convolve_bar(const ReducedKernels& barJ, const std::vector<double>& f, double lo, double hi) {
  const int n = static_cast<int>(f.size());
  const int half = barJ.half;
  // Unit discrete mass keeps +-m_beta exact fixed points of the far field.
  const double w = 1.0 / (barJ.bar_mass() / barJ.h);
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int t = -half; t <= half; ++t) {
      const int j = i - t;
      const double v = j < 0 ? lo : j >= n ? hi : f[j];
      acc += barJ.bar[t + half] * v;
    }
    out[i] = acc * w;
  }
  return out;
}

double instanton_residual(const ReducedKernels& barJ, const std::vector<double>& m, double beta, double m_beta) {
  const auto c = convolve_bar(barJ, m, -m_beta, m_beta);
  double res = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) res = std::max(res, std::abs(-m[i] + std::tanh(beta * c[i])));
  return res;
}

namespace {

void check_spacing(const ReducedKernels& barJ, const Phase1DGrid& g) {
  require(std::abs(barJ.h - g.h()) <= 1e-12 * g.h(), ErrorCode::InvalidArgument,
          "reduced kernel spacing " + std::to_string(barJ.h) + " differs from profile spacing " +
              std::to_string(g.h()));
  require(barJ.half < g.n / 2, ErrorCode::InvalidArgument, "kernel support wider than the profile grid");
}

}  // namespace

InstantonProfile compute_instanton(const ReducedKernels& barJ, double beta, const Phase1DGrid& grid,
                                   const InstantonOptions& opt) {
  grid.validate();
  check_spacing(barJ, grid);
  require(opt.omega > 0.0 && opt.omega <= 1.0, ErrorCode::InvalidArgument, "damping must lie in (0, 1]");
  const double mb = equilibria(beta, 0.0).m_plus;
  const int n = grid.n, c = grid.center();
  std::vector<double> m(n);
  for (int i = 0; i < n; ++i) {
    const double r = grid.r(i);
    m[i] = opt.init == InstantonInit::Tanh ? mb * std::tanh(r) : mb * std::clamp(r / grid.h(), -1.0, 1.0);
  }
  InstantonProfile p;
  p.grid = grid;
  p.beta = beta;
  p.m_beta = mb;
  for (int it = 1; it <= opt.max_iter; ++it) {
    const auto conv = convolve_bar(barJ, m, -mb, mb);
    double res = 0.0;
    for (int i = 0; i < n; ++i) {
      const double t = std::tanh(beta * conv[i]);
      res = std::max(res, std::abs(t - m[i]));
      m[i] = (1.0 - opt.omega) * m[i] + opt.omega * t;
    }
    // Odd symmetrisation and far-field clamp.
    for (int i = 0; i < c; ++i) {
      const double v = std::clamp(0.5 * (m[n - 1 - i] - m[i]), -mb, mb);
      m[n - 1 - i] = v;
      m[i] = -v;
    }
    m[c] = 0.0;
    if (res < opt.tol) {
      p.values = m;
      p.residual = instanton_residual(barJ, m, beta, mb);
      p.iterations = it;
      if (p.residual < opt.tol) return p;
    }
  }
  throw Error(ErrorCode::NonConvergence,
              "instanton iteration did not reach " + std::to_string(opt.tol) + " in " + std::to_string(opt.max_iter) +
                  " sweeps");
}

InstantonProfile compute_instanton(const KernelSpec& J, double beta, const Phase1DGrid& grid,
                                   const InstantonOptions& opt) {
  return compute_instanton(reduce_kernels(J, grid.h()), beta, grid, opt);
}

std::vector<double> profile_derivative(const InstantonProfile& p) {
  const int n = p.grid.n;
  const double h = p.grid.h();
  std::vector<double> d(n);
  for (int i = 0; i < n; ++i) {
    const double lo = i > 0 ? p.values[i - 1] : -p.m_beta;
    const double hi = i + 1 < n ? p.values[i + 1] : p.m_beta;
    d[i] = (hi - lo) / (2.0 * h);
  }
  return d;
}

std::vector<double> apply_linearized(const std::vector<double>& f, const InstantonProfile& p,
                                     const ReducedKernels& barJ) {
  check_spacing(barJ, p.grid);
  require(f.size() == p.values.size(), ErrorCode::InvalidArgument, "field length differs from profile grid");
  auto out = convolve_bar(barJ, f);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double m = p.values[i];
    out[i] = -f[i] + p.beta * (1.0 - m * m) * out[i];
  }
  return out;
}

double l2mu_inner(const std::vector<double>& f, const std::vector<double>& g, const InstantonProfile& p) {
  require(f.size() == p.values.size() && g.size() == p.values.size(), ErrorCode::InvalidArgument,
          "field length differs from profile grid");
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double w = 1.0 - p.values[i] * p.values[i];
    require(w >= 1e-12, ErrorCode::WeightBlowup, "1 - m^2 below 1e-12 at node " + std::to_string(i));
    acc += f[i] * g[i] / w;
  }
  return acc * p.grid.h();
}

CorrectorResult solve_corrector(const std::vector<double>& rhat, const InstantonProfile& p,
                                const ReducedKernels& barJ, double tol) {
  check_spacing(barJ, p.grid);
  const int n = p.grid.n;
  require(static_cast<int>(rhat.size()) == n, ErrorCode::InvalidArgument, "rhs length differs from profile grid");
  const auto dm = profile_derivative(p);
  const double N = l2mu_inner(dm, dm, p);
  CorrectorResult res;
  res.parallel_component = l2mu_inner(rhat, dm, p) / N;
  std::vector<double> rperp(n);
  for (int i = 0; i < n; ++i) rperp[i] = rhat[i] - res.parallel_component * dm[i];

  // Same weights as convolve_bar so that A agrees with apply_linearized.
  const double w = barJ.h / barJ.bar_mass();
  const int half = barJ.half;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n + 1, n + 1);
  for (int i = 0; i < n; ++i) {
    const double m = p.values[i];
    const double c = p.beta * (1.0 - m * m) * w;
    for (int t = -half; t <= half; ++t) {
      const int j = i - t;
      if (j >= 0 && j < n) A(i, j) += c * barJ.bar[t + half];
    }
    A(i, i) -= 1.0;
    A(i, n) = dm[i];
    A(n, i) = dm[i] / (1.0 - m * m);
  }
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n + 1);
  for (int i = 0; i < n; ++i) b(i) = rperp[i];
  const Eigen::VectorXd x = A.partialPivLu().solve(b);
  res.m1.assign(x.data(), x.data() + n);

  // The discrete m' is a zero mode only up to O(h^2), so the border absorbs
  // a multiple of m'; the residual is measured after projecting it out.
  auto r = apply_linearized(res.m1, p, barJ);
  for (int i = 0; i < n; ++i) r[i] -= rperp[i];
  const double along = l2mu_inner(r, dm, p) / N;
  double scale = 1.0;
  for (int i = 0; i < n; ++i) {
    res.residual = std::max(res.residual, std::abs(r[i] - along * dm[i]));
    scale = std::max(scale, std::abs(rhat[i]));
  }
  require(res.residual <= tol * scale, ErrorCode::SolvabilityViolated,
          "corrector residual " + std::to_string(res.residual) + " above tolerance");
  return res;
}

Mobility compute_theta(const KernelSpec& J, const InstantonProfile& p) {
  const double h = p.grid.h();
  const auto red = reduce_kernels(J, h);
  const auto dm = profile_derivative(p);
  const int n = p.grid.n, half = red.half;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    double inner = 0.0;
    for (int t = -half; t <= half; ++t) {
      const int j = i + t;
      if (j >= 0 && j < n) inner += red.moment[t + half] * dm[j];
    }
    acc += dm[i] * inner;
  }
  Mobility mob;
  mob.N = l2mu_inner(dm, dm, p);
  mob.theta = p.beta * acc * h * h / (2.0 * mob.N);
  mob.h = h;
  mob.r_max = p.grid.r_max;
  return mob;
}

}  // namespace hmcf
