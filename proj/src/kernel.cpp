#include "hmcf/kernel.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "hmcf/errors.hpp"
#include "hmcf/simd.hpp"
#include "padded.hpp"

namespace hmcf {

namespace {

using boost::math::quadrature::gauss;
using boost::math::quadrature::gauss_kronrod;

// int_0^1 q exp(-1/(1-q)) dq = E2(1) - E3(1) after u = 1/(1-q).
double bump_first_moment() {
  static const double v = boost::math::expint(2, 1.0) - boost::math::expint(3, 1.0);
  return v;
}

// int_a^1 exp(-1/(1-q)) dq = E2(A)/A with A = 1/(1-a).
double bump_tail(double a) {
  if (a >= 1.0) return 0.0;
  const double A = 1.0 / (1.0 - a);
  if (A > 700.0) return 0.0;
  return boost::math::expint(2, A) / A;
}

double bump_profile(double q) { return q < 1.0 ? std::exp(-1.0 / (1.0 - q)) : 0.0; }

void require_analytic(const KernelSpec& J, const char* what) {
  require(J.kind == KernelKind::Analytic, ErrorCode::KindMismatch, std::string(what) + " needs an analytic kernel");
}

}  // namespace

void KernelSpec::validate() const {
  if (kind == KernelKind::Analytic) {
    require(support > 0.0 && std::isfinite(support), ErrorCode::InvalidArgument, "kernel support must be positive");
  } else {
    require(diffusion_time > 0.0 && std::isfinite(diffusion_time), ErrorCode::InvalidArgument,
            "heat kernel diffusion time must be positive");
    require(substeps >= 0, ErrorCode::InvalidArgument, "substeps must be non-negative");
  }
}

double bump_constant(double s) {
  return 1.0 / (2.0 * std::numbers::pi * s * s * s * s * bump_first_moment());
}

double eval_kernel(const KernelSpec& J, const GroupPoint& x) {
  require_analytic(J, "eval_kernel");
  const double s = J.scale();
  const double q = (x.x1 * x.x1 + x.x2 * x.x2 + std::abs(x.x3)) / (s * s);
  return q < 1.0 ? bump_constant(s) * bump_profile(q) : 0.0;
}

KernelSpec rescale_kernel(const KernelSpec& J, double eps) {
  require(eps > 0.0 && std::isfinite(eps), ErrorCode::InvalidArgument, "eps must be positive");
  KernelSpec out = J;
  if (J.kind == KernelKind::Analytic)
    out.support = J.support * eps;
  else
    out.diffusion_time = J.diffusion_time * eps * eps;
  return out;
}

double hat_kernel(const KernelSpec& J, double rho2) {
  if (J.kind == KernelKind::Heat) {
    const double tau = J.diffusion_time;
    return std::exp(-rho2 / (4.0 * tau)) / (4.0 * std::numbers::pi * tau);
  }
  const double s = J.scale();
  return 2.0 * bump_constant(s) * s * s * bump_tail(rho2 / (s * s));
}

double bar_kernel(const KernelSpec& J, double r) {
  if (J.kind == KernelKind::Heat) {
    const double tau = J.diffusion_time;
    return std::exp(-r * r / (4.0 * tau)) / std::sqrt(4.0 * std::numbers::pi * tau);
  }
  const double s = J.scale();
  if (std::abs(r) >= s) return 0.0;
  const double L = std::sqrt(s * s - r * r);
  auto f = [&](double x) { return hat_kernel(J, r * r + x * x); };
  return 2.0 * gauss_kronrod<double, 31>::integrate(f, 0.0, L, 12, 1e-14);
}

double moment_kernel(const KernelSpec& J, double r) {
  if (J.kind == KernelKind::Heat) return 2.0 * J.diffusion_time * bar_kernel(J, r);
  const double s = J.scale();
  if (std::abs(r) >= s) return 0.0;
  const double L = std::sqrt(s * s - r * r);
  auto f = [&](double x) { return hat_kernel(J, r * r + x * x) * x * x; };
  return 2.0 * gauss_kronrod<double, 31>::integrate(f, 0.0, L, 12, 1e-14);
}

double reduced_half_width(const KernelSpec& J) {
  if (J.kind == KernelKind::Heat) return std::sqrt(160.0 * J.diffusion_time);
  return J.scale();
}

double ReducedKernels::bar_mass() const {
  double acc = 0.0;
  for (double v : bar) acc += v;
  return acc * h;
}

double ReducedKernels::hat_mass() const {
  double acc = 0.0;
  for (double v : hat) acc += v;
  return acc * h * h;
}

ReducedKernels reduce_kernels(const KernelSpec& J, double h) {
  J.validate();
  const double hw = reduced_half_width(J);
  if (h <= 0.0) h = 2.0 * hw / 64.0;
  ReducedKernels out;
  out.kernel = J;
  out.h = h;
  out.half = static_cast<int>(std::ceil(hw / h));
  const int n = out.size();
  out.bar.resize(n);
  out.moment.resize(n);
  for (int i = 0; i < n; ++i) {
    const double r = out.r(i);
    if (i > out.half) {
      out.bar[i] = out.bar[2 * out.half - i];
      out.moment[i] = out.moment[2 * out.half - i];
      continue;
    }
    out.bar[i] = bar_kernel(J, r);
    out.moment[i] = moment_kernel(J, r);
  }
  out.hat.resize(std::size_t(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.hat[std::size_t(i) * n + j] = hat_kernel(J, out.r(i) * out.r(i) + out.r(j) * out.r(j));
  return out;
}

// ---------------------------------------------------------------------------
// Group convolution

struct ConvolutionPlan::Impl {
  struct Offset {
    int di, dj;
    double z1, z2;
    double half;   // T + h3: |u| beyond this gives zero weight
    double u0;     // first table abscissa
    std::vector<double> table;  // G(u0 + q du)
  };
  UniformGrid3 grid;
  double du = 0.0;
  double raw_mass = 0.0;
  double scale = 1.0;  // h1 h2 / raw_mass
  std::vector<Offset> offsets;
  std::array<int, 3> pad{};

  double G(const Offset& o, double u) const {
    if (std::abs(u) >= o.half) return 0.0;
    const double p = (u - o.u0) / du;
    const int q = std::clamp(static_cast<int>(p), 0, static_cast<int>(o.table.size()) - 2);
    const double f = p - q;
    return (1.0 - f) * o.table[q] + f * o.table[q + 1];
  }
};

ConvolutionPlan::ConvolutionPlan(const UniformGrid3& grid, const KernelSpec& J, int phase_samples)
    : impl_(std::make_unique<Impl>()) {
  require_analytic(J, "group convolution");
  J.validate();
  grid.validate();
  Impl& p = *impl_;
  p.grid = grid;
  const double h1 = grid.spacing[0], h2 = grid.spacing[1], h3 = grid.spacing[2];
  const double s = J.scale();
  require(s >= 3.0 * h1 && s >= 3.0 * h2, ErrorCode::SupportUnresolved,
          "kernel support radius " + std::to_string(s) + " spans fewer than 3 cells (h1=" + std::to_string(h1) +
              ", h2=" + std::to_string(h2) + ")");
  const double C = bump_constant(s);
  p.du = h3 / phase_samples;

  const int r1 = static_cast<int>(std::ceil(s / h1)), r2 = static_cast<int>(std::ceil(s / h2));
  double xmax = std::max(std::abs(grid.origin.x1), std::abs(grid.upper(0)));
  double ymax = std::max(std::abs(grid.origin.x2), std::abs(grid.upper(1)));
  int vpad = 1;
  for (int di = -r1; di <= r1; ++di) {
    for (int dj = -r2; dj <= r2; ++dj) {
      const double z1 = di * h1, z2 = dj * h2;
      const double rho2 = z1 * z1 + z2 * z2;
      const double T = s * s - rho2;
      if (T <= 0.0) continue;
      Impl::Offset o{di, dj, z1, z2, T + h3, -(T + h3), {}};
      const int nq = static_cast<int>(std::ceil(2.0 * o.half / p.du)) + 2;
      o.table.resize(nq);
      auto g = [&](double t) { return C * bump_profile((rho2 + std::abs(t)) / (s * s)); };
      for (int q = 0; q < nq; ++q) {
        const double u = o.u0 + q * p.du;
        // G(u) = int g(t) hat((u - t) / h3) dt over pieces split at kinks.
        double cuts[4] = {std::max(u - h3, -T), std::min(u + h3, T), u, 0.0};
        double lo = cuts[0], hi = cuts[1];
        if (hi <= lo) {
          o.table[q] = 0.0;
          continue;
        }
        double pts[4] = {lo, hi, std::clamp(cuts[2], lo, hi), std::clamp(cuts[3], lo, hi)};
        std::sort(pts, pts + 4);
        double acc = 0.0;
        for (int seg = 0; seg < 3; ++seg) {
          if (pts[seg + 1] <= pts[seg]) continue;
          acc += gauss<double, 20>::integrate(
              [&](double t) { return g(t) * (1.0 - std::abs(u - t) / h3); }, pts[seg], pts[seg + 1]);
        }
        o.table[q] = acc;
      }
      p.raw_mass += h1 * h2 * hat_kernel(J, rho2);
      const double sig = 0.5 * (std::abs(z1) * ymax + std::abs(z2) * xmax);
      vpad = std::max(vpad, static_cast<int>(std::ceil((sig + o.half) / h3)) + 2);
      p.offsets.push_back(std::move(o));
    }
  }
  p.scale = h1 * h2 / p.raw_mass;
  p.pad = {r1, r2, vpad};
}

ConvolutionPlan::~ConvolutionPlan() = default;
ConvolutionPlan::ConvolutionPlan(ConvolutionPlan&&) noexcept = default;
ConvolutionPlan& ConvolutionPlan::operator=(ConvolutionPlan&&) noexcept = default;

int ConvolutionPlan::horizontal_offsets() const { return static_cast<int>(impl_->offsets.size()); }
double ConvolutionPlan::raw_mass() const { return impl_->raw_mass; }

ScalarField ConvolutionPlan::apply(const ScalarField& m) const {
  const Impl& p = *impl_;
  const auto& g = m.grid();
  require(g.dims == p.grid.dims && g.spacing == p.grid.spacing && g.origin == p.grid.origin,
          ErrorCode::InvalidArgument, "field grid differs from the convolution plan grid");
  const auto in = detail::make_padded(m, p.pad);
  ScalarField out = m.like();
  const auto& kern = simd::active_kernels();
  const int n1 = g.dims[0], n2 = g.dims[1], n3 = g.dims[2];
  const double h3 = g.spacing[2];
  double* dst = out.values().data();
#pragma omp parallel
  {
    std::vector<double> w;
    std::vector<double> acc(n3);
#pragma omp for schedule(static)
    for (int i = 0; i < n1; ++i) {
      const double x1 = g.coord(0, i);
      for (int j = 0; j < n2; ++j) {
        const double x2 = g.coord(1, j);
        std::fill(acc.begin(), acc.end(), 0.0);
        for (const auto& o : p.offsets) {
          const double sigma = 0.5 * (o.z1 * x2 - o.z2 * x1);
          const int dlo = static_cast<int>(std::floor((sigma - o.half) / h3)) + 1;
          const int dhi = static_cast<int>(std::ceil((sigma + o.half) / h3)) - 1;
          const int nt = dhi - dlo + 1;
          if (nt <= 0) continue;
          w.resize(nt);
          for (int t = 0; t < nt; ++t) w[t] = p.scale * p.G(o, sigma - (dlo + t) * h3);
          kern.fir_accumulate(n3, in.line(i - o.di, j - o.dj) + dlo, w.data(), nt, acc.data());
        }
        std::copy(acc.begin(), acc.end(), dst + g.index(i, j, 0));
      }
    }
  }
  return out;
}

ScalarField group_convolve(const ScalarField& m, const KernelSpec& J, double eps) {
  const ConvolutionPlan plan(m.grid(), rescale_kernel(J, eps));
  return plan.apply(m);
}

// ---------------------------------------------------------------------------
// Heat semigroup

double heat_stable_dt(const UniformGrid3& g, HeatStencil stencil) {
  const double h1 = g.spacing[0], h2 = g.spacing[1], h3 = g.spacing[2];
  double diag = 2.0 / (h1 * h1) + 2.0 / (h2 * h2);
  if (stencil == HeatStencil::Centered) {
    const double xmax = std::max(std::abs(g.origin.x1), std::abs(g.upper(0)));
    const double ymax = std::max(std::abs(g.origin.x2), std::abs(g.upper(1)));
    diag += (xmax * xmax + ymax * ymax) / (2.0 * h3 * h3);
    diag += 0.5 * (xmax / (h2 * h3) + ymax / (h1 * h3));
  }
  return 0.9 / diag;
}

int heat_substeps(const UniformGrid3& g, double tau, int requested, HeatStencil stencil) {
  require(tau > 0.0, ErrorCode::InvalidArgument, "diffusion time must be positive");
  const double dt_max = heat_stable_dt(g, stencil);
  if (requested > 0) {
    const double dt = tau / requested;
    require(dt <= dt_max * (1.0 + 1e-12), ErrorCode::StabilityViolation,
            "heat substep " + std::to_string(dt) + " exceeds stability bound " + std::to_string(dt_max));
    return requested;
  }
  return std::max(1, static_cast<int>(std::ceil(tau / dt_max - 1e-9)));
}

namespace {

struct Shift {
  int base;
  double frac;
};

Shift split_shift(double s) {
  const double f = std::floor(s);
  return {static_cast<int>(f), s - f};
}

void directional_substep(const detail::Padded& in, detail::Padded& out, const UniformGrid3& g, double dt,
                         const std::vector<Shift>& sx1, const std::vector<Shift>& sx2) {
  const auto& kern = simd::active_kernels();
  const int n1 = g.dims[0], n2 = g.dims[1], n3 = g.dims[2];
  const double a1 = dt / (g.spacing[0] * g.spacing[0]), a2 = dt / (g.spacing[1] * g.spacing[1]);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n2; ++j) {
      // X1 neighbours depend on the row j, X2 neighbours on the column i.
      const Shift fe = sx1[j];
      const Shift fw = split_shift(-(fe.base + fe.frac));
      const Shift fn = sx2[i];
      const Shift fs = split_shift(-(fn.base + fn.frac));
      simd::DirectionalLine a{};
      a.n = n3;
      a.c = in.line(i, j);
      a.e = in.line(i + 1, j) + fe.base;
      a.w = in.line(i - 1, j) + fw.base;
      a.nn = in.line(i, j + 1) + fn.base;
      a.s = in.line(i, j - 1) + fs.base;
      a.fe = fe.frac;
      a.fw = fw.frac;
      a.fn = fn.frac;
      a.fs = fs.frac;
      a.a1 = a1;
      a.a2 = a2;
      a.out = out.line(i, j);
      kern.directional_line(a);
    }
  }
}

void centered_substep(const detail::Padded& in, detail::Padded& out, const UniformGrid3& g, double dt) {
  const auto& kern = simd::active_kernels();
  const int n1 = g.dims[0], n2 = g.dims[1], n3 = g.dims[2];
  const double h1 = g.spacing[0], h2 = g.spacing[1], h3 = g.spacing[2];
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n1; ++i) {
    const double x1 = g.coord(0, i);
    for (int j = 0; j < n2; ++j) {
      const double x2 = g.coord(1, j);
      simd::CenteredLine a{};
      a.n = n3;
      a.c = in.line(i, j);
      a.e = in.line(i + 1, j);
      a.w = in.line(i - 1, j);
      a.nn = in.line(i, j + 1);
      a.s = in.line(i, j - 1);
      a.c11 = dt / (h1 * h1);
      a.c22 = dt / (h2 * h2);
      a.c33 = dt * 0.25 * (x1 * x1 + x2 * x2) / (h3 * h3);
      a.c23 = dt * x1 / (4.0 * h2 * h3);
      a.c13 = -dt * x2 / (4.0 * h1 * h3);
      double* o = out.line(i, j);
      a.out = o;
      kern.centered_line(a);
      const double* c = a.c;
      for (int k = 0; k < n3; ++k) o[k] += c[k];
    }
  }
}

}  // namespace

ScalarField heat_semigroup(const ScalarField& m, double tau, int substeps, HeatStencil stencil) {
  const auto& g = m.grid();
  const int ns = heat_substeps(g, tau, substeps, stencil);
  const double dt = tau / ns;
  const double h1 = g.spacing[0], h2 = g.spacing[1], h3 = g.spacing[2];

  std::vector<Shift> sx1(g.dims[1]), sx2(g.dims[0]);
  int vpad = 1;
  if (stencil == HeatStencil::Directional) {
    // x + h1 X1 sits at x3 - h1 x2 / 2; x + h2 X2 at x3 + h2 x1 / 2.
    for (int j = 0; j < g.dims[1]; ++j) {
      sx1[j] = split_shift(-h1 * g.coord(1, j) / (2.0 * h3));
      vpad = std::max(vpad, std::abs(sx1[j].base) + 2);
    }
    for (int i = 0; i < g.dims[0]; ++i) {
      sx2[i] = split_shift(h2 * g.coord(0, i) / (2.0 * h3));
      vpad = std::max(vpad, std::abs(sx2[i].base) + 2);
    }
  }
  auto a = detail::make_padded(m, {1, 1, vpad});
  detail::Padded b(g.dims, {1, 1, vpad});
  for (int step = 0; step < ns; ++step) {
    if (stencil == HeatStencil::Directional)
      directional_substep(a, b, g, dt, sx1, sx2);
    else
      centered_substep(a, b, g, dt);
    b.fill_ghosts(m.boundary());
    std::swap(a, b);
  }
  ScalarField out = m.like();
  a.store(out.values());
  return out;
}

}  // namespace hmcf
