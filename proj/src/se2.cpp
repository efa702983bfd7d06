#include "hmcf/se2.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>

#include "hmcf/errors.hpp"
#include "hmcf/simd.hpp"
#include "padded.hpp"

namespace hmcf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
using cplx = std::complex<double>;

// (e^{i a} - 1) / (i a), with its series near 0 and the limit 1 at a = 0.
cplx phase_factor(double a) {
  if (a == 0.0) return 1.0;
  if (std::abs(a) <= kSe2BranchTol) {
    cplx term = 1.0, sum = 1.0;
    const cplx ia(0.0, a);
    for (int n = 1; n < 6; ++n) {
      term *= ia / double(n + 1);
      sum += term;
    }
    return sum;
  }
  return (std::exp(cplx(0.0, a)) - 1.0) / cplx(0.0, a);
}

}  // namespace

SE2Point SE2Point::make(double x1, double x2, double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return {x1, x2, t};
}

double wrap_angle(double d) {
  double w = std::fmod(d + std::numbers::pi, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  return w - std::numbers::pi;
}

double se2_distance(const SE2Point& a, const SE2Point& b) {
  const double dt = wrap_angle(a.theta - b.theta);
  return std::sqrt((a.x1 - b.x1) * (a.x1 - b.x1) + (a.x2 - b.x2) * (a.x2 - b.x2) + dt * dt);
}

SE2Frame se2_frame(const SE2Point& p) {
  const double c = std::cos(p.theta), s = std::sin(p.theta);
  return {{c, s, 0.0}, {0.0, 0.0, 1.0}, {s, -c, 0.0}};
}

SE2Point se2_compose(const SE2Point& g, const SE2Point& x) {
  const double c = std::cos(g.theta), s = std::sin(g.theta);
  return SE2Point::make(g.x1 + c * x.x1 - s * x.x2, g.x2 + s * x.x1 + c * x.x2, g.theta + x.theta);
}

SE2Point se2_exp(const SE2Point& x0, const AlgebraCoords& a) {
  // d/dt (x1 + i x2) = (a1 - i a3) e^{i theta(t)}, theta(t) = theta0 + a2 t.
  const cplx dz = cplx(a.a1, -a.a3) * std::exp(cplx(0.0, x0.theta)) * phase_factor(a.a2);
  return SE2Point::make(x0.x1 + dz.real(), x0.x2 + dz.imag(), x0.theta + a.a2);
}

AlgebraCoords se2_log(const SE2Point& x0, const SE2Point& y) {
  const double a2 = wrap_angle(y.theta - x0.theta);
  require(std::abs(a2) < std::numbers::pi * (1.0 - 1e-12), ErrorCode::OutsideChart,
          "angle difference " + std::to_string(a2) + " outside the canonical chart");
  const cplx w = cplx(y.x1 - x0.x1, y.x2 - x0.x2) * std::exp(cplx(0.0, -x0.theta)) / phase_factor(a2);
  return {w.real(), a2, -w.imag()};
}

SE2Point se2_local_dilate(const SE2Point& x0, double lambda, const SE2Point& y) {
  require(lambda >= 0.0, ErrorCode::InvalidArgument, "dilation factor must be non-negative");
  const auto a = se2_log(x0, y);
  return se2_exp(x0, {lambda * a.a1, lambda * a.a2, lambda * lambda * a.a3});
}

AlgebraCoords se2_flow_compose(const SE2Point& x0, const AlgebraCoords& a, const AlgebraCoords& b) {
  return se2_log(x0, se2_exp(se2_exp(x0, a), b));
}

ScalarField se2_field(double half1, double half2, int n1, int n2, int ntheta, double far) {
  UniformGrid3 g;
  g.origin = {-half1, -half2, 0.0};
  g.dims = {n1, n2, ntheta};
  g.spacing = {2.0 * half1 / (n1 - 1), 2.0 * half2 / (n2 - 1), kTwoPi / ntheta};
  g.validate();
  const auto ff = AxisBoundary::far_field(far, far);
  return ScalarField(g, {ff, ff, AxisBoundary::periodic()});
}

namespace {

void require_periodic_theta(const ScalarField& u) {
  require(u.boundary()[2].kind == BoundaryKind::Periodic, ErrorCode::InvalidArgument,
          "SE(2) fields need a periodic theta axis");
}

struct Se2Coeffs {
  std::vector<double> a11, a12, a22;
  double att;
};

Se2Coeffs se2_coeffs(const UniformGrid3& g, double scale) {
  const double h1 = g.spacing[0], h2 = g.spacing[1], ht = g.spacing[2];
  Se2Coeffs c;
  const int n3 = g.dims[2];
  c.a11.resize(n3);
  c.a12.resize(n3);
  c.a22.resize(n3);
  for (int k = 0; k < n3; ++k) {
    const double t = g.coord(2, k), cs = std::cos(t), sn = std::sin(t);
    c.a11[k] = scale * cs * cs / (h1 * h1);
    c.a12[k] = scale * 2.0 * sn * cs / (4.0 * h1 * h2);
    c.a22[k] = scale * sn * sn / (h2 * h2);
  }
  c.att = scale / (ht * ht);
  return c;
}

void se2_apply(const detail::Padded& in, const Se2Coeffs& c, const UniformGrid3& g, double* out_base,
               bool out_is_padded, detail::Padded* out_pad) {
  const auto& kern = simd::active_kernels();
  const int n1 = g.dims[0], n2 = g.dims[1], n3 = g.dims[2];
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j) {
      simd::Se2Line a{};
      a.n = n3;
      a.c = in.line(i, j);
      a.e = in.line(i + 1, j);
      a.w = in.line(i - 1, j);
      a.nn = in.line(i, j + 1);
      a.s = in.line(i, j - 1);
      a.ne = in.line(i + 1, j + 1);
      a.nw = in.line(i - 1, j + 1);
      a.se = in.line(i + 1, j - 1);
      a.sw = in.line(i - 1, j - 1);
      a.a11 = c.a11.data();
      a.a12 = c.a12.data();
      a.a22 = c.a22.data();
      a.att = c.att;
      a.out = out_is_padded ? out_pad->line(i, j) : out_base + g.index(i, j, 0);
      kern.se2_line(a);
    }
}

}  // namespace

ScalarField se2_sub_laplacian(const ScalarField& u) {
  require_periodic_theta(u);
  const auto pad = detail::make_padded(u, {1, 1, 1});
  ScalarField out = u.like();
  se2_apply(pad, se2_coeffs(u.grid(), 1.0), u.grid(), out.values().data(), false, nullptr);
  return out;
}

double se2_stable_dt(const UniformGrid3& g) {
  const double h1 = g.spacing[0], h2 = g.spacing[1], ht = g.spacing[2];
  const double hm = std::min(h1, h2);
  return 0.9 / (2.0 / (hm * hm) + 2.0 / (ht * ht) + 1.0 / (h1 * h2));
}

ScalarField se2_semigroup(const ScalarField& u, double tau, int substeps) {
  require_periodic_theta(u);
  require(tau > 0.0, ErrorCode::InvalidArgument, "diffusion time must be positive");
  const auto& g = u.grid();
  const double dt_max = se2_stable_dt(g);
  if (substeps > 0) {
    require(tau / substeps <= dt_max * (1.0 + 1e-12), ErrorCode::StabilityViolation,
            "SE(2) heat substep exceeds stability bound " + std::to_string(dt_max));
  } else {
    substeps = std::max(1, static_cast<int>(std::ceil(tau / dt_max - 1e-9)));
  }
  const double dt = tau / substeps;
  const auto coeffs = se2_coeffs(g, dt);
  auto a = detail::make_padded(u, {1, 1, 1});
  detail::Padded b(g.dims, {1, 1, 1});
  for (int s = 0; s < substeps; ++s) {
    se2_apply(a, coeffs, g, nullptr, true, &b);
    for (int i = 0; i < g.dims[0]; ++i)
      for (int j = 0; j < g.dims[1]; ++j) {
        double* o = b.line(i, j);
        const double* c = a.line(i, j);
        for (int k = 0; k < g.dims[2]; ++k) o[k] += c[k];
      }
    b.fill_ghosts(u.boundary());
    std::swap(a, b);
  }
  ScalarField out = u.like();
  a.store(out.values());
  return out;
}

AlgebraConvolution::AlgebraConvolution(const KernelSpec& J, int q) {
  require(J.kind == KernelKind::Analytic, ErrorCode::KindMismatch, "algebra convolution needs an analytic kernel");
  require(q >= 3, ErrorCode::InvalidArgument, "need at least 3 quadrature nodes per axis");
  const double s = J.scale();
  const double d12 = 2.0 * s / (q - 1), d3 = 2.0 * s * s / (q - 1);
  double total = 0.0;
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j)
      for (int k = 0; k < q; ++k) {
        const AlgebraCoords a{-s + i * d12, -s + j * d12, -s * s + k * d3};
        const double w = eval_kernel(J, {a.a1, a.a2, a.a3});
        if (w <= 0.0) continue;
        const cplx dz = cplx(a.a1, -a.a3) * phase_factor(a.a2);
        disp_.push_back({dz.real(), dz.imag(), a.a2, w});
        total += w;
      }
  for (auto& n : disp_) n.w /= total;
}

ScalarField AlgebraConvolution::apply(const ScalarField& m) const {
  require_periodic_theta(m);
  const auto& g = m.grid();
  const auto& b = m.boundary();
  const bool strict = b[0].kind != BoundaryKind::FarField || b[1].kind != BoundaryKind::FarField;
  const double lo1 = g.origin.x1, hi1 = g.upper(0), lo2 = g.origin.x2, hi2 = g.upper(1);
  ScalarField out = m.like();
  for (int i = 0; i < g.dims[0]; ++i)
    for (int j = 0; j < g.dims[1]; ++j)
      for (int k = 0; k < g.dims[2]; ++k) {
        const GroupPoint x = g.point(i, j, k);
        const double c = std::cos(x.x3), s = std::sin(x.x3);
        double acc = 0.0;
        for (const auto& n : disp_) {
          const GroupPoint y{x.x1 + c * n.dx - s * n.dy, x.x2 + s * n.dx + c * n.dy, x.x3 + n.dtheta};
          if (strict && (y.x1 < lo1 || y.x1 > hi1 || y.x2 < lo2 || y.x2 > hi2))
            throw Error(ErrorCode::InterpolationOutOfDomain, "exp target leaves the horizontal box");
          acc += n.w * m.sample(y);
        }
        out.at(i, j, k) = acc;
      }
  return out;
}

double Se2Shape::phi(const SE2Point& x) const {
  const double r = std::hypot(x.x1, x.x2);
  if (kind == Se2ShapeKind::Disc) return r - radius;
  const double tangent = std::atan2(x.x2, x.x1) + 0.5 * std::numbers::pi;
  const double dt = wrap_angle(x.theta - tangent);
  return std::hypot(r - radius, theta_weight * dt) - tube;
}

ScalarField se2_init_field(const Se2Shape& shape, double eps, const InstantonProfile& profile, double half1,
                           double half2, int n1, int n2, int ntheta) {
  ScalarField m = se2_field(half1, half2, n1, n2, ntheta, profile.m_beta);
  const auto& g = m.grid();
  require(eps >= 2.0 * std::max(g.spacing[0], g.spacing[1]) * (1.0 - 1e-12), ErrorCode::ResolutionTooCoarse,
          "eps too small for the horizontal spacing");
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j)
      for (int k = 0; k < ntheta; ++k) {
        const GroupPoint x = g.point(i, j, k);
        m.at(i, j, k) = profile(shape.phi({x.x1, x.x2, x.x3}) / eps);
      }
  return m;
}

Se2Diagnostics se2_diagnose(const ScalarField& m, double t) {
  const auto& g = m.grid();
  Se2Diagnostics d;
  d.t = t;
  d.min = m.min();
  d.max = m.max();
  std::size_t cols = 0, cells = 0;
  for (int i = 0; i < g.dims[0]; ++i)
    for (int j = 0; j < g.dims[1]; ++j) {
      bool any = false;
      for (int k = 0; k < g.dims[2]; ++k)
        if (m.at(i, j, k) < 0.0) {
          any = true;
          ++cells;
        }
      if (any) ++cols;
    }
  d.projected_area = double(cols) * g.spacing[0] * g.spacing[1];
  d.volume = double(cells) * g.spacing[0] * g.spacing[1] * g.spacing[2];
  return d;
}

namespace {

class Se2Smoother {
 public:
  explicit Se2Smoother(const EvolutionParams& p) : p_(p), scaled_(rescale_kernel(p.kernel, p.eps)) {
    p.validate();
    if (p.kernel.kind == KernelKind::Analytic) conv_.emplace(scaled_);
  }
  ScalarField smooth(const ScalarField& m) const {
    if (conv_) return conv_->apply(m);
    return se2_semigroup(m, scaled_.diffusion_time, scaled_.substeps);
  }
  ScalarField step(const ScalarField& m) const {
    ScalarField v = smooth(m);
    const double delta = p_.delta(), beta = p_.beta, a = p_.forcing;
    auto react = [&](double mv, double vv) { return (1.0 - delta) * mv + delta * std::tanh(beta * vv + a); };
    auto out = v.values();
    const auto in = m.values();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = react(in[i], out[i]);
    auto b = m.boundary();
    for (auto& ax : b)
      if (ax.kind == BoundaryKind::FarField) {
        ax.lo = react(ax.lo, ax.lo);
        ax.hi = react(ax.hi, ax.hi);
      }
    v.set_boundary(b);
    return v;
  }

 private:
  EvolutionParams p_;
  KernelSpec scaled_;
  std::optional<AlgebraConvolution> conv_;
};

}  // namespace

ScalarField se2_step(const ScalarField& m, const EvolutionParams& p) { return Se2Smoother(p).step(m); }

Se2Trajectory se2_evolve(const ScalarField& m0, const EvolutionParams& p, const std::vector<double>& snapshot_times) {
  require_periodic_theta(m0);
  const Se2Smoother smoother(p);
  const int K = p.total_steps();
  std::vector<int> snaps;
  for (double t : snapshot_times) {
    const int k = static_cast<int>(std::lround(t / p.dt));
    require(std::abs(t / p.dt - k) <= 1e-6 * std::max(1.0, t / p.dt) && k >= 0 && k <= K &&
                (snaps.empty() || k > snaps.back()),
            ErrorCode::InvalidArgument, "invalid snapshot time " + std::to_string(t));
    snaps.push_back(k);
  }
  Se2Trajectory tr;
  ScalarField m = m0;
  std::size_t next = 0;
  for (int k = 0;; ++k) {
    const double t = k * p.dt;
    tr.diagnostics.push_back(se2_diagnose(m, t));
    if (next < snaps.size() && snaps[next] == k) {
      tr.times.push_back(t);
      tr.snapshots.push_back(m);
      ++next;
    }
    if (k == K) break;
    m = smoother.step(m);
  }
  return tr;
}

}  // namespace hmcf
