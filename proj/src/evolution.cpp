#include "hmcf/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "hmcf/errors.hpp"

namespace hmcf {

int EvolutionParams::total_steps() const { return static_cast<int>(std::lround(t_end / dt)); }

void EvolutionParams::validate() const {
  require(beta > 1.0, ErrorCode::InvalidArgument, "beta must exceed 1");
  require(eps > 0.0 && std::isfinite(eps), ErrorCode::InvalidArgument, "eps must be positive");
  require(dt > 0.0 && std::isfinite(dt), ErrorCode::InvalidArgument, "dt must be positive");
  require(lambda() < 1.0, ErrorCode::InvalidArgument,
          "dt / eps^2 = " + std::to_string(lambda()) + " must be below 1");
  require(t_end >= 0.0 && std::isfinite(t_end), ErrorCode::InvalidArgument, "t_end must be non-negative");
  require(std::isfinite(forcing), ErrorCode::InvalidArgument, "forcing must be finite");
  kernel.validate();
}

double Shape::phi(const GroupPoint& x) const {
  switch (kind) {
    case ShapeKind::GaugeBall:
      return gauge_norm(x) - radius;
    case ShapeKind::Cylinder:
      return std::hypot(x.x1, x.x2) - radius;
    case ShapeKind::Halfspace: {
      const double nn = std::sqrt(normal.x1 * normal.x1 + normal.x2 * normal.x2 + normal.x3 * normal.x3);
      return (normal.x1 * x.x1 + normal.x2 * x.x2 + normal.x3 * x.x3) / nn - offset;
    }
  }
  return 0.0;
}

namespace {

std::array<AxisBoundary, 3> default_boundary(const Shape& s, double mb) {
  const auto outside = AxisBoundary::far_field(mb, mb);
  switch (s.kind) {
    case ShapeKind::GaugeBall:
      return {outside, outside, outside};
    case ShapeKind::Cylinder:
      return {outside, outside, AxisBoundary::replicate()};
    case ShapeKind::Halfspace: {
      std::array<AxisBoundary, 3> b{AxisBoundary::replicate(), AxisBoundary::replicate(), AxisBoundary::replicate()};
      const double n[3] = {s.normal.x1, s.normal.x2, s.normal.x3};
      int nonzero = 0, axis = 0;
      for (int a = 0; a < 3; ++a)
        if (n[a] != 0.0) ++nonzero, axis = a;
      if (nonzero == 1) b[axis] = n[axis] > 0 ? AxisBoundary::far_field(-mb, mb) : AxisBoundary::far_field(mb, -mb);
      return b;
    }
  }
  return {outside, outside, outside};
}

}  // namespace

ScalarField init_levelset_field(const Shape& shape, double eps, const InstantonProfile& profile,
                                const UniformGrid3& grid) {
  return init_levelset_field(shape, eps, profile, grid, default_boundary(shape, profile.m_beta));
}

ScalarField init_levelset_field(const Shape& shape, double eps, const InstantonProfile& profile,
                                const UniformGrid3& grid, const std::array<AxisBoundary, 3>& boundary) {
  require(eps > 0.0, ErrorCode::InvalidArgument, "eps must be positive");
  const double hmax = std::max(grid.spacing[0], grid.spacing[1]);
  require(eps >= 2.0 * hmax * (1.0 - 1e-12), ErrorCode::ResolutionTooCoarse,
          "eps = " + std::to_string(eps) + " needs horizontal spacing <= " + std::to_string(eps / 2.0));
  ScalarField m(grid, boundary);
  for (int i = 0; i < grid.dims[0]; ++i)
    for (int j = 0; j < grid.dims[1]; ++j)
      for (int k = 0; k < grid.dims[2]; ++k) m.at(i, j, k) = profile(shape.phi(grid.point(i, j, k)) / eps);
  return m;
}

double axis_zero_crossing(const ScalarField& m, int axis, int dir) {
  const auto& g = m.grid();
  auto sample = [&](double s) {
    GroupPoint x{};
    (axis == 0 ? x.x1 : axis == 1 ? x.x2 : x.x3) = s;
    return m.sample(x);
  };
  // Node positions along the axis beyond the origin, in scan order.
  const double start = g.locate(axis, 0.0);
  double prev_pos = 0.0, prev_val = sample(0.0);
  if (prev_val == 0.0) return 0.0;
  const int n = g.dims[axis];
  int idx = dir > 0 ? static_cast<int>(std::floor(start)) + 1 : static_cast<int>(std::ceil(start)) - 1;
  for (; idx >= 0 && idx < n; idx += dir) {
    const double pos = g.coord(axis, idx);
    if (dir * pos <= 0.0) continue;
    const double val = sample(pos);
    if ((prev_val < 0.0) != (val < 0.0) || val == 0.0) {
      const double f = prev_val / (prev_val - val);
      return std::abs(prev_pos + f * (pos - prev_pos));
    }
    prev_pos = pos;
    prev_val = val;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

StepDiagnostics diagnose(const ScalarField& m, double t) {
  StepDiagnostics d;
  d.t = t;
  d.min = m.min();
  d.max = m.max();
  d.radius_x1 = axis_zero_crossing(m, 0, +1);
  d.x3_top = axis_zero_crossing(m, 2, +1);
  d.x3_bottom = axis_zero_crossing(m, 2, -1);
  return d;
}

struct Stepper::Impl {
  EvolutionParams p;
  UniformGrid3 grid;
  KernelSpec scaled;
  std::optional<ConvolutionPlan> plan;
  int substeps = 0;
};

Stepper::Stepper(const UniformGrid3& grid, const EvolutionParams& p) : impl_(std::make_unique<Impl>()) {
  p.validate();
  impl_->p = p;
  impl_->grid = grid;
  impl_->scaled = rescale_kernel(p.kernel, p.eps);
  if (p.kernel.kind == KernelKind::Analytic)
    impl_->plan.emplace(grid, impl_->scaled);
  else
    impl_->substeps =
        hmcf::heat_substeps(grid, impl_->scaled.diffusion_time, impl_->scaled.substeps, impl_->scaled.stencil);
}

Stepper::~Stepper() = default;
Stepper::Stepper(Stepper&&) noexcept = default;
Stepper& Stepper::operator=(Stepper&&) noexcept = default;

const EvolutionParams& Stepper::params() const { return impl_->p; }
int Stepper::heat_substeps() const { return impl_->substeps; }

ScalarField Stepper::smooth(const ScalarField& m) const {
  if (impl_->plan) return impl_->plan->apply(m);
  return heat_semigroup(m, impl_->scaled.diffusion_time, impl_->substeps, impl_->scaled.stencil);
}

ScalarField Stepper::step(const ScalarField& m) const {
  const auto& p = impl_->p;
  ScalarField v = smooth(m);
  const double delta = p.delta(), beta = p.beta, a = p.forcing;
  auto react = [&](double mv, double vv) { return (1.0 - delta) * mv + delta * std::tanh(beta * vv + a); };
  auto out = v.values();
  const auto in = m.values();
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = react(in[i], out[i]);
  // A constant far field is reproduced by the smoothing, so it follows the
  // scalar map.
  auto b = m.boundary();
  for (auto& ax : b)
    if (ax.kind == BoundaryKind::FarField) {
      ax.lo = react(ax.lo, ax.lo);
      ax.hi = react(ax.hi, ax.hi);
    }
  v.set_boundary(b);
  return v;
}

ScalarField step(const ScalarField& m, const EvolutionParams& p) { return Stepper(m.grid(), p).step(m); }

namespace {

std::vector<int> snapshot_steps(const EvolutionParams& p, const std::vector<double>& times) {
  std::vector<int> steps;
  const int K = p.total_steps();
  for (double t : times) {
    const double q = t / p.dt;
    const int k = static_cast<int>(std::lround(q));
    require(std::abs(q - k) <= 1e-6 * std::max(1.0, q), ErrorCode::InvalidArgument,
            "snapshot time " + std::to_string(t) + " is not a multiple of dt");
    require(k >= 0 && k <= K, ErrorCode::InvalidArgument, "snapshot time " + std::to_string(t) + " outside [0, t_end]");
    require(steps.empty() || k > steps.back(), ErrorCode::InvalidArgument, "snapshot times must strictly increase");
    steps.push_back(k);
  }
  return steps;
}

}  // namespace

Trajectory evolve(const ScalarField& m0, const EvolutionParams& p, const std::vector<double>& snapshot_times,
                  const StepObserver& observer) {
  p.validate();
  const auto snaps = snapshot_steps(p, snapshot_times);
  const Stepper stepper(m0.grid(), p);
  Trajectory tr;
  ScalarField m = m0;
  std::size_t next = 0;
  const int K = p.total_steps();
  for (int k = 0;; ++k) {
    const double t = k * p.dt;
    tr.diagnostics.push_back(diagnose(m, t));
    if (observer) observer(k, t, m);
    if (next < snaps.size() && snaps[next] == k) {
      tr.times.push_back(t);
      tr.snapshots.push_back(m);
      ++next;
    }
    if (k == K) break;
    m = stepper.step(m);
  }
  return tr;
}

BracketResult forcing_bracket(const ScalarField& m0, const EvolutionParams& p, double delta_force,
                              const std::vector<double>& snapshot_times) {
  p.validate();
  require(delta_force >= 0.0, ErrorCode::InvalidArgument, "delta_force must be non-negative");
  const double shift = p.beta * delta_force * p.eps;
  EvolutionParams lo = p, hi = p;
  lo.forcing = p.forcing - shift;
  hi.forcing = p.forcing + shift;
  for (double a : {lo.forcing, hi.forcing}) equilibria_triple(p.beta, a / p.beta);

  const auto snaps = snapshot_steps(p, snapshot_times);
  const Stepper s_lo(m0.grid(), lo), s_c(m0.grid(), p), s_hi(m0.grid(), hi);
  BracketResult res;
  res.min_gap = std::numeric_limits<double>::infinity();
  ScalarField a = m0, c = m0, b = m0;
  std::size_t next = 0;
  const int K = p.total_steps();
  for (int k = 0;; ++k) {
    const double t = k * p.dt;
    const auto va = a.values(), vc = c.values(), vb = b.values();
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < vc.size(); ++i) gap = std::min({gap, vc[i] - va[i], vb[i] - vc[i]});
    res.min_gap = std::min(res.min_gap, gap);
    require(gap >= -1e-12, ErrorCode::BracketViolated,
            "forced trajectories cross the unforced one at t = " + std::to_string(t) + " (gap " + std::to_string(gap) +
                ")");
    res.lower.diagnostics.push_back(diagnose(a, t));
    res.center.diagnostics.push_back(diagnose(c, t));
    res.upper.diagnostics.push_back(diagnose(b, t));
    if (next < snaps.size() && snaps[next] == k) {
      for (auto* tr : {&res.lower, &res.center, &res.upper}) tr->times.push_back(t);
      res.lower.snapshots.push_back(a);
      res.center.snapshots.push_back(c);
      res.upper.snapshots.push_back(b);
      ++next;
    }
    if (k == K) break;
    a = s_lo.step(a);
    c = s_c.step(c);
    b = s_hi.step(b);
  }
  return res;
}

}  // namespace hmcf
