#include "hmcf/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hmcf/errors.hpp"

namespace hmcf {

// ---------------------------------------------------------------------------
// Exact gauge-ball solution

double ball_extinction_time(double r, double theta) {
  require(r > 0.0 && theta > 0.0, ErrorCode::InvalidArgument, "radius and theta must be positive");
  return r * r / (std::sqrt(12.0) * theta);
}

double ball_intercept(double r, double theta, double t) {
  const double tt = theta * t;
  return std::sqrt(std::max(0.0, r * r * r * r - 12.0 * tt * tt)) / 4.0;
}

double ball_equator_radius(double r, double theta, double t) {
  const double tt = theta * t;
  const double rho2 = -6.0 * tt + std::sqrt(24.0 * tt * tt + r * r * r * r);
  return std::sqrt(std::max(0.0, rho2));
}

LevelCurve exact_ball_curve(double r, double theta, double t, int samples) {
  require(t >= 0.0, ErrorCode::InvalidArgument, "time must be non-negative");
  require(t < ball_extinction_time(r, theta), ErrorCode::Extinct,
          "t = " + std::to_string(t) + " is past the extinction time");
  require(samples >= 8, ErrorCode::InvalidArgument, "need at least 8 samples");
  const double tt = theta * t, r4 = r * r * r * r;
  const double rho_max = ball_equator_radius(r, theta, t);
  auto x3_of = [&](double rho) {
    const double u = rho * rho;
    return std::sqrt(std::max(0.0, (r4 - u * u - 12.0 * tt * u - 12.0 * tt * tt) / 16.0));
  };
  // rho = rho_max sin(phi) clusters nodes near the vertical tangents.
  LevelCurve c;
  c.plane = SlicePlane::X2Zero;
  for (int i = 0; i < 2 * samples; ++i) {
    const double phi = std::numbers::pi * i / samples;  // [0, 2 pi)
    const double x1 = rho_max * std::sin(phi);
    const double z = x3_of(std::abs(x1));
    c.points.push_back({x1, std::cos(phi) >= 0.0 ? z : -z});
  }
  return c;
}

// ---------------------------------------------------------------------------
// Level-set extraction

LevelCurve extract_zero_levelset(const ScalarField& field, SlicePlane plane) {
  const auto& g = field.grid();
  const int nu = g.dims[0];
  const int nv = plane == SlicePlane::X2Zero ? g.dims[2] : g.dims[1];
  const int vaxis = plane == SlicePlane::X2Zero ? 2 : 1;
  std::vector<double> val(std::size_t(nu) * nv);
  for (int i = 0; i < nu; ++i)
    for (int k = 0; k < nv; ++k) {
      GroupPoint x{g.coord(0, i), 0.0, 0.0};
      (vaxis == 2 ? x.x3 : x.x2) = g.coord(vaxis, k);
      val[std::size_t(i) * nv + k] = field.sample(x);
    }
  auto V = [&](int i, int k) { return val[std::size_t(i) * nv + k]; };
  auto pos = [&](int i, int k) { return std::array<double, 2>{g.coord(0, i), g.coord(vaxis, k)}; };

  LevelCurve c;
  c.plane = plane;
  auto edge = [&](int i0, int k0, int i1, int k1) {
    const double a = V(i0, k0), b = V(i1, k1);
    if (a * b < 0.0) {
      const double f = a / (a - b);
      const auto p = pos(i0, k0), q = pos(i1, k1);
      c.points.push_back({p[0] + f * (q[0] - p[0]), p[1] + f * (q[1] - p[1])});
    }
  };
  for (int i = 0; i < nu; ++i)
    for (int k = 0; k < nv; ++k) {
      if (V(i, k) == 0.0) c.points.push_back(pos(i, k));
      if (i + 1 < nu) edge(i, k, i + 1, k);
      if (k + 1 < nv) edge(i, k, i, k + 1);
    }
  require(!c.points.empty(), ErrorCode::NoZeroSet, "field has no sign change on the slice");
  double cu = 0.0, cv = 0.0;
  for (const auto& p : c.points) cu += p[0], cv += p[1];
  cu /= c.points.size();
  cv /= c.points.size();
  std::sort(c.points.begin(), c.points.end(), [&](const auto& p, const auto& q) {
    return std::atan2(p[1] - cv, p[0] - cu) < std::atan2(q[1] - cv, q[0] - cu);
  });
  c.points.erase(std::unique(c.points.begin(), c.points.end()), c.points.end());
  return c;
}

// ---------------------------------------------------------------------------
// Hausdorff distance between closed polygons

namespace {

using P2 = std::array<double, 2>;

double point_segment(const P2& p, const P2& a, const P2& b) {
  const double dx = b[0] - a[0], dy = b[1] - a[1];
  const double L2 = dx * dx + dy * dy;
  double t = L2 > 0.0 ? ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / L2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p[0] - a[0] - t * dx, p[1] - a[1] - t * dy);
}

// sup over polygon A of the distance to polygon B. Along one segment of A the
// distance to each segment of B is convex, so the supremum is reached at an
// endpoint or where the nearest segment of B switches; switches are located
// by sampling and bisection.
double directed_hausdorff(const std::vector<P2>& A, const std::vector<P2>& B) {
  const std::size_t na = A.size(), nb = B.size();
  auto segB = [&](std::size_t j, const P2& p) { return point_segment(p, B[j], B[(j + 1) % nb]); };
  if (nb == 1) {
    double worst = 0.0;
    for (const auto& p : A) worst = std::max(worst, std::hypot(p[0] - B[0][0], p[1] - B[0][1]));
    return worst;
  }
  double worst = 0.0;
  std::vector<std::size_t> cand;
  constexpr int kSamples = 48;
  for (std::size_t s = 0; s < na; ++s) {
    const P2 a = A[s], b = A[(s + 1) % na];
    const double len = std::hypot(b[0] - a[0], b[1] - a[1]);
    const P2 mid{0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])};
    std::vector<double> dm(nb);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < nb; ++j) best = std::min(best, dm[j] = segB(j, mid));
    cand.clear();
    for (std::size_t j = 0; j < nb; ++j)
      if (dm[j] <= best + len + 1e-15) cand.push_back(j);
    auto at = [&](double t) { return P2{a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])}; };
    auto nearest = [&](double t, std::size_t& arg) {
      const P2 p = at(t);
      double d = std::numeric_limits<double>::infinity();
      for (std::size_t j : cand) {
        const double v = segB(j, p);
        if (v < d) d = v, arg = j;
      }
      return d;
    };
    std::size_t prev_arg = 0;
    double prev_t = 0.0;
    worst = std::max(worst, nearest(0.0, prev_arg));
    const int ns = len > 0.0 ? kSamples : 1;
    for (int q = 1; q <= ns; ++q) {
      const double t = double(q) / ns;
      std::size_t arg = 0;
      const double d = nearest(t, arg);
      worst = std::max(worst, d);
      if (arg != prev_arg) {
        // Bisect on the sign of d_prev - d_arg.
        const P2 pa = B[prev_arg], pb = B[(prev_arg + 1) % nb], qa = B[arg], qb = B[(arg + 1) % nb];
        double lo = prev_t, hi = t;
        for (int it = 0; it < 60; ++it) {
          const double m = 0.5 * (lo + hi);
          const P2 p = at(m);
          if (point_segment(p, pa, pb) <= point_segment(p, qa, qb))
            lo = m;
          else
            hi = m;
        }
        std::size_t dummy = 0;
        worst = std::max(worst, nearest(0.5 * (lo + hi), dummy));
      }
      prev_arg = arg;
      prev_t = t;
    }
  }
  return worst;
}

}  // namespace

double hausdorff_distance(const LevelCurve& a, const LevelCurve& b) {
  require(!a.points.empty() && !b.points.empty(), ErrorCode::EmptyCurve, "Hausdorff distance of an empty curve");
  return std::max(directed_hausdorff(a.points, b.points), directed_hausdorff(b.points, a.points));
}

// ---------------------------------------------------------------------------
// Regression and calibration

RegressionFit linear_regression(const std::vector<double>& t, const std::vector<double>& v) {
  require(t.size() == v.size() && t.size() >= 2, ErrorCode::InvalidArgument, "regression needs >= 2 paired samples");
  const double n = static_cast<double>(t.size());
  double mt = 0.0, mv = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) mt += t[i], mv += v[i];
  mt /= n;
  mv /= n;
  double stt = 0.0, stv = 0.0, svv = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    stt += (t[i] - mt) * (t[i] - mt);
    stv += (t[i] - mt) * (v[i] - mv);
    svv += (v[i] - mv) * (v[i] - mv);
  }
  require(stt > 0.0, ErrorCode::InvalidArgument, "regression abscissae are all equal");
  RegressionFit f;
  f.slope = stv / stt;
  f.intercept = mv - f.slope * mt;
  double ssr = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double e = v[i] - (f.intercept + f.slope * t[i]);
    ssr += e * e;
  }
  f.r_squared = svv > 0.0 ? std::clamp(1.0 - ssr / svv, 0.0, 1.0) : 1.0;
  f.t = t;
  f.value = v;
  return f;
}

CylinderFit fit_cylinder_law(const std::vector<double>& times, const std::vector<double>& radius, double min_radius,
                             double skip_time) {
  require(times.size() == radius.size(), ErrorCode::InvalidArgument, "times and radii differ in length");
  std::vector<double> t, r2;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(radius[i] >= min_radius)) break;
    if (times[i] + 1e-12 < skip_time) continue;
    t.push_back(times[i]);
    r2.push_back(radius[i] * radius[i]);
  }
  require(t.size() >= 10, ErrorCode::ResolutionTooCoarse,
          "only " + std::to_string(t.size()) + " radius samples before r < " + std::to_string(min_radius));
  CylinderFit cf;
  cf.fit = linear_regression(t, r2);
  cf.theta = -0.5 * cf.fit.slope;
  cf.times = times;
  cf.radius = radius;
  return cf;
}

InstantonProfile engine_profile(const KernelSpec& J, double beta, double h) {
  const double r_max = J.kind == KernelKind::Heat ? 40.0 * std::max(1.0, std::sqrt(J.diffusion_time))
                                                  : std::max(20.0, 5.0 * J.support);
  return compute_instanton(J, beta, Phase1DGrid::with_spacing(r_max, h));
}

CylinderFit calibrate_theta_cylinder(const CylinderParams& cp, const InstantonProfile& profile) {
  const auto& p = cp.evolution;
  p.validate();
  require(cp.n3 >= 3, ErrorCode::InvalidArgument, "slab needs at least 3 nodes along x3");
  require(cp.sample_every >= 1, ErrorCode::InvalidArgument, "sample_every must be positive");
  UniformGrid3 g;
  const double h = 2.0 * cp.half_width / (cp.n - 1);
  g.dims = {cp.n, cp.n, cp.n3};
  g.spacing = {h, h, h};
  g.origin = {-cp.half_width, -cp.half_width, -h * (cp.n3 / 2)};
  const double mb = profile.m_beta;
  const auto far = AxisBoundary::far_field(mb, mb);
  ScalarField m = init_levelset_field(Shape::cylinder(cp.radius), p.eps, profile, g, {far, far, AxisBoundary::periodic()});
  const Stepper stepper(g, p);
  const double min_r = cp.window_radius_factor * p.eps;
  std::vector<double> times, radii;
  const int K = p.total_steps();
  for (int k = 0; k <= K; ++k) {
    if (k % cp.sample_every == 0) {
      const double r = axis_zero_crossing(m, 0, +1);
      times.push_back(k * p.dt);
      radii.push_back(r);
      if (!(r >= min_r)) break;
    }
    if (k < K) m = stepper.step(m);
  }
  return fit_cylinder_law(times, radii, min_r, cp.skip_time);
}

// ---------------------------------------------------------------------------
// Gauge-ball validation

BallReport validate_gauge_ball(const BallParams& bp, const InstantonProfile& profile, const SnapshotHook& hook) {
  const auto& p = bp.evolution;
  p.validate();
  require(bp.theta > 0.0, ErrorCode::InvalidArgument, "validate_gauge_ball needs a positive theta");
  BallReport rep;
  rep.t_star = ball_extinction_time(bp.radius, bp.theta);
  std::vector<int> steps;
  if (bp.snapshot_times.empty()) {
    const int K = static_cast<int>(std::floor(0.5 * rep.t_star / p.dt + 1e-9));
    for (int q = 0; q <= 8; ++q) steps.push_back(static_cast<int>(std::lround(q * K / 8.0)));
  } else {
    for (double t : bp.snapshot_times) steps.push_back(static_cast<int>(std::lround(t / p.dt)));
  }
  std::sort(steps.begin(), steps.end());
  steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
  require(steps.front() >= 0, ErrorCode::InvalidArgument, "snapshot times must be non-negative");

  const auto grid = UniformGrid3::centered(bp.half_width, bp.dims);
  ScalarField m = init_levelset_field(Shape::gauge_ball(bp.radius), p.eps, profile, grid);
  const Stepper stepper(grid, p);
  std::size_t next = 0;
  for (int k = 0; next < steps.size(); ++k) {
    if (steps[next] == k) {
      const double t = k * p.dt;
      if (hook) hook(t, m);
      rep.times.push_back(t);
      rep.curves.push_back(extract_zero_levelset(m, SlicePlane::X2Zero));
      rep.intercept.push_back(axis_zero_crossing(m, 2, +1));
      rep.radius.push_back(axis_zero_crossing(m, 0, +1));
      if (t < rep.t_star) {
        rep.exact.push_back(exact_ball_curve(bp.radius, bp.theta, t));
        rep.hausdorff.push_back(hausdorff_distance(rep.curves.back(), rep.exact.back()));
        rep.intercept_exact.push_back(ball_intercept(bp.radius, bp.theta, t));
        rep.radius_exact.push_back(ball_equator_radius(bp.radius, bp.theta, t));
      } else {
        rep.exact.push_back({});
        rep.hausdorff.push_back(std::numeric_limits<double>::quiet_NaN());
        rep.intercept_exact.push_back(0.0);
        rep.radius_exact.push_back(0.0);
      }
      if (t <= 0.5 * rep.t_star + 1e-12)
        rep.max_hausdorff_half_life = std::max(rep.max_hausdorff_half_life, rep.hausdorff.back());
      ++next;
      if (next == steps.size()) break;
    }
    m = stepper.step(m);
  }
  rep.intercepts_decreasing = true;
  for (std::size_t i = 1; i < rep.intercept.size(); ++i)
    if (!(rep.intercept[i] < rep.intercept[i - 1])) rep.intercepts_decreasing = false;
  return rep;
}

// ---------------------------------------------------------------------------
// Axis profiles

namespace {

AxisProfile axis_profile(const ScalarField& f, int axis) {
  const auto& g = f.grid();
  AxisProfile p;
  p.crossing = axis_zero_crossing(f, axis, +1);
  std::vector<double> x, v;
  for (int i = 0; i < g.dims[axis]; ++i) {
    const double c = g.coord(axis, i);
    if (c < 0.0) continue;
    GroupPoint q{};
    (axis == 0 ? q.x1 : q.x3) = c;
    x.push_back(c);
    v.push_back(f.sample(q));
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    p.s.push_back(std::isfinite(p.crossing) ? x[i] - p.crossing : x[i]);
    p.value.push_back(v[i]);
    if (i > 0) p.max_slope = std::max(p.max_slope, std::abs(v[i] - v[i - 1]) / (x[i] - x[i - 1]));
  }
  return p;
}

}  // namespace

Profiles extract_profiles(const ScalarField& field, double t) {
  Profiles pr;
  pr.t = t;
  pr.x1 = axis_profile(field, 0);
  pr.x3 = axis_profile(field, 2);
  return pr;
}

}  // namespace hmcf
