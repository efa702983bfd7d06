// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
// Usage: acceptance [criterion numbers...]; no arguments runs all ten.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hmcf/errors.hpp"
#include "hmcf/evolution.hpp"
#include "hmcf/group.hpp"
#include "hmcf/operators.hpp"
#include "hmcf/profile.hpp"
#include "hmcf/se2.hpp"
#include "hmcf/validation.hpp"

using namespace hmcf;

namespace {

constexpr double kBeta = 1.2;
constexpr double kEps = 0.1;
constexpr double kDt = 0.0075;  // dt / eps^2 = 0.75
constexpr double kReferenceTheta = 0.56561;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

class Detail {
 public:
  template <class T>
  Detail& operator()(const std::string& key, const T& v) {
    if (!s_.str().empty()) s_ << ", ";
    s_ << key << "=" << v;
    return *this;
  }
  std::string str() const { return s_.str(); }

 private:
  std::ostringstream s_;
};

EvolutionParams default_params(KernelSpec kernel = KernelSpec::heat(1.0)) {
  EvolutionParams p;
  p.beta = kBeta;
  p.eps = kEps;
  p.dt = kDt;
  p.kernel = kernel;
  return p;
}

const InstantonProfile& heat_profile() {
  static const InstantonProfile p = engine_profile(KernelSpec::heat(1.0), kBeta);
  return p;
}

// Shared between criteria 5, 6 and 7.
double calibrated_heat_theta(CylinderFit* out = nullptr) {
  static std::optional<CylinderFit> fit;
  if (!fit) {
    CylinderParams cp;
    cp.evolution = default_params();
    cp.evolution.t_end = 1.0;
    fit = calibrate_theta_cylinder(cp, heat_profile());
  }
  if (out) *out = *fit;
  return fit->theta;
}

// ---------------------------------------------------------------------------

Outcome criterion1() {
  const auto t0 = Clock::now();
  const auto e = equilibria(kBeta, 0.0);
  const double dt = seconds_since(t0);
  const bool ok = e.triple && std::abs(e.m_plus - 0.6585) <= 5e-4 && dt < 1.0;
  return {ok, Detail()("m_beta", fmt("%.10f", e.m_plus))("runtime_s", fmt("%.4f", dt)).str()};
}

Outcome criterion2() {
  const auto t0 = Clock::now();
  const auto J = KernelSpec::analytic(4.0);
  const auto grid = Phase1DGrid::with_spacing(20.0, 0.05);
  const auto p = compute_instanton(J, kBeta, grid);
  InstantonOptions opt;
  opt.init = InstantonInit::SmoothedSign;
  const auto q = compute_instanton(J, kBeta, grid, opt);
  const double dt = seconds_since(t0);

  const int n = p.grid.n;
  bool odd = p.values[p.grid.center()] == 0.0;
  for (int i = 0; i < n; ++i) odd = odd && p.values[i] == -p.values[n - 1 - i];
  int nonstrict = 0;
  for (int i = 0; i + 1 < n; ++i) nonstrict += !(p.values[i + 1] > p.values[i]);
  const double tail = std::max(std::abs(p.values.back() - p.m_beta), std::abs(p.values.front() + p.m_beta));
  double diff = 0.0;
  for (int i = 0; i < n; ++i) diff = std::max(diff, std::abs(p.values[i] - q.values[i]));
  const double res = instanton_residual(reduce_kernels(J, grid.h()), p.values, kBeta, p.m_beta);

  const bool ok = res < 1e-8 && odd && nonstrict == 0 && tail < 1e-6 && diff <= 1e-6 && dt < 10.0;
  return {ok, Detail()("residual", fmt("%.3e", res))("odd", odd ? "exact" : "no")("non_strict_steps", nonstrict)(
                  "tail", fmt("%.3e", tail))("init_diff", fmt("%.3e", diff))("runtime_s", fmt("%.2f", dt))
                  .str()};
}

Outcome criterion3() {
  const auto J = KernelSpec::analytic(4.0);
  const auto grid = Phase1DGrid::with_spacing(20.0, 0.05);
  const auto R = reduce_kernels(J, grid.h());
  const auto p = compute_instanton(R, kBeta, grid);
  const double h = grid.h();
  double zero_mode = 0.0;
  for (double v : apply_linearized(profile_derivative(p), p, R)) zero_mode = std::max(zero_mode, std::abs(v));

  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> C(-8.0, 8.0), W(0.5, 3.0), A(-1.0, 1.0);
  auto random_fn = [&] {
    std::vector<double> f(grid.n, 0.0);
    for (int b = 0; b < 3; ++b) {
      const double c = C(rng), w = W(rng), a = A(rng);
      for (int i = 0; i < grid.n; ++i) {
        const double q = (grid.r(i) - c) / w;
        if (std::abs(q) < 1.0) f[i] += a * std::exp(-1.0 / (1.0 - q * q));
      }
    }
    return f;
  };
  double defect = 0.0;
  for (int n = 0; n < 50; ++n) {
    const auto f = random_fn(), g = random_fn();
    defect = std::max(defect, std::abs(l2mu_inner(apply_linearized(f, p, R), g, p) -
                                       l2mu_inner(f, apply_linearized(g, p, R), p)));
  }
  const bool ok = zero_mode <= 10.0 * h * h && defect <= 1e-8;
  return {ok, Detail()("sup_L_mbar_prime", fmt("%.3e", zero_mode))("bound_10h2", fmt("%.3e", 10 * h * h))(
                  "self_adjoint_defect", fmt("%.3e", defect))
                  .str()};
}

Outcome criterion4() {
  const auto t0 = Clock::now();
  const auto J = KernelSpec::analytic(4.0);
  const auto p = engine_profile(J, kBeta);
  const double theta_q = compute_theta(J, p).theta;
  const auto fine = compute_instanton(J, kBeta, Phase1DGrid::with_spacing(20.0, 0.025));
  const double theta_f = compute_theta(J, fine).theta;
  const double refine = std::abs(theta_f - theta_q) / theta_q;

  // A small explicit step keeps the scheme's theta / (1 + lambda) close to
  // the continuum value on the 96 x 96 slab.
  CylinderParams cp;
  cp.evolution = default_params(J);
  cp.evolution.dt = 0.0004;
  cp.evolution.t_end = 1.0;
  const auto fit = calibrate_theta_cylinder(cp, p);
  const double lam = cp.evolution.lambda();
  const double dev = (fit.theta - theta_q) / theta_q;
  const double dt = seconds_since(t0);
  const bool ok = std::abs(dev) <= 0.05 && fit.fit.r_squared >= 0.999 && refine < 1e-4 && dt < 600.0;
  return {ok, Detail()("theta_quadrature", fmt("%.6f", theta_q))("theta_cylinder", fmt("%.6f", fit.theta))(
                  "deviation", fmt("%+.4f", dev))("lambda", lam)(
                  "theta_cylinder_x_(1+lambda)", fmt("%.6f", fit.theta * (1 + lam)))("fit_r2", fmt("%.6f", fit.fit.r_squared))(
                  "quadrature_refinement", fmt("%.2e", refine))("runtime_s", fmt("%.1f", dt))
                  .str()};
}

Outcome criterion5() {
  CylinderFit fit;
  const double theta = calibrated_heat_theta(&fit);
  const double dev = (theta - kReferenceTheta) / kReferenceTheta;
  const double lam = kDt / (kEps * kEps);
  return {std::abs(dev) <= 0.15, Detail()("theta_measured", fmt("%.6f", theta))("reference", kReferenceTheta)(
                                       "deviation", fmt("%+.4f", dev))("dt", kDt)("lambda", lam)(
                                       "fit_r2", fmt("%.6f", fit.fit.r_squared))
                                       .str()};
}

Outcome criterion6() {
  const auto t0 = Clock::now();
  BallParams bp;
  bp.evolution = default_params();
  bp.theta = calibrated_heat_theta();
  const auto rep = validate_gauge_ball(bp, heat_profile());
  const double dt = seconds_since(t0);
  std::ostringstream hs, is;
  for (std::size_t i = 0; i < rep.times.size(); ++i) {
    hs << (i ? " " : "") << fmt("%.4f", rep.hausdorff[i]);
    is << (i ? " " : "") << fmt("%.4f", rep.intercept[i]);
  }
  const bool ok = rep.max_hausdorff_half_life <= 2.0 * kEps && rep.intercepts_decreasing && dt < 1800.0;
  return {ok, Detail()("theta", fmt("%.6f", bp.theta))("t_star", fmt("%.4f", rep.t_star))(
                  "max_hausdorff", fmt("%.4f", rep.max_hausdorff_half_life))("hausdorff", "[" + hs.str() + "]")(
                  "x3_intercepts", "[" + is.str() + "]")("runtime_s", fmt("%.1f", dt))
                  .str()};
}

Outcome criterion7() {
  auto p = default_params();
  p.t_end = std::round(0.32 / p.dt) * p.dt;
  const auto grid = UniformGrid3::centered({2.0, 2.0, 0.75}, {128, 128, 128});
  const auto m0 = init_levelset_field(Shape::gauge_ball(1.2), p.eps, heat_profile(), grid);
  const auto tr = evolve(m0, p, {p.t_end});
  const auto pr = extract_profiles(tr.snapshots.back(), p.t_end);
  const double ratio = pr.x3.max_slope / pr.x1.max_slope;
  return {ratio > 2.0, Detail()("t", p.t_end)("slope_x1", fmt("%.4f", pr.x1.max_slope))(
                           "slope_x3", fmt("%.4f", pr.x3.max_slope))("ratio", fmt("%.3f", ratio))
                           .str()};
}

Outcome criterion8() {
  const auto p = default_params();
  const double mb = equilibria(kBeta).m_plus;
  const auto grid = UniformGrid3::centered({1.0, 1.0, 0.5}, {41, 41, 21});
  const Stepper stepper(grid, p);
  const auto far = AxisBoundary::far_field(mb, mb);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> U(-mb, mb), D(0.0, 0.5);
  double min_gap = 1e300;
  for (int pair = 0; pair < 20; ++pair) {
    ScalarField lo(grid, {far, far, far}), hi = lo;
    for (std::size_t i = 0; i < lo.size(); ++i) {
      lo.values()[i] = U(rng);
      hi.values()[i] = std::min(mb, lo.values()[i] + D(rng));
    }
    for (int k = 0; k < 50; ++k) {
      lo = stepper.step(lo);
      hi = stepper.step(hi);
      for (std::size_t i = 0; i < lo.size(); ++i) min_gap = std::min(min_gap, hi.values()[i] - lo.values()[i]);
    }
  }
  return {min_gap >= -1e-12, Detail()("pairs", 20)("steps", 50)("min_gap", fmt("%.3e", min_gap)).str()};
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  return linear_regression(lx, ly).slope;
}

Outcome criterion9() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  auto rp = [&] { return GroupPoint{U(rng), U(rng), U(rng)}; };
  auto gdist = [](const GroupPoint& a, const GroupPoint& b) {
    return std::max({std::abs(a.x1 - b.x1), std::abs(a.x2 - b.x2), std::abs(a.x3 - b.x3)});
  };

  double axioms = 0.0, homog = 0.0;
  for (int n = 0; n < 1000; ++n) {
    const auto x = rp(), y = rp(), z = rp();
    axioms = std::max(axioms, gdist(group_mul(group_mul(x, y), z), group_mul(x, group_mul(y, z))));
    axioms = std::max(axioms, gdist(group_mul(x, group_inv(x)), {}));
    axioms = std::max(axioms, gdist(group_mul(x, GroupPoint{}), x));
    const double l = std::exp(U(rng));
    homog = std::max(homog, std::abs(gauge_norm(dilate(l, x)) - l * gauge_norm(x)) / (l * gauge_norm(x)));
  }

  // Stencils on polynomials of degree <= 2 in (x1, x2) and 1 in x3.
  const auto g = UniformGrid3::box({-2, -2, -2}, {2, 2, 2}, {21, 21, 21});
  auto field = [&](auto f) {
    ScalarField m(g, {AxisBoundary::replicate(), AxisBoundary::replicate(), AxisBoundary::replicate()});
    for (int i = 0; i < 21; ++i)
      for (int j = 0; j < 21; ++j)
        for (int k = 0; k < 21; ++k) m.at(i, j, k) = f(g.point(i, j, k));
    return m;
  };
  const auto u = field([](const GroupPoint& x) { return x.x1 * x.x1 + 3 * x.x1 * x.x2 - x.x2 + x.x1 * x.x3 + 2 * x.x3; });
  const auto lap = horizontal_laplacian(u);
  double stencil = 0.0;
  for (int i = 1; i < 20; ++i)
    for (int j = 1; j < 20; ++j)
      for (int k = 1; k < 20; ++k) {
        const auto x = g.point(i, j, k);
        stencil = std::max(stencil, std::abs(lap.at(i, j, k) - (2.0 - x.x2)));
        const double X1 = 2 * x.x1 + 3 * x.x2 + x.x3 - 0.5 * x.x2 * (x.x1 + 2);
        const double X2 = 3 * x.x1 - 1 + 0.5 * x.x1 * (x.x1 + 2);
        stencil = std::max({stencil, std::abs(apply_X(u, 1, i, j, k) - X1), std::abs(apply_X(u, 2, i, j, k) - X2)});
      }

  TestFunction f;
  f.value = [](const GroupPoint& x) { return std::sin(x.x1) * std::cos(x.x2) + x.x1 * x.x3 + 0.3 * x.x3 * x.x3; };
  f.grad = [](const GroupPoint& x) {
    return TestFunction::Vec{std::cos(x.x1) * std::cos(x.x2) + x.x3, -std::sin(x.x1) * std::sin(x.x2), x.x1 + 0.6 * x.x3};
  };
  f.hess = [](const GroupPoint& x) {
    const double s1 = std::sin(x.x1), c1 = std::cos(x.x1), s2 = std::sin(x.x2), c2 = std::cos(x.x2);
    return TestFunction::Mat{{{-s1 * c2, -c1 * s2, 1.0}, {-c1 * s2, -s1 * c2, 0.0}, {1.0, 0.0, 0.6}}};
  };
  std::vector<double> sizes, res;
  for (double l : {0.1, 0.05, 0.025, 0.0125}) {
    const GroupPoint x = dilate(l, {0.6, 0.8, 0.3});
    sizes.push_back(gauge_norm(x));
    res.push_back(std::abs(taylor_residual(f, {0.3, -0.2, 0.1}, x)));
  }
  const double taylor_order = fit_slope(sizes, res);

  // SE(2).
  std::uniform_real_distribution<double> A(-1.0, 1.0), T(0.0, 6.283185307179586);
  double roundtrip = 0.0;
  for (int n = 0; n < 100; ++n) {
    const auto x0 = SE2Point::make(U(rng), U(rng), T(rng));
    const AlgebraCoords a{A(rng), A(rng), A(rng)};
    const auto b = se2_log(x0, se2_exp(x0, a));
    roundtrip = std::max({roundtrip, std::abs(b.a1 - a.a1), std::abs(b.a2 - a.a2), std::abs(b.a3 - a.a3)});
  }
  double branch = 0.0;
  for (int n = 0; n < 20; ++n) {
    const auto x0 = SE2Point::make(U(rng), U(rng), T(rng));
    for (double s : {1.0, -1.0}) {
      const double a1 = A(rng), a3 = A(rng);
      const auto lo = se2_exp(x0, {a1, s * kSe2BranchTol * (1 - 1e-9), a3});
      const auto hi = se2_exp(x0, {a1, s * kSe2BranchTol * (1 + 1e-9), a3});
      branch = std::max(branch, se2_distance(lo, hi));
    }
  }
  const SE2Point x0 = SE2Point::make(0.2, -0.1, 0.8);
  const AlgebraCoords a{0.6, -0.9, 0.5}, b{-0.4, 0.7, 0.3};
  std::vector<double> ls, errs;
  for (double l = 0.2; l >= 0.2 / 64; l /= 2) {
    const AlgebraCoords da{l * a.a1, l * a.a2, l * l * a.a3}, db{l * b.a1, l * b.a2, l * l * b.a3};
    const auto c = se2_flow_compose(x0, da, db);
    const auto h = group_mul({da.a1, da.a2, da.a3}, {db.a1, db.a2, db.a3});
    ls.push_back(l);
    errs.push_back(std::sqrt((c.a1 - h.x1) * (c.a1 - h.x1) + (c.a2 - h.x2) * (c.a2 - h.x2) + (c.a3 - h.x3) * (c.a3 - h.x3)));
  }
  const double tangency = fit_slope(ls, errs);
  const double dt = seconds_since(t0);

  const bool ok = axioms < 1e-12 && homog < 1e-12 && stencil < 1e-10 && taylor_order >= 1.8 && roundtrip <= 1e-8 &&
                  branch <= 1e-7 && tangency >= 2.7 && dt < 60.0;
  return {ok, Detail()("group_axioms", fmt("%.1e", axioms))("gauge_homogeneity", fmt("%.1e", homog))(
                  "stencil_exactness", fmt("%.1e", stencil))("taylor_order", fmt("%.3f", taylor_order))(
                  "se2_roundtrip", fmt("%.1e", roundtrip))("branch_jump", fmt("%.1e", branch))(
                  "tangency_exponent", fmt("%.3f", tangency))("runtime_s", fmt("%.2f", dt))
                  .str()};
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] < v[i - 1])) return false;
  return true;
}

std::string list(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + fmt("%.4f", v[i]);
  return s + "]";
}

Outcome criterion10() {
  const auto t0 = Clock::now();
  const double mb = equilibria(kBeta).m_plus;

  // Far field after 10 steps: the boundary values and the grid corners of the
  // default ball, and both sides of a planar front.
  double lock = 0.0;
  {
    auto p = default_params();
    p.t_end = 10 * p.dt;
    const auto grid = UniformGrid3::centered({2.0, 2.0, 0.75}, {128, 128, 128});
    const auto tr = evolve(init_levelset_field(Shape::gauge_ball(1.2), p.eps, heat_profile(), grid), p, {p.t_end});
    const auto& m = tr.snapshots.back();
    for (const auto& b : m.boundary()) lock = std::max({lock, std::abs(b.lo - mb), std::abs(b.hi - mb)});
    for (int i : {0, 127})
      for (int j : {0, 127})
        for (int k : {0, 127}) lock = std::max(lock, std::abs(m.at(i, j, k) - mb));

    const auto slab = UniformGrid3::centered({2.0, 0.5, 0.5}, {81, 21, 21});
    const auto tp = evolve(init_levelset_field(Shape::halfspace({1, 0, 0}), p.eps, heat_profile(), slab), p, {p.t_end});
    const auto& s = tp.snapshots.back();
    lock = std::max({lock, std::abs(s.boundary()[0].lo + mb), std::abs(s.boundary()[0].hi - mb)});
    for (int j = 0; j < 21; ++j)
      for (int k = 0; k < 21; ++k)
        lock = std::max({lock, std::abs(s.at(0, j, k) + mb), std::abs(s.at(80, j, k) - mb)});
  }

  // Interface tracking under eps-refinement, grids refined with eps and
  // dt / eps^2 held at 0.75. Cylinder: error of the fitted law against the
  // scheme's limit theta / (1 + lambda) with theta = 1. Ball: Hausdorff
  // distance with theta calibrated at the same eps.
  const std::vector<double> epss{0.2, 0.1, 0.05};
  std::vector<double> cyl_err, cyl_theta, ball_err;
  for (std::size_t s = 0; s < epss.size(); ++s) {
    const double eps = epss[s];
    const int scale = 1 << s;
    auto p = default_params();
    p.eps = eps;
    p.dt = 0.75 * eps * eps;

    CylinderParams cp;
    cp.evolution = p;
    cp.evolution.t_end = 3.0;
    cp.radius = 1.6;
    cp.half_width = 2.4;
    cp.n = 60 * scale;
    const auto fit = calibrate_theta_cylinder(cp, heat_profile());
    cyl_theta.push_back(fit.theta);
    cyl_err.push_back(std::abs(fit.theta * (1.0 + p.lambda()) - 1.0));

    BallParams bp;
    bp.evolution = p;
    bp.theta = fit.theta;
    bp.dims = {64 * scale, 64 * scale, 64 * scale};
    ball_err.push_back(validate_gauge_ball(bp, heat_profile()).max_hausdorff_half_life);
    std::fprintf(stderr, "criterion 10: eps %.3f theta %.5f cylinder error %.4f ball hausdorff %.4f (%.0f s)\n", eps,
                 fit.theta, cyl_err.back(), ball_err.back(), seconds_since(t0));
  }
  const bool ok = lock <= 1e-5 && strictly_decreasing(cyl_err) && strictly_decreasing(ball_err);
  return {ok, Detail()("far_field_deviation", fmt("%.2e", lock))("eps", "[0.2 0.1 0.05]")("cylinder_theta", list(cyl_theta))(
                  "cylinder_error", list(cyl_err))("ball_hausdorff", list(ball_err))("runtime_s", fmt("%.0f", seconds_since(t0)))
                  .str()};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                                          criterion6, criterion7, criterion8, criterion9, criterion10};
  std::set<int> which;
  for (int i = 1; i < argc; ++i) which.insert(std::atoi(argv[i]));
  int failed = 0;
  for (std::size_t c = 0; c < criteria.size(); ++c) {
    const int id = static_cast<int>(c) + 1;
    if (!which.empty() && !which.count(id)) continue;
    Outcome o;
    try {
      o = criteria[c]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("criterion %2d: %s  %s\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
