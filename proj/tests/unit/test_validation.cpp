#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hmcf/errors.hpp"
#include "hmcf/validation.hpp"
#include "support.hpp"

using namespace hmcf;

namespace {

LevelCurve circle(double cx, double cy, double r, int n = 512) {
  LevelCurve c;
  for (int i = 0; i < n; ++i) {
    const double a = 2.0 * std::numbers::pi * i / n;
    c.points.push_back({cx + r * std::cos(a), cy + r * std::sin(a)});
  }
  return c;
}

const InstantonProfile& heat_profile() {
  static const InstantonProfile p = engine_profile(KernelSpec::heat(1.0), 1.2);
  return p;
}

}  // namespace

TEST_CASE("exact ball law") {
  CHECK(ball_extinction_time(1.2, 0.56561) == doctest::Approx(0.734944915783898).epsilon(1e-14));
  CHECK(ball_intercept(1.2, 0.56561, 0.32) == doctest::Approx(0.324084176075784367).epsilon(1e-14));
  CHECK(ball_intercept(1.2, 0.56561, 0.0) == doctest::Approx(0.36).epsilon(1e-15));
  CHECK(ball_equator_radius(1.2, 0.56561, 0.0) == doctest::Approx(1.2).epsilon(1e-15));
  const double ts = ball_extinction_time(1.2, 0.56561);
  CHECK(ball_intercept(1.2, 0.56561, ts) == doctest::Approx(0.0).scale(1).epsilon(1e-7));
  CHECK(ball_equator_radius(1.2, 0.56561, ts) == doctest::Approx(0.0).scale(1).epsilon(1e-7));

  const auto c0 = exact_ball_curve(1.2, 0.56561, 0.0);
  for (const auto& p : c0.points) CHECK(gauge_norm({p[0], 0.0, p[1]}) == doctest::Approx(1.2).epsilon(1e-12));
  // Every point of the curve at t satisfies the closed-form law.
  const double t = 0.3, tt = 0.56561 * t;
  for (const auto& p : exact_ball_curve(1.2, 0.56561, t).points) {
    const double r2 = p[0] * p[0];
    CHECK(r2 * r2 + 12.0 * tt * r2 + 16.0 * p[1] * p[1] + 12.0 * tt * tt == doctest::Approx(std::pow(1.2, 4)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(exact_ball_curve(1.2, 0.56561, ts), Error);
}

TEST_CASE("Hausdorff distance") {
  const auto a = circle(0, 0, 1.0), b = circle(0, 0, 1.1), c = circle(0.05, 0, 1.0);
  CHECK(hausdorff_distance(a, b) == doctest::Approx(0.1).epsilon(1e-2));
  CHECK(hausdorff_distance(a, c) == doctest::Approx(0.05).epsilon(1e-2));
  CHECK(hausdorff_distance(a, a) < 1e-12);
  CHECK(hausdorff_distance(b, c) == doctest::Approx(hausdorff_distance(c, b)));
  CHECK(hausdorff_distance(a, b) <= hausdorff_distance(a, c) + hausdorff_distance(c, b) + 1e-12);
  // Coarse polygon against its own refinement: only the sagitta.
  const auto coarse = circle(0, 0, 1.0, 16);
  CHECK(hausdorff_distance(coarse, a) == doctest::Approx(1.0 - std::cos(std::numbers::pi / 16)).epsilon(1e-3));
  CHECK_THROWS_AS(hausdorff_distance(LevelCurve{}, a), Error);
}

TEST_CASE("zero level set extraction") {
  const auto g = UniformGrid3::centered({2.0, 2.0, 0.75}, {81, 81, 31});
  const auto& prof = heat_profile();
  const auto m = init_levelset_field(Shape::gauge_ball(1.2), 0.1, prof, g);
  const auto curve = extract_zero_levelset(m, SlicePlane::X2Zero);
  CHECK(curve.points.size() > 50);
  CHECK(hausdorff_distance(curve, exact_ball_curve(1.2, 1.0, 0.0)) < g.spacing[0]);

  ScalarField neg = m;
  for (auto& v : neg.values()) v = -v;
  const auto flipped = extract_zero_levelset(neg, SlicePlane::X2Zero);
  CHECK(hausdorff_distance(curve, flipped) < 1e-12);

  const auto eq = extract_zero_levelset(m, SlicePlane::X3Zero);
  CHECK(hausdorff_distance(eq, circle(0, 0, 1.2)) < g.spacing[0]);

  ScalarField flat(g, hmcf::test::far3(0.5), 0.5);
  CHECK_THROWS_AS(extract_zero_levelset(flat, SlicePlane::X2Zero), Error);
}

TEST_CASE("regression") {
  const std::vector<double> t{0.0, 0.5, 1.0, 2.0};
  const auto f = linear_regression(t, {1.0, 2.0, 3.0, 5.0});
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK(f.r_squared == doctest::Approx(1.0));

  std::vector<double> times, radius;
  for (int k = 0; k < 40; ++k) {
    times.push_back(0.01 * k);
    radius.push_back(std::sqrt(1.0 - 2.0 * 0.8 * times.back()));
  }
  const auto c = fit_cylinder_law(times, radius, 0.2);
  CHECK(c.theta == doctest::Approx(0.8).epsilon(1e-12));
  CHECK_THROWS_AS(fit_cylinder_law(times, radius, 0.98), Error);
}

TEST_CASE("cylinder calibration, heat kernel") {
  CylinderParams cp;
  cp.evolution.kernel = KernelSpec::heat(1.0);
  cp.evolution.t_end = 1.0;
  const auto fit = calibrate_theta_cylinder(cp, heat_profile());
  MESSAGE("theta " << fit.theta << " r^2 " << fit.fit.r_squared);
  CHECK(fit.fit.r_squared >= 0.999);
  // Frozen from a run at the default settings (eps 0.1, dt 0.0075, 96 nodes).
  CHECK(fit.theta == doctest::Approx(0.6258165431730952).epsilon(1e-6));
  // Explicit stepping moves the fitted law to theta / (1 + lambda); the
  // remainder is the O(eps) bias of the diffuse interface.
  const double lam = cp.evolution.lambda();
  CHECK(std::abs(fit.theta * (1.0 + lam) - 1.0) < 0.15);

  cp.n = 64;
  CHECK_THROWS_AS(calibrate_theta_cylinder(cp, heat_profile()), Error);
}

TEST_CASE("axis profiles") {
  const auto g = UniformGrid3::centered({2.0, 2.0, 0.75}, {81, 81, 61});
  const auto m = init_levelset_field(Shape::gauge_ball(1.2), 0.1, heat_profile(), g);
  const auto p = extract_profiles(m, 0.0);
  CHECK(p.x1.crossing == doctest::Approx(1.2).epsilon(1e-2));
  CHECK(p.x3.crossing == doctest::Approx(0.36).epsilon(2e-2));
  // d(gauge)/dx3 = 1 / sqrt(x3) at the pole against 1 on the equator.
  CHECK(p.x3.max_slope / p.x1.max_slope == doctest::Approx(1.0 / 0.6).epsilon(0.05));
  CHECK(p.x1.s.size() == p.x1.value.size());
}
