#include <doctest.h>

#include <random>

#include "hmcf/group.hpp"

using namespace hmcf;

namespace {

void check_eq(const GroupPoint& a, const GroupPoint& b, double tol = 0.0) {
  CHECK(std::abs(a.x1 - b.x1) <= tol);
  CHECK(std::abs(a.x2 - b.x2) <= tol);
  CHECK(std::abs(a.x3 - b.x3) <= tol);
}

GroupPoint random_point(std::mt19937_64& rng, double r = 3.0) {
  std::uniform_real_distribution<double> U(-r, r);
  return {U(rng), U(rng), U(rng)};
}

}  // namespace

TEST_CASE("group law on fixed points") {
  check_eq(group_mul({0, 0, 0}, {2.5, -1, 4}), {2.5, -1, 4});
  check_eq(group_mul({1, 0, 0}, {0, 1, 0}), {1, 1, 0.5});
  check_eq(group_mul({1, 2, 3}, {-1, -2, -3}), {0, 0, 0});
}

TEST_CASE("inverse is negation") {
  check_eq(group_inv({0, 0, 0}), {0, 0, 0});
  check_eq(group_inv({1, 2, 3}), {-1, -2, -3});
  check_eq(group_inv({-0.5, 0.25, 7}), {0.5, -0.25, -7});
}

TEST_CASE("group axioms on random points") {
  std::mt19937_64 rng(11);
  for (int n = 0; n < 100; ++n) {
    const auto x = random_point(rng), y = random_point(rng), z = random_point(rng);
    check_eq(group_mul(group_mul(x, y), z), group_mul(x, group_mul(y, z)), 1e-13);
    check_eq(group_mul(x, group_inv(x)), {0, 0, 0});
    check_eq(group_mul(group_inv(x), x), {0, 0, 0});
    check_eq(group_mul(x, {0, 0, 0}), x);
  }
}

TEST_CASE("dilations") {
  check_eq(dilate(1.0, {0.3, -2, 5}), {0.3, -2, 5});
  check_eq(dilate(2.0, {1, 1, 1}), {2, 2, 4});
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> L(0.0, 4.0);
  for (int n = 0; n < 50; ++n) {
    const auto x = random_point(rng);
    const double a = L(rng), b = L(rng);
    check_eq(dilate(a, dilate(b, x)), dilate(a * b, x), 1e-12);
    // Dilations are group automorphisms.
    const auto y = random_point(rng);
    check_eq(dilate(a, group_mul(x, y)), group_mul(dilate(a, x), dilate(a, y)), 1e-11);
  }
}

TEST_CASE("gauge norm") {
  CHECK(gauge_norm({1, 0, 0}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(gauge_norm({0, 0, 1}) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(gauge_norm({1, 1, 0}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(gauge_norm({0, 0, 0}) == 0.0);
  CHECK(gauge_norm(dilate(3.0, {1, 2, 0.5})) == doctest::Approx(3.0 * gauge_norm({1, 2, 0.5})).epsilon(1e-15));

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> L(0.0, 10.0);
  for (int n = 0; n < 100; ++n) {
    const auto x = random_point(rng);
    const double l = L(rng);
    CHECK(gauge_norm(dilate(l, x)) == doctest::Approx(l * gauge_norm(x)).epsilon(1e-14));
    CHECK(gauge_norm(group_inv(x)) == gauge_norm(x));
  }
}
