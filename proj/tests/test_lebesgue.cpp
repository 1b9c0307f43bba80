#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lebesgue.hpp"
#include "oracles.hpp"
#include "rng.hpp"

using namespace vexp;

namespace {
const Grid g(2.0, 1024);
const ExponentField p2 = ExponentField::constant(g, 2.0);
}  // namespace

TEST_CASE("modular with constant exponent") {
  CHECK(modular_lp(p2, oracle::indicator(g, 0.0, 1.0)) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(modular_lp(p2, oracle::indicator(g, 0.0, 1.0, 2.0)) ==
        doctest::Approx(4.0).epsilon(1e-14));
  CHECK(modular_lp(p2, GridFunction::zero(g)) == 0.0);
}

TEST_CASE("modular with variable exponent against the closed form") {
  // p = 2 + x on [0,1), f = (1/2) * indicator[0,1):
  // integral_0^1 (1/2)^(2+x) dx = 0.18033688011112042
  const double closed = 0.18033688011112042;
  ExponentField p = ExponentField::affine(g, 2.0, 1.0, 2.0, 3.0);
  GridFunction f = oracle::indicator(g, 0.0, 1.0, 0.5);
  const double coarse = modular_lp(p, f);
  CHECK(coarse == doctest::Approx(closed).epsilon(2e-3));

  // rectangle-rule error is O(dx): refining by 4 shrinks it accordingly
  const Grid g4(2.0, 4096);
  const double fine =
      modular_lp(ExponentField::affine(g4, 2.0, 1.0, 2.0, 3.0),
                 oracle::indicator(g4, 0.0, 1.0, 0.5));
  CHECK(std::fabs(fine - closed) < 0.3 * std::fabs(coarse - closed));
}

TEST_CASE("modular splits the domain at infinite exponents") {
  // p = inf on [1, 2), 2 elsewhere; the sup part carries no dx weight
  std::vector<double> pv(g.n_points(), 2.0);
  for (int i = 0; i < g.n_points(); ++i)
    if (g.x(i) >= 1.0) pv[i] = kInfExponent;
  ExponentField p(g, pv, 1.0);

  GridFunction f = oracle::indicator(g, 1.25, 1.5, 3.0);
  CHECK(modular_lp(p, f) == 3.0);
  CHECK(luxemburg_norm(p, f).value == doctest::Approx(3.0).epsilon(1e-9));

  // mass on both parts adds
  GridFunction h = add(f, oracle::indicator(g, 0.0, 1.0, 1.0));
  CHECK(modular_lp(p, h) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("modular overflows to the infinity sentinel, norm still solves") {
  ExponentField p400 = ExponentField::constant(g, 400.0);
  GridFunction f(g, std::vector<double>(g.n_points(), 10.0));
  CHECK(modular_lp(p400, f) == kInfExponent);
  // closed form: 10 * 4^(1/400)
  CHECK(luxemburg_norm(p400, f).value ==
        doctest::Approx(10.034717485095028).epsilon(1e-9));
}

TEST_CASE("luxemburg norm basics") {
  GridFunction f = oracle::indicator(g, 0.0, 1.0, 2.0);
  const auto res = luxemburg_norm(p2, f);
  CHECK(res.value == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(res.bracket_lo <= res.value);
  CHECK(res.value <= res.bracket_hi);
  CHECK(res.modular_at_value <= 1.0);
  CHECK(res.iterations > 0);

  CHECK(luxemburg_norm(p2, GridFunction::zero(g)).value == 0.0);
  CHECK_THROWS_AS(luxemburg_norm(p2, f, -1.0), Error);
  CHECK_THROWS_AS(
      luxemburg_norm(ExponentField::constant(Grid(2.0, 64), 2.0), f), Error);
}

TEST_CASE("luxemburg norm of a constant block is its height") {
  // rho(f/lambda) = 1 exactly at lambda = height when the support has
  // measure one, for any exponent field
  ExponentField p = ExponentField::affine(g, 2.0, 1.0, 2.0, 3.0);
  GridFunction f = oracle::indicator(g, 0.0, 1.0, 1.5);
  CHECK(luxemburg_norm(p, f).value == doctest::Approx(1.5).epsilon(1e-9));
}

TEST_CASE("luxemburg norm with variable exponent against a scalar oracle") {
  // f = 2 * indicator[0, 1/2), p = 2 + x there; the norm solves
  // integral_0^{1/2} (2/lambda)^(2+x) dx = 1, precomputed independently
  const double lambda_star = 1.4703784311168418;
  {
    const double a = oracle::root(
        [](double t) { return oracle::int_half_pow_a_2px(t) - 1.0; }, 1.0001,
        2.0);
    CHECK(2.0 / a == doctest::Approx(lambda_star).epsilon(1e-10));
  }
  const Grid g4(2.0, 4096);
  ExponentField p = ExponentField::affine(g4, 2.0, 1.0, 2.0, 3.0);
  GridFunction f = oracle::indicator(g4, 0.0, 0.5, 2.0);
  CHECK(luxemburg_norm(p, f).value ==
        doctest::Approx(lambda_star).epsilon(5e-4));
}

TEST_CASE("unit-ball property on random instances") {
  RngStream rng(13, "test/unit_ball");
  for (int t = 0; t < 20; ++t) {
    ExponentField p =
        random_log_holder(g, 1.2, rng.uniform(2.0, 3.5), 4, rng.next_u64());
    GridFunction f = random_function(
        g, t % 2 ? RandomKind::Smooth : RandomKind::Bump,
        rng.uniform(0.1, 10.0), rng.next_u64());
    if (f.is_zero()) continue;
    const double v = luxemburg_norm(p, f).value;
    const auto a = f.abs_values();
    CHECK(modular_lp_scaled(p, a, 1.0 / v) <= 1.0);
    CHECK(modular_lp_scaled(p, a, 1.0 / (0.999 * v)) > 1.0);
  }
}

TEST_CASE("pairing and the variable Hoelder inequality") {
  auto ind = oracle::indicator(g, 0.0, 1.0);
  CHECK(pairing_l1(ind, ind) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(pairing_l1(ind, GridFunction::zero(g)) == 0.0);
  CHECK_THROWS_AS(pairing_l1(ind, GridFunction::zero(Grid(2.0, 64))), Error);

  RngStream rng(5, "test/holder");
  for (int t = 0; t < 20; ++t) {
    ExponentField p =
        random_log_holder(g, 1.4, rng.uniform(2.2, 3.0), 3, rng.next_u64());
    ExponentField pc = conjugate(p);
    GridFunction f = random_function(g, RandomKind::Smooth, 1.0, rng.next_u64());
    GridFunction h = random_function(g, RandomKind::Smooth, 2.0, rng.next_u64());
    const double lhs = std::fabs(pairing_l1(f, h));
    const double rhs =
        2.0 * luxemburg_norm(p, f).value * luxemburg_norm(pc, h).value;
    CHECK(lhs <= rhs * (1.0 + 1e-9));
  }
}
