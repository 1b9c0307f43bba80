#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mixed.hpp"
#include "oracles.hpp"
#include "rng.hpp"

using namespace vexp;

namespace {
const Grid g(2.0, 256);
const ExponentField p2 = ExponentField::constant(g, 2.0);
const ExponentField q2 = ExponentField::constant(g, 2.0);

FuncSequence seq_of(std::initializer_list<GridFunction> terms) {
  FuncSequence s(g);
  for (const auto& t : terms) s.push_back(t);
  return s;
}
}  // namespace

TEST_CASE("sequence modular, single unit term") {
  auto f = seq_of({oracle::indicator(g, 0.0, 1.0)});
  const auto bd = mixed_modular_p1(p2, q2, f);
  REQUIRE(bd.per_term.size() == 1);
  CHECK(bd.per_term[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(bd.total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("sequence modular: zero sequence and the two-term closed form") {
  auto zero = seq_of({GridFunction::zero(g), GridFunction::zero(g)});
  CHECK(mixed_modular_p1(p2, q2, zero).total == 0.0);

  // per-term infima for p = q = 2 are squared L2 norms: [4, 1]
  auto f = seq_of({oracle::indicator(g, 0.0, 1.0, 2.0),
                   oracle::indicator(g, 0.0, 1.0)});
  const auto bd = mixed_modular_p1(p2, q2, f);
  CHECK(bd.per_term[0] == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(bd.per_term[1] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(bd.total == doctest::Approx(5.0).epsilon(1e-9));

  // the closed-form route agrees
  CHECK(mixed_modular_p1a(p2, q2, f) == doctest::Approx(5.0).epsilon(1e-8));
}

TEST_CASE("the two modular routes agree on variable exponents") {
  RngStream rng(21, "test/p1_p1a");
  for (int t = 0; t < 10; ++t) {
    ExponentField p =
        random_log_holder(g, 1.2, rng.uniform(2.0, 3.2), 4, rng.next_u64());
    ExponentField q =
        random_log_holder(g, 1.2, rng.uniform(2.0, 3.2), 3, rng.next_u64());
    FuncSequence f(g);
    const int terms = rng.uniform_int(2, 4);
    for (int k = 0; k < terms; ++k)
      f.push_back(random_function(g, RandomKind::Smooth,
                                  rng.uniform(0.3, 2.0), rng.next_u64()));
    const double a = mixed_modular_p1(p, q, f).total;
    const double b = mixed_modular_p1a(p, q, f);
    CHECK(a == doctest::Approx(b).epsilon(1e-6));
  }
}

TEST_CASE("closed-form route refuses infinite q") {
  std::vector<double> qv(g.n_points(), 2.0);
  qv[0] = kInfExponent;
  ExponentField qinf(g, qv, 1.0);
  auto f = seq_of({oracle::indicator(g, 0.0, 1.0)});
  CHECK_THROWS_AS(mixed_modular_p1a(p2, qinf, f), Error);
  // the bisection route handles it
  CHECK_NOTHROW(mixed_modular_p1(p2, qinf, f));
}

TEST_CASE("mixed norm: classical l2(L2) and the one-term reduction") {
  auto f = seq_of({oracle::indicator(g, 0.0, 1.0),
                   oracle::indicator(g, 0.0, 1.0)});
  CHECK(mixed_norm(p2, q2, f).value ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-8));

  RngStream rng(31, "test/single_term");
  for (int t = 0; t < 5; ++t) {
    ExponentField p =
        random_log_holder(g, 1.3, rng.uniform(2.0, 3.0), 3, rng.next_u64());
    ExponentField q =
        random_log_holder(g, 1.3, rng.uniform(2.0, 3.0), 3, rng.next_u64());
    GridFunction f0 = random_function(g, RandomKind::Bump,
                                      rng.uniform(0.5, 4.0), rng.next_u64());
    auto single = seq_of({f0});
    CHECK(mixed_norm(p, q, single).value ==
          doctest::Approx(luxemburg_norm(p, f0).value).epsilon(1e-6));
  }
}

TEST_CASE("mixed norm: zero input, homogeneity, unit ball") {
  auto zero = seq_of({GridFunction::zero(g)});
  CHECK(mixed_norm(p2, q2, zero).value == 0.0);

  RngStream rng(41, "test/mixed_props");
  ExponentField p =
      random_log_holder(g, 1.3, 2.8, 4, rng.next_u64());
  ExponentField q = ExponentField::constant(g, rng.uniform(1.5, 2.5));
  FuncSequence f(g);
  for (int k = 0; k < 3; ++k)
    f.push_back(random_function(g, RandomKind::Smooth, 1.0, rng.next_u64()));

  const double v = mixed_norm(p, q, f).value;
  const double v3 = mixed_norm(p, q, scaled(f, 3.0)).value;
  CHECK(v3 == doctest::Approx(3.0 * v).epsilon(1e-7));

  SolveOptions opts;
  CHECK(mixed_modular_p1(p, q, scaled(f, 1.0 / v), opts).total <= 1.0);
  CHECK(mixed_modular_p1(p, q, scaled(f, 1.0 / (0.999 * v)), opts).total >
        1.0);
}

TEST_CASE("q = inf aggregates as a sup, and the convention switch matters") {
  ExponentField qinf = ExponentField::constant(g, kInfExponent);
  auto f = seq_of({oracle::indicator(g, 0.0, 1.0, 2.0),
                   oracle::indicator(g, -1.0, 0.0, 1.5)});
  // max of the L2 norms: max(2, 1.5) = 2
  CHECK(mixed_norm(p2, qinf, f).value == doctest::Approx(2.0).epsilon(1e-7));

  SolveOptions broken;
  broken.lambda_inf_as_unit = false;
  const double wrong = mixed_norm(p2, qinf, f, broken).value;
  // without the convention the aggregation degenerates to a sum
  CHECK(std::fabs(wrong - 2.0) > 0.5);
}

TEST_CASE("projection algebra") {
  auto f = seq_of({oracle::indicator(g, 0.0, 1.0),
                   oracle::indicator(g, 0.0, 1.0, 2.0),
                   oracle::indicator(g, -1.0, 0.0)});
  CHECK(project(5, f).size() == 3);
  CHECK(project(0, f).size() == 0);
  CHECK(project(2, project(3, f)).size() == project(2, f).size());
  // complement keeps positions: first N slots zeroed
  auto tail = tail_project(2, f);
  CHECK(tail.size() == 3);
  CHECK(tail.term(0).is_zero());
  CHECK(tail.term(1).is_zero());
  CHECK(!tail.term(2).is_zero());
  CHECK_THROWS_AS(project(-1, f), Error);
}

TEST_CASE("comparison norm and the embedding with constant one") {
  auto f = seq_of({oracle::indicator(g, 0.0, 1.0),
                   oracle::indicator(g, 0.0, 1.0)});
  CHECK(lqminus_norm(p2, 2.0, f) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));

  auto single = seq_of({oracle::indicator(g, 0.0, 1.0, 3.0)});
  CHECK(lqminus_norm(p2, 2.0, single) == doctest::Approx(3.0).epsilon(1e-9));
  CHECK_THROWS_AS(lqminus_norm(p2, 0.5, f), Error);
  CHECK_THROWS_AS(lqminus_norm(p2, kInfExponent, f), Error);

  RngStream rng(51, "test/embedding");
  for (int t = 0; t < 5; ++t) {
    ExponentField p =
        random_log_holder(g, 1.3, rng.uniform(2.0, 3.0), 3, rng.next_u64());
    ExponentField q =
        random_log_holder(g, 1.4, rng.uniform(2.0, 2.8), 3, rng.next_u64());
    FuncSequence f2(g);
    for (int k = 0; k < 3; ++k)
      f2.push_back(random_function(g, RandomKind::Smooth,
                                   rng.uniform(0.3, 2.0), rng.next_u64()));
    const double mixed = mixed_norm(p, q, f2).value;
    const double comp = lqminus_norm(p, q.p_minus(), f2);
    CHECK(mixed <= comp * (1.0 + 1e-7));
  }
}

TEST_CASE("truncation tails vanish monotonically for decaying sequences") {
  RngStream rng(61, "test/density");
  ExponentField p = random_log_holder(g, 1.4, 2.6, 3, rng.next_u64());
  ExponentField q = ExponentField::constant(g, 2.0);
  FuncSequence f(g);
  double w = 1.0;
  for (int k = 0; k < 6; ++k) {
    f.push_back(scaled(
        random_function(g, RandomKind::Smooth, 1.0, rng.next_u64()), w));
    w *= 0.25;
  }
  double prev = kInfExponent;
  for (int N = 0; N <= 6; ++N) {
    auto tail = tail_project(N, f);
    const double v = tail.is_zero() ? 0.0 : mixed_norm(p, q, tail).value;
    CHECK(v <= prev * (1.0 + 1e-7) + 1e-300);
    prev = v;
  }
  CHECK(prev == 0.0);
}
