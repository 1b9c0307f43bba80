#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "exponents.hpp"
#include "rng.hpp"

using namespace vexp;

namespace {
const Grid g(2.0, 1024);
}

TEST_CASE("field construction caches bounds and the infinity mask") {
  ExponentField c2 = ExponentField::constant(g, 2.0);
  CHECK(c2.p_minus() == 2.0);
  CHECK(c2.p_plus() == 2.0);
  CHECK(!c2.has_infinite());

  // 2 + x clipped to [2, 3]: matches 2 + x on [0, 1], constant outside
  ExponentField aff = ExponentField::affine(g, 2.0, 1.0, 2.0, 3.0);
  CHECK(aff.p_minus() == 2.0);
  CHECK(aff.p_plus() == 3.0);

  std::vector<double> tab(g.n_points(), 2.0);
  tab[17] = kInfExponent;
  ExponentField t(g, tab, 1.0);
  CHECK(t.has_infinite());
  CHECK(t.infinite_count() == 1);
  CHECK(t.is_infinite_at(17));
  CHECK(t.p_plus() == kInfExponent);
  CHECK(t.p_minus() == 2.0);
}

TEST_CASE("field construction errors") {
  // below the declared class floor
  CHECK_THROWS_AS(ExponentField::constant(g, 0.5, 1.0), Error);
  // table length mismatch
  CHECK_THROWS_AS(ExponentField(g, std::vector<double>(100, 2.0), 1.0), Error);
  // NaN is never a valid exponent
  std::vector<double> bad(g.n_points(), 2.0);
  bad[0] = std::nan("");
  CHECK_THROWS_AS(ExponentField(g, bad, 1.0), Error);
  // unrestricted fields may go negative
  CHECK_NOTHROW(ExponentField::constant(g, -0.5, std::nullopt));
}

TEST_CASE("conjugate endpoints and pointwise identity") {
  ExponentField c2 = ExponentField::constant(g, 2.0);
  CHECK(conjugate(c2).p_minus() == 2.0);

  ExponentField c1 = ExponentField::constant(g, 1.0);
  CHECK(conjugate(c1).p_minus() == kInfExponent);

  ExponentField cinf = ExponentField::constant(g, kInfExponent);
  CHECK(conjugate(cinf).p_plus() == 1.0);

  // p(x) = 2 + x at x = 1 is 3; conjugate there is 3/2
  ExponentField aff = ExponentField::affine(g, 2.0, 1.0, 2.0, 3.0);
  ExponentField affc = conjugate(aff);
  const int i1 = static_cast<int>((1.0 + 2.0) / g.dx());  // x = 1
  CHECK(aff[i1] == 3.0);
  CHECK(affc[i1] == doctest::Approx(1.5).epsilon(1e-15));

  CHECK_THROWS_AS(conjugate(ExponentField::constant(g, 0.9, 0.5)), Error);
}

TEST_CASE("conjugate involution on random fields") {
  RngStream rng(3, "test/conjugate");
  for (int t = 0; t < 20; ++t) {
    ExponentField p =
        random_log_holder(g, rng.uniform(1.05, 1.6), rng.uniform(2.0, 4.0),
                          rng.uniform_int(1, 6), rng.next_u64());
    ExponentField back = conjugate(conjugate(p));
    for (std::size_t i = 0; i < p.size(); ++i) {
      CHECK(std::fabs(back[i] - p[i]) < 1e-12);
      const double pc = conjugate(p)[i];
      CHECK(std::fabs(1.0 / p[i] + 1.0 / pc - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("normability conditions and their precedence") {
  ExponentField p3 = ExponentField::constant(g, 3.0);
  ExponentField q2 = ExponentField::constant(g, 2.0);
  CHECK(check_normability(p3, q2).tag == NormabilityTag::Cond1);

  // q <= p holds pointwise here, so condition 1 wins over condition 2 by
  // the declared precedence even though q is constant
  std::vector<double> psin(g.n_points());
  for (int i = 0; i < g.n_points(); ++i)
    psin[i] = 2.0 + std::fabs(std::sin(g.x(i)));
  ExponentField pvar(g, psin, 1.0);
  CHECK(check_normability(pvar, q2).tag == NormabilityTag::Cond1);

  // p dips below the constant q somewhere: condition 1 fails, 2 holds
  std::vector<double> pdip(g.n_points(), 2.5);
  pdip[10] = 1.5;
  CHECK(check_normability(ExponentField(g, pdip, 1.0), q2).tag ==
        NormabilityTag::Cond2);

  // equal constants: condition 1 fires first
  CHECK(check_normability(p3, ExponentField::constant(g, 3.0)).tag ==
        NormabilityTag::Cond1);

  // non-constant q above p somewhere, but both large: condition 3
  std::vector<double> pa(g.n_points(), 2.5), qa(g.n_points(), 2.5);
  pa[3] = 2.2;
  qa[3] = 2.4;
  qa[5] = 2.6;
  CHECK(check_normability(ExponentField(g, pa, 1.0),
                          ExponentField(g, qa, 1.0))
            .tag == NormabilityTag::Cond3);

  // small variable exponents with q > p somewhere: nothing holds
  std::vector<double> pn(g.n_points(), 1.3), qn(g.n_points(), 1.3);
  pn[3] = 1.2;
  qn[3] = 1.4;
  qn[7] = 1.25;
  ExponentField pN(g, pn, 1.0), qN(g, qn, 1.0);
  CHECK(check_normability(pN, qN).tag == NormabilityTag::None);
  CHECK(!check_normability(pN, qN).witness.empty());

  CHECK_THROWS_AS(
      check_normability(p3, ExponentField::constant(Grid(2.0, 64), 2.0)),
      Error);
}

TEST_CASE("log-Hoelder check: constants pass, jumps fail") {
  ExponentField c2 = ExponentField::constant(g, 2.0);
  auto rep = check_log_holder(c2, 0.01, 2.0);
  CHECK(rep.pass);
  CHECK(rep.worst_local_margin >= 0.0);
  CHECK(rep.worst_decay_margin >= 0.0);

  // height-1 jump between adjacent points: local condition fails for small c
  std::vector<double> jump(g.n_points(), 2.0);
  for (int i = g.n_points() / 2; i < g.n_points(); ++i) jump[i] = 3.0;
  auto bad = check_log_holder(ExponentField(g, jump, 1.0), 0.05, 2.0);
  CHECK(!bad.pass);
  CHECK(bad.worst_local_margin < 0.0);
}

TEST_CASE("random_log_holder: bounds, determinism, self-declared constant") {
  ExponentField f = random_log_holder(g, 1.5, 3.0, 4, 7);
  CHECK(f.p_minus() >= 1.5);
  CHECK(f.p_plus() <= 3.0);

  ExponentField f2 = random_log_holder(g, 1.5, 3.0, 4, 7);
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(f[i] == f2[i]);

  const auto lh = log_holder_constant(f);
  auto rep = check_log_holder(f, lh.c, lh.p_infinity);
  CHECK(rep.pass);

  // boundary region is blended to the midpoint constant
  CHECK(f[0] == doctest::Approx(2.25).epsilon(1e-12));

  CHECK_THROWS_AS(random_log_holder(g, 1.0, 3.0, 4, 7), Error);
  CHECK_THROWS_AS(random_log_holder(g, 2.0, 1.5, 4, 7), Error);
  CHECK_THROWS_AS(random_log_holder(g, 1.5, 3.0, 0, 7), Error);
}
