#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "besov.hpp"
#include "fft.hpp"
#include "oracles.hpp"
#include "rng.hpp"

using namespace vexp;

namespace {

const Grid g(2.0, 256);

GridFunction random_sub_nyquist(const Grid& grid, RngStream& rng) {
  const int n = grid.n_points();
  std::vector<std::complex<double>> spec(n, 0.0);
  spec[0] = rng.uniform(-1.0, 1.0);
  for (int k = 1; k < n / 2; ++k) {
    spec[k] = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    spec[n - k] = std::conj(spec[k]);
  }
  auto phys = fft::inverse(spec);
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = phys[i].real();
  return GridFunction(grid, std::move(v));
}

double rel_l2(const GridFunction& a, const GridFunction& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a.re()[i] - b.re()[i];
    num += d * d;
    den += b.re()[i] * b.re()[i];
  }
  return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("filter bank: partition of unity below Nyquist, both shapes") {
  for (auto shape : {FilterShape::Exponential, FilterShape::Quintic}) {
    const auto fp = build_filter_pair(g, shape);
    CHECK(fp.nu_max() == 6);  // log2(256) - 2
    const int n = g.n_points();
    for (int k = 0; k < n; ++k) {
      double s = fp.low_pass()[k] * fp.low_pass()[k];
      for (int nu = 1; nu <= fp.nu_max(); ++nu)
        s += fp.band(nu)[k] * fp.band(nu)[k];
      if (std::abs(signed_mode(k, n)) < n / 2) {
        CHECK(std::fabs(s - 1.0) <= 1e-10);
      } else {
        CHECK(s == 0.0);  // the Nyquist bin sits outside the bank
      }
    }
  }
}

TEST_CASE("filter bank: supports, nonnegativity, adjacent overlap only") {
  const auto fp = build_filter_pair(g);
  const int n = g.n_points();
  for (int k = 0; k < n; ++k) {
    const double am = std::abs(signed_mode(k, n));
    CHECK(fp.low_pass()[k] >= 0.0);
    if (am > 2.0) CHECK(fp.low_pass()[k] == 0.0);
    for (int nu = 1; nu <= fp.nu_max(); ++nu) {
      CHECK(fp.band(nu)[k] >= 0.0);
      if (am < std::pow(2.0, nu - 1) || am > std::pow(2.0, nu + 1))
        CHECK(fp.band(nu)[k] == 0.0);
      for (int nu2 = nu + 2; nu2 <= fp.nu_max(); ++nu2)
        CHECK(fp.band(nu)[k] * fp.band(nu2)[k] == 0.0);
    }
  }
  // filters are even in the mode index
  for (int k = 1; k < n / 2; ++k) {
    CHECK(fp.low_pass()[k] == doctest::Approx(fp.low_pass()[n - k]));
    for (int nu = 1; nu <= fp.nu_max(); ++nu)
      CHECK(fp.band(nu)[k] == doctest::Approx(fp.band(nu)[n - k]));
  }
}

TEST_CASE("filter bank needs at least 32 points") {
  CHECK_THROWS_AS(build_filter_pair(Grid(2.0, 16)), Error);
  CHECK_NOTHROW(build_filter_pair(Grid(2.0, 32)));
}

TEST_CASE("skipping normalization is detectable") {
  const auto fp = build_filter_pair(g, FilterShape::Exponential, false);
  double worst = 0.0;
  const int n = g.n_points();
  for (int k = 0; k < n; ++k) {
    if (std::abs(signed_mode(k, n)) >= n / 2) continue;
    double s = fp.low_pass()[k] * fp.low_pass()[k];
    for (int nu = 1; nu <= fp.nu_max(); ++nu)
      s += fp.band(nu)[k] * fp.band(nu)[k];
    worst = std::max(worst, std::fabs(s - 1.0));
  }
  CHECK(worst > 1e-10);
}

TEST_CASE("analysis: zero input, band localization") {
  const auto fp = build_filter_pair(g);
  ExponentField s0 = ExponentField::constant(g, 0.0, std::nullopt);

  auto bands = analyze(GridFunction::zero(g), s0, fp).bands;
  CHECK(bands.size() == static_cast<std::size_t>(fp.nu_max() + 1));
  CHECK(bands.is_zero());

  // spectrum concentrated strictly inside band 3 ([4,16] here -> pick |m|=6)
  const int n = g.n_points();
  std::vector<std::complex<double>> spec(n, 0.0);
  spec[6] = {1.0, 0.5};
  spec[n - 6] = std::conj(spec[6]);
  auto phys = fft::inverse(spec);
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = phys[i].real();
  auto bl = analyze(GridFunction(g, v), s0, fp).bands;
  for (int nu = 0; nu <= fp.nu_max(); ++nu) {
    const bool may_touch = nu == 2 || nu == 3;  // 6 lies in (4,8)x2 overlap
    if (!may_touch) CHECK(bl.term(nu).max_abs() < 1e-12);
  }
}

TEST_CASE("synthesis inverts analysis on sub-Nyquist data") {
  const auto fp = build_filter_pair(g);
  ExponentField s = ExponentField::affine(g, 0.4, 0.3, -1.0, 1.0,
                                          std::nullopt);
  RngStream rng(17, "test/ba_identity");
  for (int t = 0; t < 10; ++t) {
    GridFunction f = random_sub_nyquist(g, rng);
    GridFunction back = synthesize(analyze(f, s, fp), fp);
    CHECK(rel_l2(back, f) < 1e-10);
  }
  CHECK(synthesize({FuncSequence(g), s}, fp).is_zero());
}

TEST_CASE("single band synthesis equals the Fourier-side oracle") {
  const auto fp = build_filter_pair(g);
  ExponentField s0 = ExponentField::constant(g, 0.0, std::nullopt);
  RngStream rng(19, "test/single_band");
  GridFunction f = random_sub_nyquist(g, rng);

  const int nu = 3;
  GridFunction band = apply_filter(f, fp.band(nu));
  FuncSequence bands(g);
  for (int k = 0; k < nu; ++k) bands.push_back(GridFunction::zero(g));
  bands.push_back(band);
  const GridFunction out = synthesize({bands, s0}, fp);

  // oracle: multiply the spectrum by the squared band filter directly
  const int n = g.n_points();
  std::vector<std::complex<double>> spec(n);
  for (int i = 0; i < n; ++i) spec[i] = {f.re()[i], 0.0};
  auto fhat = fft::forward(spec);
  for (int k = 0; k < n; ++k) fhat[k] *= fp.band(nu)[k] * fp.band(nu)[k];
  auto phys = fft::inverse(fhat);
  for (int i = 0; i < n; ++i)
    CHECK(out.re()[i] == doctest::Approx(phys[i].real()).epsilon(1e-10));
}

TEST_CASE("besov norm: zero input, definitional isometry, Plancherel") {
  const auto fp = build_filter_pair(g);
  ExponentField s0 = ExponentField::constant(g, 0.0, std::nullopt);
  ExponentField p2 = ExponentField::constant(g, 2.0);
  ExponentField q2 = ExponentField::constant(g, 2.0);

  CHECK(besov_norm(GridFunction::zero(g), s0, p2, q2, fp).value == 0.0);

  RngStream rng(23, "test/plancherel");
  SolveOptions tight;
  tight.tol_inner = 1e-12;
  tight.tol_outer = 1e-10;
  for (int t = 0; t < 5; ++t) {
    GridFunction f = random_sub_nyquist(g, rng);
    const double via_besov = besov_norm(f, s0, p2, q2, fp, tight).value;
    const double via_mixed =
        mixed_norm(p2, q2, analyze(f, s0, fp).bands, tight).value;
    CHECK(via_besov == via_mixed);  // same computation, bit for bit
    CHECK(via_besov == doctest::Approx(oracle::l2_norm(f)).epsilon(1e-8));
  }

  std::vector<double> qinf(g.n_points(), kInfExponent);
  CHECK_THROWS_AS(
      besov_norm(GridFunction::zero(g), s0, p2,
                 ExponentField(g, qinf, 1.0), fp),
      Error);
}

TEST_CASE("the two filter shapes give comparable norms") {
  const auto fa = build_filter_pair(g, FilterShape::Exponential);
  const auto fb = build_filter_pair(g, FilterShape::Quintic);
  ExponentField s = ExponentField::affine(g, 0.1, 0.2, -0.5, 0.5,
                                          std::nullopt);
  ExponentField p = ExponentField::constant(g, 2.4);
  ExponentField q = ExponentField::constant(g, 1.8);
  RngStream rng(29, "test/equivalence");
  for (int t = 0; t < 5; ++t) {
    GridFunction f = random_sub_nyquist(g, rng);
    const double va = besov_norm(f, s, p, q, fa).value;
    const double vb = besov_norm(f, s, p, q, fb).value;
    const double ratio = va / vb;
    CHECK(ratio > 0.1);
    CHECK(ratio < 10.0);
  }
}
