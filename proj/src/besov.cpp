#include "besov.hpp"

#include <cmath>
#include <complex>

#include "fft.hpp"

namespace vexp {

namespace {

// C-infinity cutoff: 1 for t <= 1, 0 for t >= 2.
double chi_exponential(double t) {
  if (t <= 1.0) return 1.0;
  if (t >= 2.0) return 0.0;
  const double a = std::exp(-1.0 / (t - 1.0));
  const double b = std::exp(-1.0 / (2.0 - t));
  return b / (a + b);
}

// Quintic smoothstep cutoff with the same plateau/support.
double chi_quintic(double t) {
  if (t <= 1.0) return 1.0;
  if (t >= 2.0) return 0.0;
  const double u = t - 1.0;
  return 1.0 - (u * u * u * (10.0 + u * (-15.0 + 6.0 * u)));
}

double cutoff(FilterShape shape, double t) {
  return shape == FilterShape::Exponential ? chi_exponential(t)
                                           : chi_quintic(t);
}

// bump supported in [1/2, 2], positive on the open interval
double band_bump(FilterShape shape, double t) {
  return cutoff(shape, t) * (1.0 - cutoff(shape, 2.0 * t));
}

}  // namespace

int signed_mode(int k, int n) { return k <= n / 2 ? k : k - n; }

FilterPair build_filter_pair(const Grid& grid, FilterShape shape,
                             bool normalize) {
  const int n = grid.n_points();
  int log2n = 0;
  while ((1 << log2n) < n) ++log2n;
  const int nu_max = log2n - 2;  // highest band reaches exactly Nyquist
  if (nu_max < 3)
    throw Error(ErrorCode::GridTooSmall,
                "filter bank needs at least 32 grid points");

  std::vector<double> low(n);
  std::vector<std::vector<double>> bands(nu_max, std::vector<double>(n));
  for (int k = 0; k < n; ++k) {
    const double am = std::abs(signed_mode(k, n));
    low[k] = cutoff(shape, am);
    for (int nu = 1; nu <= nu_max; ++nu)
      bands[nu - 1][k] = band_bump(shape, am / static_cast<double>(1 << nu));
  }

  if (normalize) {
    for (int k = 0; k < n; ++k) {
      double s = low[k] * low[k];
      for (int nu = 1; nu <= nu_max; ++nu)
        s += bands[nu - 1][k] * bands[nu - 1][k];
      if (s > 0.0) {
        const double inv = 1.0 / std::sqrt(s);
        low[k] *= inv;
        for (int nu = 1; nu <= nu_max; ++nu) bands[nu - 1][k] *= inv;
      }
    }
  }

  return FilterPair(grid, shape, nu_max, std::move(low), std::move(bands));
}

GridFunction apply_filter(const GridFunction& f,
                          const std::vector<double>& filter) {
  const std::size_t n = f.size();
  std::vector<std::complex<double>> buf(n);
  for (std::size_t i = 0; i < n; ++i)
    buf[i] = {f.re()[i], f.is_real() ? 0.0 : f.im()[i]};
  auto spec = fft::forward(buf);
  for (std::size_t k = 0; k < n; ++k) spec[k] *= filter[k];
  auto out = fft::inverse(spec);

  std::vector<double> re(n), im(n);
  for (std::size_t i = 0; i < n; ++i) {
    re[i] = out[i].real();
    im[i] = out[i].imag();
  }
  if (f.is_real()) {
    // real input and a real even filter: the imaginary part is FFT noise
    return GridFunction(f.grid(), std::move(re));
  }
  return GridFunction(f.grid(), std::move(re), std::move(im));
}

namespace {

GridFunction weight_pow2(const GridFunction& f, const ExponentField& s,
                         double nu_signed) {
  std::vector<double> re(f.size()), im;
  if (!f.is_real()) im.resize(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double w = std::exp2(nu_signed * s[i]);
    if (!std::isfinite(w))
      throw Error(ErrorCode::NonFinite, "2^(nu s(x)) overflow");
    re[i] = w * f.re()[i];
    if (!f.is_real()) im[i] = w * f.im()[i];
  }
  return GridFunction(f.grid(), std::move(re), std::move(im));
}

void check_besov_inputs(const Grid& g, const ExponentField& s,
                        const FilterPair& filters) {
  if (g != filters.grid() || s.grid() != g)
    throw Error(ErrorCode::GridMismatch, "besov: grids differ");
  if (!s.all_finite())
    throw Error(ErrorCode::SpecOutOfRange, "smoothness field must be finite");
}

}  // namespace

BesovDecomposition analyze(const GridFunction& f, const ExponentField& s,
                           const FilterPair& filters) {
  check_besov_inputs(f.grid(), s, filters);
  FuncSequence bands(f.grid());
  for (int nu = 0; nu <= filters.nu_max(); ++nu)
    bands.push_back(weight_pow2(apply_filter(f, filters.slot(nu)), s, nu));
  return {std::move(bands), s};
}

GridFunction synthesize(const BesovDecomposition& decomp,
                        const FilterPair& filters) {
  const ExponentField& s = decomp.s_field;
  check_besov_inputs(decomp.bands.grid(), s, filters);
  if (decomp.bands.size() > static_cast<std::size_t>(filters.nu_max() + 1))
    throw Error(ErrorCode::GridMismatch,
                "more bands than the filter bank provides");
  GridFunction acc = GridFunction::zero(decomp.bands.grid());
  for (std::size_t nu = 0; nu < decomp.bands.size(); ++nu) {
    const auto unweighted =
        weight_pow2(decomp.bands.term(nu), s, -static_cast<double>(nu));
    acc = add(acc, apply_filter(unweighted, filters.slot(static_cast<int>(nu))));
  }
  return acc;
}

NormResult besov_norm(const GridFunction& f, const ExponentField& s,
                      const ExponentField& p, const ExponentField& q,
                      const FilterPair& filters, const SolveOptions& opts) {
  if (!p.in_class_p() || !q.in_class_p())
    throw Error(ErrorCode::NotInClassP, "besov norm needs class-P exponents");
  if (q.has_infinite())
    throw Error(ErrorCode::QPlusInfinite, "besov norm needs q_plus < inf");
  return mixed_norm(p, q, analyze(f, s, filters).bands, opts);
}

}  // namespace vexp
