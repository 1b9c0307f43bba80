#include "lebesgue.hpp"

#include <algorithm>
#include <cmath>

namespace vexp {

namespace {

constexpr double kInf = kInfExponent;

// |t|^e with an explicit overflow branch so huge powers land on the
// infinity sentinel instead of raising spurious FE flags pointwise.
inline double safe_pow(double t, double e) {
  if (t == 0.0) return 0.0;  // 0^e := 0 for every e > 0
  if (t > 1.0 && e * std::log(t) > 709.0) return kInf;
  return std::pow(t, e);
}

}  // namespace

double modular_lp_scaled(const ExponentField& p, std::span<const double> abs_f,
                         double scale) {
  if (abs_f.size() != p.size())
    throw Error(ErrorCode::GridMismatch, "modular: field/function mismatch");
  const double dx = p.grid().dx();
  double integral = 0.0;
  double sup_part = 0.0;
  for (std::size_t i = 0; i < abs_f.size(); ++i) {
    const double t = abs_f[i] * scale;
    const double pi = p[i];
    if (pi == kInf) {
      sup_part = std::max(sup_part, t);
    } else {
      integral += safe_pow(t, pi);
      if (integral == kInf) return kInf;
    }
  }
  return dx * integral + sup_part;
}

double modular_lp(const ExponentField& p, const GridFunction& f) {
  if (!p.in_class_p0())
    throw Error(ErrorCode::SpecOutOfRange, "modular needs a class-P0 exponent");
  if (p.grid() != f.grid())
    throw Error(ErrorCode::GridMismatch, "modular: grids differ");
  return modular_lp_scaled(p, f.abs_values(), 1.0);
}

NormResult luxemburg_norm(const ExponentField& p, const GridFunction& f,
                          double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::Config, "tolerance must be > 0");
  if (!p.in_class_p0())
    throw Error(ErrorCode::SpecOutOfRange, "norm needs a class-P0 exponent");
  if (p.grid() != f.grid())
    throw Error(ErrorCode::GridMismatch, "norm: grids differ");

  NormResult res;
  res.tolerance = tol;
  const std::vector<double> a = f.abs_values();
  for (double v : a)
    if (!std::isfinite(v))
      throw Error(ErrorCode::NonFinite, "norm input has non-finite entries");

  const double m = *std::max_element(a.begin(), a.end());
  if (m == 0.0) return res;  // zero function, norm 0 without bracketing

  // seed: max|f| * (measure of support)^(1/p_minus)
  std::size_t support = 0;
  for (double v : a)
    if (v > 0.0) ++support;
  const double meas = static_cast<double>(support) * p.grid().dx();
  const double inv_pm = p.p_minus() == kInf ? 0.0 : 1.0 / p.p_minus();
  double seed = m * std::pow(meas, inv_pm);
  if (!(seed > 0.0) || !std::isfinite(seed)) seed = m;

  auto feasible = [&](double lambda) {
    return modular_lp_scaled(p, a, 1.0 / lambda) <= 1.0;
  };

  double lo, hi;
  if (feasible(seed)) {
    hi = seed;
    lo = seed;
    int steps = 0;
    do {
      lo *= 0.5;
      if (++steps > 200)
        throw Error(ErrorCode::BracketFailure,
                    "no infeasible lambda after 200 halvings");
    } while (feasible(lo));
  } else {
    lo = seed;
    hi = seed;
    int steps = 0;
    do {
      hi *= 2.0;
      if (++steps > 200)
        throw Error(ErrorCode::BracketFailure,
                    "no feasible lambda after 200 doublings");
    } while (!feasible(hi));
  }

  int it = 0;
  while ((hi - lo) > tol * hi) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid))
      hi = mid;
    else
      lo = mid;
    ++it;
  }

  res.value = hi;
  res.modular_at_value = modular_lp_scaled(p, a, 1.0 / hi);
  res.bracket_lo = lo;
  res.bracket_hi = hi;
  res.iterations = it;
  return res;
}

double pairing_l1(const GridFunction& f, const GridFunction& g) {
  if (f.grid() != g.grid())
    throw Error(ErrorCode::GridMismatch, "pairing: grids differ");
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f.re()[i] * g.re()[i];
  return f.grid().dx() * s;
}

}  // namespace vexp
