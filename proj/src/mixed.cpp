#include "mixed.hpp"

#include <algorithm>
#include <cmath>

namespace vexp {

namespace {

constexpr double kInf = kInfExponent;

void check_inputs(const ExponentField& p, const ExponentField& q,
                  const FuncSequence& f) {
  if (p.grid() != q.grid() || p.grid() != f.grid())
    throw Error(ErrorCode::GridMismatch, "mixed modular: grids differ");
  if (!p.in_class_p0() || !q.in_class_p0())
    throw Error(ErrorCode::SpecOutOfRange,
                "mixed modular needs class-P0 exponents");
}

// rho_p( lambda^(-1/q(.)) * |f| * outer_scale ) for one term. The factor at
// q(x) = inf points is 1 (the lambda^(1/inf) = 1 convention); the broken
// variant used by the mutation smoke test applies lambda^(-1) there instead.
double term_modular(const ExponentField& p, const ExponentField& q,
                    std::span<const double> abs_f, double outer_scale,
                    double lambda, bool inf_as_unit) {
  const double dx = p.grid().dx();
  const double log_lambda = std::log(lambda);
  double integral = 0.0;
  double sup_part = 0.0;
  for (std::size_t i = 0; i < abs_f.size(); ++i) {
    double t = abs_f[i] * outer_scale;
    if (t != 0.0) {
      const double qi = q[i];
      if (qi == kInf) {
        if (!inf_as_unit) t *= 1.0 / lambda;
      } else {
        t *= std::exp(-log_lambda / qi);
      }
    }
    const double pi = p[i];
    if (pi == kInf) {
      sup_part = std::max(sup_part, t);
    } else {
      if (t > 0.0) {
        if (t > 1.0 && pi * std::log(t) > 709.0) return kInf;
        integral += std::pow(t, pi);
      }
      if (integral == kInf) return kInf;
    }
  }
  return dx * integral + sup_part;
}

// inf{ lambda > 0 : term_modular(lambda) <= 1 }, bracket midpoint.
// Returns +inf when no lambda is feasible and 0 when all are. warm_seed, if
// positive, is a nearby previous solution used as the bracketing start; the
// bracket is always re-verified, so it only saves doubling steps.
double term_infimum(const ExponentField& p, const ExponentField& q,
                    std::span<const double> abs_f, double outer_scale,
                    const SolveOptions& opts, double warm_seed = 0.0) {
  bool all_zero = true;
  bool mass_on_finite_q = false;
  for (std::size_t i = 0; i < abs_f.size(); ++i) {
    if (abs_f[i] != 0.0) {
      all_zero = false;
      if (q[i] != kInf) mass_on_finite_q = true;
    }
  }
  if (all_zero) return 0.0;

  if (opts.lambda_inf_as_unit && q.has_infinite()) {
    // the q = inf part does not scale with lambda; it alone decides
    // feasibility in the limit lambda -> inf
    double limit = 0.0;
    {
      const double dx = p.grid().dx();
      double integral = 0.0, sup_part = 0.0;
      for (std::size_t i = 0; i < abs_f.size(); ++i) {
        if (q[i] != kInf) continue;
        const double t = abs_f[i] * outer_scale;
        const double pi = p[i];
        if (pi == kInf)
          sup_part = std::max(sup_part, t);
        else if (t > 0.0)
          integral += (t > 1.0 && pi * std::log(t) > 709.0)
                          ? kInf
                          : std::pow(t, pi);
      }
      limit = dx * integral + sup_part;
    }
    if (!mass_on_finite_q) return limit <= 1.0 ? 0.0 : kInf;
    if (limit >= 1.0) return kInf;  // finite-q part stays strictly positive
  }

  auto feasible = [&](double lambda) {
    return term_modular(p, q, abs_f, outer_scale, lambda,
                        opts.lambda_inf_as_unit) <= 1.0;
  };

  const double seed =
      warm_seed > 0.0 && std::isfinite(warm_seed) ? warm_seed : 1.0;
  double lo, hi;
  if (feasible(seed)) {
    hi = seed;
    lo = seed;
    int steps = 0;
    do {
      lo *= 0.5;
      if (lo < 1e-300) return 0.0;  // feasible arbitrarily close to zero
      if (++steps > 200)
        throw Error(ErrorCode::BracketFailure, "inner bracket: 200 halvings");
    } while (feasible(lo));
  } else {
    lo = seed;
    hi = seed;
    int steps = 0;
    do {
      hi *= 2.0;
      if (++steps > 200)
        throw Error(ErrorCode::BracketFailure, "inner bracket: 200 doublings");
    } while (!feasible(hi));
  }

  while ((hi - lo) > opts.tol_inner * hi) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid))
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

MixedModularBreakdown modular_scaled(const ExponentField& p,
                                     const ExponentField& q,
                                     const std::vector<std::vector<double>>& a,
                                     double outer_scale,
                                     const SolveOptions& opts,
                                     std::vector<double>* warm = nullptr) {
  MixedModularBreakdown out;
  out.per_term.reserve(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double seed = warm && k < warm->size() ? (*warm)[k] : 0.0;
    const double v = term_infimum(p, q, a[k], outer_scale, opts, seed);
    if (warm && k < warm->size() && v > 0.0 && v != kInf) (*warm)[k] = v;
    out.per_term.push_back(v);
    out.total += v;
  }
  return out;
}

std::vector<std::vector<double>> abs_terms(const FuncSequence& f) {
  std::vector<std::vector<double>> a;
  a.reserve(f.size());
  for (const auto& t : f.terms()) a.push_back(t.abs_values());
  return a;
}

}  // namespace

MixedModularBreakdown mixed_modular_p1(const ExponentField& p,
                                       const ExponentField& q,
                                       const FuncSequence& f,
                                       const SolveOptions& opts) {
  check_inputs(p, q, f);
  return modular_scaled(p, q, abs_terms(f), 1.0, opts);
}

double mixed_modular_p1a(const ExponentField& p, const ExponentField& q,
                         const FuncSequence& f, const SolveOptions& opts) {
  check_inputs(p, q, f);
  if (q.has_infinite())
    throw Error(ErrorCode::QPlusInfinite,
                "closed-form modular needs q_plus < inf");

  // quotient exponent p(.)/q(.); inf/finite = inf
  std::vector<double> r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    r[i] = p[i] == kInf ? kInf : p[i] / q[i];
  const ExponentField quotient(p.grid(), std::move(r), std::nullopt);
  if (!quotient.in_class_p0())
    throw Error(ErrorCode::SpecOutOfRange, "p/q not in class P0");

  double total = 0.0;
  for (const auto& t : f.terms()) {
    std::vector<double> powered(t.size());
    bool overflow = false;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double v = t.abs_at(i);
      powered[i] = v == 0.0 ? 0.0 : std::pow(v, q[i]);
      if (!std::isfinite(powered[i])) {
        overflow = true;  // modular is legitimately +inf
        break;
      }
    }
    if (overflow) return kInf;
    total += luxemburg_norm(quotient, GridFunction(f.grid(), std::move(powered)),
                            opts.tol_inner)
                 .value;
  }
  return total;
}

NormResult mixed_norm(const ExponentField& p, const ExponentField& q,
                      const FuncSequence& f, const SolveOptions& opts) {
  check_inputs(p, q, f);
  NormResult res;
  res.tolerance = opts.tol_outer;
  if (f.is_zero()) return res;

  const auto a = abs_terms(f);
  for (const auto& term : a)
    for (double v : term)
      if (!std::isfinite(v))
        throw Error(ErrorCode::NonFinite, "norm input has non-finite entries");

  // per-term warm starts carry across outer bisection steps
  std::vector<double> warm(a.size(), 0.0);
  auto feasible = [&](double lambda) {
    return modular_scaled(p, q, a, 1.0 / lambda, opts, &warm).total <= 1.0;
  };

  double lo, hi;
  if (feasible(1.0)) {
    hi = 1.0;
    lo = 1.0;
    int steps = 0;
    do {
      lo *= 0.5;
      if (lo < 1e-300) {
        lo = 0.0;
        break;  // norm is numerically zero-adjacent; bisect down from hi
      }
      if (++steps > 200)
        throw Error(ErrorCode::BracketFailure, "outer bracket: 200 halvings");
    } while (feasible(lo));
  } else {
    lo = 1.0;
    hi = 1.0;
    int steps = 0;
    do {
      hi *= 2.0;
      if (++steps > 200)
        throw Error(ErrorCode::BracketFailure, "outer bracket: 200 doublings");
    } while (!feasible(hi));
  }

  int it = 0;
  while ((hi - lo) > opts.tol_outer * hi) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid))
      hi = mid;
    else
      lo = mid;
    ++it;
  }

  res.value = hi;
  res.modular_at_value = modular_scaled(p, q, a, 1.0 / hi, opts).total;
  res.bracket_lo = lo;
  res.bracket_hi = hi;
  res.iterations = it;
  return res;
}

FuncSequence project(int N, const FuncSequence& f) {
  if (N < 0) throw Error(ErrorCode::BadBounds, "projection index must be >= 0");
  FuncSequence out(f.grid());
  const std::size_t keep = std::min<std::size_t>(N, f.size());
  for (std::size_t i = 0; i < keep; ++i) out.push_back(f.term(i));
  return out;
}

FuncSequence tail_project(int N, const FuncSequence& f) {
  if (N < 0) throw Error(ErrorCode::BadBounds, "projection index must be >= 0");
  FuncSequence out(f.grid());
  for (std::size_t i = 0; i < f.size(); ++i)
    out.push_back(i < static_cast<std::size_t>(N) ? GridFunction::zero(f.grid())
                                                  : f.term(i));
  return out;
}

double lqminus_norm(const ExponentField& p, double q_minus,
                    const FuncSequence& f, double tol) {
  if (!(q_minus >= 1.0) || q_minus == kInf)
    throw Error(ErrorCode::BadBounds, "q_minus must be finite and >= 1");
  double s = 0.0;
  for (const auto& t : f.terms())
    s += std::pow(luxemburg_norm(p, t, tol).value, q_minus);
  return std::pow(s, 1.0 / q_minus);
}

}  // namespace vexp
