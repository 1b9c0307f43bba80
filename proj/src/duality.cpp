#include "duality.hpp"

#include <algorithm>
#include <cstring>
#include <limits>

#include "lebesgue.hpp"
#include "rng.hpp"

namespace vexp {

namespace {

constexpr double kInf = kInfExponent;

void check_dual_inputs(const ExponentField& p, const ExponentField& q,
                       const FuncSequence& g) {
  if (p.grid() != q.grid() || p.grid() != g.grid())
    throw Error(ErrorCode::GridMismatch, "dual norm: grids differ");
  if (check_normability(p, q).tag == NormabilityTag::None)
    throw Error(ErrorCode::NotNormable,
                "dual norm needs a normable (p, q) pair");
}

double dot_weights(const FuncSequence& h,
                   const std::vector<std::vector<double>>& w, double dx) {
  double s = 0.0;
  const std::size_t n = std::min(h.size(), w.size());
  for (std::size_t nu = 0; nu < n; ++nu) {
    const auto re = h.term(nu).re();
    for (std::size_t i = 0; i < re.size(); ++i) s += re[i] * w[nu][i];
  }
  return dx * s;
}

std::vector<std::vector<double>> abs_weights(const FuncSequence& g) {
  std::vector<std::vector<double>> w;
  w.reserve(g.size());
  for (const auto& t : g.terms()) w.push_back(t.abs_values());
  return w;
}

std::uint64_t instance_hash(const ExponentField& p, const ExponentField& q,
                            const FuncSequence& g) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    h ^= bits;
    h *= 1099511628211ull;
  };
  for (double v : p.values()) mix(v);
  for (double v : q.values()) mix(v);
  for (const auto& t : g.terms())
    for (std::size_t i = 0; i < t.size(); ++i) mix(t.abs_at(i));
  return h;
}

// nonnegative candidate builders ------------------------------------------

FuncSequence from_matrix(const Grid& grid,
                         const std::vector<std::vector<double>>& m) {
  FuncSequence out(grid);
  for (const auto& row : m) out.push_back(GridFunction(grid, row));
  return out;
}

// pointwise w^(1/(p-1)), the classical duality-map profile
std::vector<std::vector<double>> dual_map_profile(
    const ExponentField& p, const std::vector<std::vector<double>>& w) {
  double wmax = 0.0;
  for (const auto& row : w)
    for (double v : row) wmax = std::max(wmax, v);
  if (wmax == 0.0) return w;
  std::vector<std::vector<double>> out(w.size());
  for (std::size_t nu = 0; nu < w.size(); ++nu) {
    out[nu].resize(w[nu].size(), 0.0);
    for (std::size_t i = 0; i < w[nu].size(); ++i) {
      const double v = w[nu][i] / wmax;
      if (v <= 0.0) continue;
      const double pi = p[i];
      double e;
      if (pi == kInf)
        e = 0.0;
      else
        e = 1.0 / std::clamp(pi - 1.0, 1.0 / 60.0, 60.0);
      out[nu][i] = std::pow(v, std::clamp(e, 0.0, 60.0));
    }
  }
  return out;
}

double mean_finite(const ExponentField& q) {
  double s = 0.0;
  std::size_t cnt = 0;
  for (double v : q.values())
    if (v != kInf) {
      s += v;
      ++cnt;
    }
  return cnt == 0 ? kInf : s / static_cast<double>(cnt);
}

struct Workspace {
  const ExponentField& p;
  const ExponentField& q;
  SolveOptions opts;
  std::vector<std::vector<double>> w;  // |g|
  double dx;
  int evals = 0;

  // J(h / ||h||); returns the normalized candidate through `unit`
  double rate(const FuncSequence& h, FuncSequence* unit) {
    ++evals;
    const double nrm = mixed_norm(p, q, h, opts).value;
    if (!(nrm > 0.0)) return 0.0;
    const double val = dot_weights(h, w, dx) / nrm;
    if (unit) *unit = scaled(h, 1.0 / nrm);
    return val;
  }
};

FuncSequence clamp_nonneg(const FuncSequence& h) {
  FuncSequence out(h.grid());
  for (const auto& t : h.terms()) {
    std::vector<double> v(t.re().begin(), t.re().end());
    for (double& x : v) x = std::max(x, 0.0);
    out.push_back(GridFunction(h.grid(), std::move(v)));
  }
  return out;
}

FuncSequence pow_pointwise(const FuncSequence& h, double gamma) {
  FuncSequence out(h.grid());
  for (const auto& t : h.terms()) {
    std::vector<double> v(t.size());
    for (std::size_t i = 0; i < t.size(); ++i)
      v[i] = t.re()[i] > 0.0 ? std::pow(t.re()[i], gamma) : 0.0;
    out.push_back(GridFunction(h.grid(), std::move(v)));
  }
  return out;
}

FuncSequence scale_term(const FuncSequence& h, std::size_t nu, double c) {
  FuncSequence out(h.grid());
  for (std::size_t k = 0; k < h.size(); ++k)
    out.push_back(k == nu ? scaled(h.term(k), c) : h.term(k));
  return out;
}

// greedy hill climb on the unit sphere; x enters normalized and stays so
double refine(Workspace& ws, FuncSequence& x, double j0,
              const FuncSequence& direction, double improve_tol,
              const AscentBudget& budget, int dof) {
  double best = j0;
  double eta = 0.5;
  std::vector<double> history{best};

  for (int sweep = 0; sweep < budget.max_sweeps && eta > 1e-4; ++sweep) {
    FuncSequence cand_best(x.grid());
    double val_best = best;

    auto consider = [&](const FuncSequence& h) {
      FuncSequence unit(h.grid());
      const double v = ws.rate(h, &unit);
      if (v > val_best) {
        val_best = v;
        cand_best = std::move(unit);
      }
    };

    consider(add(x, scaled(direction, eta)));
    consider(pow_pointwise(x, 1.0 + 0.5 * eta));
    consider(pow_pointwise(x, 1.0 / (1.0 + 0.5 * eta)));
    for (std::size_t nu = 0; nu < x.size(); ++nu) {
      consider(scale_term(x, nu, 1.0 + eta));
      consider(scale_term(x, nu, 1.0 / (1.0 + eta)));
    }
    if (dof <= 24) {
      // per-coordinate bumps, affordable only on small instances
      auto with_coord = [&](std::size_t nu, std::size_t i, double value) {
        FuncSequence out(x.grid());
        for (std::size_t k = 0; k < x.size(); ++k) {
          if (k != nu) {
            out.push_back(x.term(k));
            continue;
          }
          std::vector<double> v(x.term(k).re().begin(), x.term(k).re().end());
          v[i] = std::max(value, 0.0);
          out.push_back(GridFunction(x.grid(), std::move(v)));
        }
        return out;
      };
      for (std::size_t nu = 0; nu < x.size(); ++nu) {
        const double step = eta * std::max(x.term(nu).max_abs(), 0.1);
        for (std::size_t i = 0; i < x.term(nu).size(); ++i) {
          if (ws.w[nu][i] == 0.0) continue;
          const double cur = x.term(nu).re()[i];
          consider(with_coord(nu, i, cur + step));
          consider(with_coord(nu, i, cur - step));
        }
      }
    }

    if (val_best > best * (1.0 + 1e-12)) {
      best = val_best;
      x = std::move(cand_best);
    } else {
      eta *= 0.5;
    }

    history.push_back(best);
    const int win = budget.improve_window;
    if (static_cast<int>(history.size()) > win) {
      const double then = history[history.size() - 1 - win];
      if (best - then < improve_tol * std::max(best, 1e-300)) break;
    }
  }
  return best;
}

// closed-form dual norm for constant exponents, used as the certificate
double constant_exponent_oracle(const ExponentField& p, const ExponentField& q,
                                const std::vector<std::vector<double>>& w,
                                double dx) {
  const double p0 = p.p_minus();
  const double q0 = q.p_minus();
  const double pc = p0 == kInf ? 1.0 : (p0 == 1.0 ? kInf : p0 / (p0 - 1.0));
  const double qc = q0 == kInf ? 1.0 : (q0 == 1.0 ? kInf : q0 / (q0 - 1.0));

  auto lp_norm = [&](const std::vector<double>& v) {
    if (pc == kInf) {
      double m = 0.0;
      for (double x : v) m = std::max(m, x);
      return m;
    }
    double s = 0.0;
    for (double x : v) s += std::pow(x, pc);
    return std::pow(dx * s, 1.0 / pc);
  };

  if (qc == kInf) {
    double m = 0.0;
    for (const auto& row : w) m = std::max(m, lp_norm(row));
    return m;
  }
  double s = 0.0;
  for (const auto& row : w) s += std::pow(lp_norm(row), qc);
  return std::pow(s, 1.0 / qc);
}

DualNormResult brute_force(const ExponentField& p, const ExponentField& q,
                           const FuncSequence& g, const SolveOptions& opts) {
  const int n = g.grid().n_points();
  const int terms = static_cast<int>(g.size());
  const long dof = static_cast<long>(n) * terms;
  if (dof > 6)
    throw Error(ErrorCode::TooLargeForBrute,
                "brute search limited to 6 degrees of freedom");

  Workspace ws{p, q, opts, abs_weights(g), g.grid().dx()};
  // relaxed bisection: the comparison band is percent-level
  ws.opts.tol_inner = std::max(ws.opts.tol_inner, 1e-5);
  ws.opts.tol_outer = std::max(ws.opts.tol_outer, 1e-4);

  constexpr int kLevels = 20;
  std::vector<int> idx(dof, 0);
  DualNormResult res;
  res.method = DualMethod::Brute;
  res.starts = 1;
  res.certificate_gap = 0.0;

  std::vector<std::vector<double>> m(terms, std::vector<double>(n, 0.0));
  while (true) {
    bool nonzero = false;
    for (long d = 0; d < dof; ++d) {
      const double v = static_cast<double>(idx[d]) / (kLevels - 1);
      m[d / n][d % n] = v;
      if (v != 0.0) nonzero = true;
    }
    if (nonzero) {
      FuncSequence h = from_matrix(g.grid(), m);
      if (dot_weights(h, ws.w, ws.dx) > 0.0) {
        FuncSequence unit(g.grid());
        const double v = ws.rate(h, &unit);
        if (v > res.value) {
          res.value = v;
          res.maximizer = std::move(unit);
        }
      }
    }
    long d = 0;
    while (d < dof && ++idx[d] == kLevels) idx[d++] = 0;
    if (d == dof) break;
  }
  res.iterations = ws.evals;
  return res;
}

}  // namespace

double pairing(const FuncSequence& f, const FuncSequence& g) {
  if (f.grid() != g.grid())
    throw Error(ErrorCode::GridMismatch, "pairing: grids differ");
  const std::size_t n = std::min(f.size(), g.size());
  double s = 0.0;
  for (std::size_t nu = 0; nu < n; ++nu)
    s += pairing_l1(f.term(nu), g.term(nu));
  return s;
}

DualNormResult kothe_dual_norm(const ExponentField& p, const ExponentField& q,
                               const FuncSequence& g, DualMethod method,
                               const SolveOptions& opts, double improve_tol,
                               std::span<const FuncSequence> hints,
                               const AscentBudget& budget) {
  check_dual_inputs(p, q, g);
  if (g.is_zero() || g.size() == 0) {
    DualNormResult res;
    res.method = method;
    res.certificate_gap = 0.0;
    return res;
  }
  if (method == DualMethod::Brute) return brute_force(p, q, g, opts);

  Workspace ws{p, q, opts, abs_weights(g), g.grid().dx()};
  const Grid& grid = g.grid();
  const int dof = grid.n_points() * static_cast<int>(g.size());

  // structured starts: |g| itself, the pointwise duality-map profile, and
  // the profile rebalanced across terms the way constant exponents would
  std::vector<FuncSequence> starts;
  starts.push_back(from_matrix(grid, ws.w));
  const auto profile = dual_map_profile(p, ws.w);
  starts.push_back(from_matrix(grid, profile));
  {
    FuncSequence balanced(grid);
    const double qbar = std::clamp(
        mean_finite(q) == kInf ? 1.05 : mean_finite(q), 1.05, 50.0);
    const double e = 1.0 / (qbar - 1.0 + 1e-9);
    for (std::size_t nu = 0; nu < profile.size(); ++nu) {
      GridFunction u(grid, profile[nu]);
      const double un = luxemburg_norm(p, u, ws.opts.tol_inner).value;
      if (un == 0.0) {
        balanced.push_back(GridFunction::zero(grid));
        continue;
      }
      double a = 0.0;
      for (std::size_t i = 0; i < profile[nu].size(); ++i)
        a += profile[nu][i] * ws.w[nu][i];
      a *= ws.dx / un;
      balanced.push_back(scaled(u, std::pow(a, std::clamp(e, 0.0, 60.0)) / un));
    }
    starts.push_back(std::move(balanced));
  }

  RngStream rng(instance_hash(p, q, g), "duality/ascent_starts");
  for (int r = 0; r < budget.random_starts; ++r) {
    std::vector<std::vector<double>> m(g.size());
    for (std::size_t nu = 0; nu < g.size(); ++nu) {
      m[nu].resize(ws.w[nu].size(), 0.0);
      const double e = rng.uniform(0.25, 2.5);
      for (std::size_t i = 0; i < m[nu].size(); ++i)
        if (ws.w[nu][i] > 0.0)
          m[nu][i] = (0.25 + rng.uniform()) * std::pow(ws.w[nu][i], e);
    }
    starts.push_back(from_matrix(grid, m));
  }
  for (const auto& h : hints) {
    if (h.grid() != grid || h.size() == 0) continue;
    FuncSequence trimmed(grid);
    for (std::size_t nu = 0; nu < std::min(h.size(), g.size()); ++nu)
      trimmed.push_back(abs(h.term(nu)));
    starts.push_back(std::move(trimmed));
  }

  DualNormResult res;
  res.method = DualMethod::Ascent;
  res.starts = static_cast<int>(starts.size());

  // rank the starts, then spend the refinement budget on the best few
  std::vector<std::pair<double, FuncSequence>> ranked;
  for (auto& h : starts) {
    FuncSequence unit(grid);
    const double v = ws.rate(h, &unit);
    if (v > 0.0) ranked.emplace_back(v, std::move(unit));
  }
  std::sort(ranked.begin(), ranked.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });

  FuncSequence w_unit(grid);
  {
    FuncSequence w_seq = from_matrix(grid, ws.w);
    const double wn = mixed_norm(p, q, w_seq, ws.opts).value;
    w_unit = wn > 0.0 ? scaled(w_seq, 1.0 / wn) : std::move(w_seq);
  }

  const int refine_count =
      std::min<int>(budget.refine_top, static_cast<int>(ranked.size()));
  for (int k = 0; k < refine_count; ++k) {
    FuncSequence x = ranked[k].second;
    const double v =
        refine(ws, x, ranked[k].first, w_unit, improve_tol, budget, dof);
    if (v > res.value) {
      res.value = v;
      res.maximizer = std::move(x);
    }
  }
  for (const auto& [v, h] : ranked) {
    if (v > res.value) {
      res.value = v;
      res.maximizer = h;
    }
  }
  if (!res.maximizer && !ranked.empty()) res.maximizer = ranked.front().second;
  res.iterations = ws.evals;

  if (p.is_constant() && q.is_constant() && p.all_finite() && q.all_finite()) {
    const double oracle = constant_exponent_oracle(p, q, ws.w, ws.dx);
    if (oracle > 0.0)
      res.certificate_gap = std::fabs(res.value - oracle) / oracle;
  }
  return res;
}

double dual_tail_norm(const ExponentField& p, const ExponentField& q,
                      const FuncSequence& g, int N, DualMethod method,
                      const SolveOptions& opts, double improve_tol) {
  return kothe_dual_norm(p, q, tail_project(N, g), method, opts, improve_tol)
      .value;
}

NormingReport norming_check(const ExponentField& p, const ExponentField& q,
                            const FuncSequence& f, DualMethod method,
                            const SolveOptions& opts, double improve_tol) {
  check_dual_inputs(p, q, f);
  NormingReport rep;
  if (f.is_zero() || f.size() == 0) {
    rep.exact_zero = true;
    return rep;
  }

  rep.f_norm = mixed_norm(p, q, f, opts).value;
  const Grid& grid = f.grid();
  FuncSequence fa(grid);
  for (const auto& t : f.terms()) fa.push_back(abs(t));
  const FuncSequence f_unit = scaled(fa, 1.0 / rep.f_norm);
  const std::vector<FuncSequence> hints{f_unit};

  const auto wa = abs_weights(fa);
  const AscentBudget lite = AscentBudget::lite();

  // seeding f itself into every dual-norm run makes <f, g> <= ||f|| ||g||'
  // hold by construction, so the ratio can only fall short of 1, not spill
  // over it
  auto score = [&](const FuncSequence& gc, int* evals) -> double {
    const auto dn = kothe_dual_norm(p, q, gc, method, opts, improve_tol,
                                    std::span(hints), lite);
    if (evals) *evals += dn.iterations;
    if (!(dn.value > 0.0)) return 0.0;
    return pairing(fa, gc) / dn.value;
  };

  std::vector<FuncSequence> candidates;
  candidates.push_back(fa);
  // classical norming shape: g ~ |f|^(p(x)-1), optionally rebalanced across
  // terms with the constant-exponent weights ||f_nu||^(qbar-1)
  const auto base = dual_map_profile(conjugate(p), wa);
  candidates.push_back(from_matrix(grid, base));
  {
    FuncSequence balanced(grid);
    const double qbar = std::clamp(
        mean_finite(q) == kInf ? 1.05 : mean_finite(q), 1.05, 50.0);
    for (std::size_t nu = 0; nu < base.size(); ++nu) {
      const double tn =
          luxemburg_norm(p, fa.term(nu), opts.tol_inner).value;
      balanced.push_back(scaled(GridFunction(grid, base[nu]),
                                std::pow(tn, qbar - 1.0)));
    }
    candidates.push_back(std::move(balanced));
  }
  RngStream rng(instance_hash(p, q, f), "duality/norming_starts");
  for (int r = 0; r < 2; ++r) {
    std::vector<std::vector<double>> m(wa.size());
    for (std::size_t nu = 0; nu < wa.size(); ++nu) {
      m[nu].resize(wa[nu].size(), 0.0);
      const double e = rng.uniform(0.5, 2.0);
      for (std::size_t i = 0; i < m[nu].size(); ++i)
        if (wa[nu][i] > 0.0)
          m[nu][i] = (0.25 + rng.uniform()) * std::pow(wa[nu][i], e);
    }
    candidates.push_back(from_matrix(grid, m));
  }

  double best = 0.0;
  FuncSequence g_best(grid);
  for (const auto& gc : candidates) {
    const double v = score(gc, &rep.g_evaluations);
    if (v > best) {
      best = v;
      g_best = gc;
    }
  }

  // a short greedy pass over the best candidate; each step costs one full
  // dual-norm evaluation, so the budget is kept small
  double eta = 0.5;
  for (int sweep = 0; sweep < 6 && eta > 1e-3; ++sweep) {
    bool improved = false;
    for (const auto& cand :
         {pow_pointwise(g_best, 1.0 + 0.5 * eta),
          pow_pointwise(g_best, 1.0 / (1.0 + 0.5 * eta)),
          clamp_nonneg(add(g_best, scaled(fa, eta / std::max(rep.f_norm, 1e-12))))}) {
      const double v = score(cand, &rep.g_evaluations);
      if (v > best * (1.0 + 1e-10)) {
        best = v;
        g_best = cand;
        improved = true;
        break;
      }
    }
    if (!improved) eta *= 0.5;
  }

  rep.sup_value = best;
  rep.ratio = best / rep.f_norm;
  return rep;
}

}  // namespace vexp
