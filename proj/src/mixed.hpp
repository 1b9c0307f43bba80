#pragma once

#include <vector>

#include "exponents.hpp"
#include "grid.hpp"
#include "lebesgue.hpp"

namespace vexp {

// Solver knobs for the nested bisections. The inner (per-term) tolerance is
// one order tighter than the outer since the outer error is dominated by it.
// lambda_inf_as_unit realizes the convention lambda^(1/inf) = 1 at points
// with q(x) = inf; it exists as a switch only so the verification harness
// can prove its own tests notice when the convention is broken.
struct SolveOptions {
  double tol_inner = 1e-10;
  double tol_outer = 1e-8;
  bool lambda_inf_as_unit = true;
};

// Per-term infima lambda_nu of the sequence modular and their sum.
struct MixedModularBreakdown {
  std::vector<double> per_term;
  double total = 0.0;
};

// Sequence modular: sum over nu of
//   inf{ lambda > 0 : rho_p(lambda^(-1/q(.)) |f_nu|) <= 1 },
// each infimum solved by bisection in lambda and reported as the final
// bracket midpoint. Terms whose infimum has an empty feasible set (possible
// when q(x) = inf carries too much mass) contribute +infinity.
MixedModularBreakdown mixed_modular_p1(const ExponentField& p,
                                       const ExponentField& q,
                                       const FuncSequence& f,
                                       const SolveOptions& opts = {});

// Closed-form route, valid for q_plus < inf:
//   sum over nu of || |f_nu|^q(.) ||_{L^{p(.)/q(.)}}.
double mixed_modular_p1a(const ExponentField& p, const ExponentField& q,
                         const FuncSequence& f, const SolveOptions& opts = {});

// Outer Luxemburg-type norm inf{lambda : modular(f/lambda) <= 1} over the
// sequence modular above.
NormResult mixed_norm(const ExponentField& p, const ExponentField& q,
                      const FuncSequence& f, const SolveOptions& opts = {});

// Truncation P_N: keep terms 1..N, drop the rest.
FuncSequence project(int N, const FuncSequence& f);
// Complement g - P_N g: zero out terms 1..N, keep the tail.
FuncSequence tail_project(int N, const FuncSequence& f);

// Comparison norm (sum over nu of ||f_nu||_{p(.)}^{q_minus})^(1/q_minus).
double lqminus_norm(const ExponentField& p, double q_minus,
                    const FuncSequence& f, double tol = 1e-10);

}  // namespace vexp
