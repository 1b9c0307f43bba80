#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "exponents.hpp"
#include "grid.hpp"
#include "mixed.hpp"

namespace vexp {

enum class DualMethod { Brute, Ascent };

// Search effort for the ascent path. The defaults suit standalone dual-norm
// queries; the nested searches inside the norming check drop to Lite so the
// inner solver stays affordable.
struct AscentBudget {
  int random_starts = 4;
  int refine_top = 2;
  int max_sweeps = 60;
  int improve_window = 25;
  static AscentBudget lite() { return {2, 1, 25, 12}; }
};

struct DualNormResult {
  double value = 0.0;
  std::optional<FuncSequence> maximizer;  // unit mixed norm; absent for zero g
  DualMethod method = DualMethod::Ascent;
  int starts = 0;
  int iterations = 0;  // objective evaluations spent
  double certificate_gap = std::nan("");  // vs closed form, when one exists
};

// sum over nu of integral f_nu g_nu dx; the shorter sequence is zero-padded
double pairing(const FuncSequence& f, const FuncSequence& g);

// Köthe dual norm sup{ sum_nu |<f_nu, g_nu>| : ||f|| <= 1 }, searched over
// nonnegative f against |g| (sign alignment loses nothing). Brute is an
// exhaustive 20-level product grid over every scalar degree of freedom,
// refused above 6 dof; Ascent is a multi-start hill climb on the unit
// sphere. Extra starting points can be passed in as hints; any feasible
// hint only ever raises the reported supremum.
DualNormResult kothe_dual_norm(const ExponentField& p, const ExponentField& q,
                               const FuncSequence& g, DualMethod method,
                               const SolveOptions& opts = {},
                               double improve_tol = 1e-4,
                               std::span<const FuncSequence> hints = {},
                               const AscentBudget& budget = {});

// dual norm of the tail g - P_N g
double dual_tail_norm(const ExponentField& p, const ExponentField& q,
                      const FuncSequence& g, int N, DualMethod method,
                      const SolveOptions& opts = {}, double improve_tol = 1e-4);

struct NormingReport {
  bool exact_zero = false;
  double sup_value = 0.0;  // best <|f|, g> over dual-unit-ball g
  double f_norm = 0.0;
  double ratio = 0.0;  // sup_value / f_norm
  int g_evaluations = 0;
};

// Finite-truncation norming check: searches the dual unit ball for g nearly
// attaining <f, g> = ||f||. The dual norms in the denominator are computed
// with f itself seeded into their search, which pins the ratio at or below
// 1 up to bisection noise; the informative side is how close it gets to 1.
NormingReport norming_check(const ExponentField& p, const ExponentField& q,
                            const FuncSequence& f, DualMethod method,
                            const SolveOptions& opts = {},
                            double improve_tol = 1e-4);

}  // namespace vexp
