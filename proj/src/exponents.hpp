#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "grid.hpp"

namespace vexp {

inline constexpr double kInfExponent = std::numeric_limits<double>::infinity();

// Variable exponent on a grid. Values are finite reals or the +infinity
// sentinel; min/max over the grid and the infinity mask are cached at
// construction. An optional class floor is enforced on the finite values
// (> 0 for class P0, >= 1 for class P); fields carrying smoothness weights
// use no floor at all.
class ExponentField {
 public:
  ExponentField(const Grid& grid, std::vector<double> values,
                std::optional<double> class_floor);

  static ExponentField constant(const Grid& grid, double value,
                                std::optional<double> class_floor = 1.0);
  // clamp(a + b*x, lo, hi) pointwise
  static ExponentField affine(const Grid& grid, double a, double b, double lo,
                              double hi,
                              std::optional<double> class_floor = 1.0);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }

  double p_minus() const { return p_minus_; }
  double p_plus() const { return p_plus_; }
  bool has_infinite() const { return inf_count_ > 0; }
  bool is_infinite_at(std::size_t i) const { return values_[i] == kInfExponent; }
  std::size_t infinite_count() const { return inf_count_; }
  bool is_constant() const { return p_minus_ == p_plus_; }
  bool all_finite() const { return inf_count_ == 0; }
  bool in_class_p() const { return p_minus_ >= 1.0; }
  bool in_class_p0() const { return p_minus_ > 0.0; }

 private:
  Grid grid_;
  std::vector<double> values_;
  double p_minus_;
  double p_plus_;
  std::size_t inf_count_;
};

// Pointwise conjugate: 1/p + 1/p' = 1, with 1 <-> infinity at the endpoints.
// Requires class P.
ExponentField conjugate(const ExponentField& p);

enum class NormabilityTag { None = 0, Cond1 = 1, Cond2 = 2, Cond3 = 3 };

struct NormabilityCondition {
  NormabilityTag tag = NormabilityTag::None;
  std::string witness;
};

// First of the three norm conditions that holds (checked in order 1, 2, 3):
//   1. q(x) <= p(x) everywhere,
//   2. p_minus >= 1 and q constant,
//   3. 1/p(x) + 1/q(x) <= 1 everywhere (1/inf = 0).
NormabilityCondition check_normability(const ExponentField& p,
                                       const ExponentField& q);

const char* normability_tag_name(NormabilityTag tag);

// Result of the two log-Hoelder checks. Margins are (bound - actual); the
// worst one is negative exactly when the check fails.
struct CheckReport {
  bool pass = true;
  double worst_decay_margin = std::numeric_limits<double>::infinity();
  double worst_decay_x = 0.0;
  double worst_local_margin = std::numeric_limits<double>::infinity();
  double worst_local_x = 0.0;
  double worst_local_y = 0.0;
  std::size_t pair_count = 0;
  bool pairs_subsampled = false;
};

// Verifies |p(x) - p_inf| <= c / log(e + |x|) at every grid point and
// |p(x) - p(y)| <= c / log(e + 1/|x-y|) over point pairs. Pairs are exact
// O(n^2) for grids up to 4096 points and strided above that (the report
// records the pair count actually tested).
CheckReport check_log_holder(const ExponentField& p, double c,
                             double p_infinity);

// Smooth random exponent field: truncated Fourier series rescaled into
// [lo, hi], blended to the constant (lo+hi)/2 outside [-L/2, L/2].
// Deterministic in seed.
ExponentField random_log_holder(const Grid& grid, double lo, double hi,
                                int bandwidth, std::uint64_t seed);

// The constant the generator's output is guaranteed to satisfy both
// log-Hoelder conditions with. Derived from the field itself: the measured
// maximum slope bounds |p(x)-p(y)| by min(slope*|x-y|, range), and that
// envelope is maximized over the discrete distances; the decay constant is
// read off directly with p_inf taken from the (constant) boundary region.
struct LogHolderConstant {
  double c;
  double p_infinity;
};
LogHolderConstant log_holder_constant(const ExponentField& p);

}  // namespace vexp
