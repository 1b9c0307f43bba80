#pragma once

#include <vector>

#include "exponents.hpp"
#include "grid.hpp"
#include "mixed.hpp"

namespace vexp {

// Transition profile used for the spectral bumps. Both choices satisfy the
// same support conditions; after normalization either yields an exact
// discrete partition of unity, so the two give equivalent (not equal) norms.
enum class FilterShape { Exponential, Quintic };

// Fourier-side dyadic filter bank: one low-pass covering |m| <= 2 and bands
// nu = 1..nu_max, each supported in 2^(nu-1) <= |m| <= 2^(nu+1), with
// low_pass^2 + sum band_nu^2 = 1 at every mode below Nyquist. The Nyquist
// bin itself lies outside the bank and is annihilated by analyze/synthesize.
class FilterPair {
 public:
  FilterPair(const Grid& g, FilterShape s, int nu_max,
             std::vector<double> low_pass,
             std::vector<std::vector<double>> bands)
      : grid_(g),
        shape_(s),
        nu_max_(nu_max),
        low_pass_(std::move(low_pass)),
        bands_(std::move(bands)) {}

  const Grid& grid() const { return grid_; }
  FilterShape shape() const { return shape_; }
  int nu_max() const { return nu_max_; }
  const std::vector<double>& low_pass() const { return low_pass_; }
  const std::vector<double>& band(int nu) const { return bands_[nu - 1]; }
  // filter for sequence slot nu, slot 0 being the low-pass
  const std::vector<double>& slot(int nu) const {
    return nu == 0 ? low_pass_ : bands_[nu - 1];
  }

 private:
  Grid grid_;
  FilterShape shape_;
  int nu_max_;
  std::vector<double> low_pass_;            // DFT bin order
  std::vector<std::vector<double>> bands_;  // bands_[nu-1], DFT bin order
};

// normalize = false skips the division by the summed squares; it exists only
// so the verification harness can prove the partition test notices when the
// normalization is missing.
FilterPair build_filter_pair(const Grid& grid,
                             FilterShape shape = FilterShape::Exponential,
                             bool normalize = true);

// signed DFT mode index for bin k of an n-point transform
int signed_mode(int k, int n);

// Weighted band decomposition; slot nu holds 2^(nu s(.)) (phi_nu * f)
// together with the smoothness field the weights came from.
struct BesovDecomposition {
  FuncSequence bands;
  ExponentField s_field;
};

// Analysis operator: band-pass each dyadic block and weight by 2^(nu s(x)).
BesovDecomposition analyze(const GridFunction& f, const ExponentField& s,
                           const FilterPair& filters);

// Synthesis operator: unweight by 2^(-nu s(x)), band-pass again, sum over nu.
GridFunction synthesize(const BesovDecomposition& decomp,
                        const FilterPair& filters);

// Mixed norm of the analysis bands.
NormResult besov_norm(const GridFunction& f, const ExponentField& s,
                      const ExponentField& p, const ExponentField& q,
                      const FilterPair& filters, const SolveOptions& opts = {});

// One cyclic band-pass: inverse FFT of (filter x FFT(f)).
GridFunction apply_filter(const GridFunction& f,
                          const std::vector<double>& filter);

}  // namespace vexp
