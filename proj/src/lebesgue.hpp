#pragma once

#include <span>

#include "exponents.hpp"
#include "grid.hpp"

namespace vexp {

// Norm value plus the solver diagnostics: the final bisection bracket, the
// modular evaluated at the returned value, and the iteration count.
struct NormResult {
  double value = 0.0;
  double modular_at_value = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  int iterations = 0;
  double tolerance = 0.0;
};

// rho(f) = dx * sum_{p finite} |f_i|^{p_i} + max_{p infinite} |f_i|.
// May legitimately return +infinity for large |f| and large exponents.
double modular_lp(const ExponentField& p, const GridFunction& f);

// Same modular evaluated on |f| * scale without materializing the scaled
// function; this is the hot path of every bisection.
double modular_lp_scaled(const ExponentField& p, std::span<const double> abs_f,
                         double scale);

// Luxemburg norm inf{lambda > 0 : rho(f/lambda) <= 1} by bracketing and
// bisection to relative width tol. The returned value is the feasible
// bracket endpoint, so rho(f/value) <= 1 holds for the value as reported.
NormResult luxemburg_norm(const ExponentField& p, const GridFunction& f,
                          double tol = 1e-10);

// integral of f*g dx (real data)
double pairing_l1(const GridFunction& f, const GridFunction& g);

}  // namespace vexp
