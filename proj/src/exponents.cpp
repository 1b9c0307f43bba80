#include "exponents.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rng.hpp"

namespace vexp {

ExponentField::ExponentField(const Grid& grid, std::vector<double> values,
                             std::optional<double> class_floor)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != static_cast<std::size_t>(grid.n_points()))
    throw Error(ErrorCode::GridMismatch, "exponent table length != grid size");
  p_minus_ = kInfExponent;
  p_plus_ = -kInfExponent;
  inf_count_ = 0;
  for (double v : values_) {
    if (std::isnan(v) || v == -kInfExponent)
      throw Error(ErrorCode::SpecOutOfRange, "exponent value is not a number");
    if (v == kInfExponent) {
      ++inf_count_;
    } else if (class_floor && v < *class_floor) {
      std::ostringstream os;
      os << "exponent value " << v << " below class floor " << *class_floor;
      throw Error(ErrorCode::SpecOutOfRange, os.str());
    }
    p_minus_ = std::min(p_minus_, v);
    p_plus_ = std::max(p_plus_, v);
  }
}

ExponentField ExponentField::constant(const Grid& grid, double value,
                                      std::optional<double> class_floor) {
  return ExponentField(grid,
                       std::vector<double>(grid.n_points(), value),
                       class_floor);
}

ExponentField ExponentField::affine(const Grid& grid, double a, double b,
                                    double lo, double hi,
                                    std::optional<double> class_floor) {
  if (!(lo <= hi))
    throw Error(ErrorCode::BadBounds, "affine clip bounds out of order");
  std::vector<double> v(grid.n_points());
  for (int i = 0; i < grid.n_points(); ++i)
    v[i] = std::clamp(a + b * grid.x(i), lo, hi);
  return ExponentField(grid, std::move(v), class_floor);
}

ExponentField conjugate(const ExponentField& p) {
  if (!p.in_class_p())
    throw Error(ErrorCode::NotInClassP,
                "conjugate exponent needs values >= 1");
  std::vector<double> v(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double pi = p[i];
    if (pi == kInfExponent)
      v[i] = 1.0;
    else if (pi == 1.0)
      v[i] = kInfExponent;
    else
      v[i] = pi / (pi - 1.0);
  }
  return ExponentField(p.grid(), std::move(v), 1.0);
}

const char* normability_tag_name(NormabilityTag tag) {
  switch (tag) {
    case NormabilityTag::Cond1: return "COND1";
    case NormabilityTag::Cond2: return "COND2";
    case NormabilityTag::Cond3: return "COND3";
    case NormabilityTag::None: return "NONE";
  }
  return "NONE";
}

NormabilityCondition check_normability(const ExponentField& p,
                                       const ExponentField& q) {
  if (p.grid() != q.grid())
    throw Error(ErrorCode::GridMismatch, "p and q on different grids");
  if (!p.in_class_p() || !q.in_class_p())
    throw Error(ErrorCode::NotInClassP, "normability needs class-P exponents");

  auto inv = [](double v) { return v == kInfExponent ? 0.0 : 1.0 / v; };

  bool cond1 = true, cond3 = true;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(q[i] <= p[i])) cond1 = false;
    if (inv(p[i]) + inv(q[i]) > 1.0) cond3 = false;
  }
  if (cond1) return {NormabilityTag::Cond1, "q(x) <= p(x) at every point"};
  if (q.is_constant() && q.p_minus() >= 1.0 && p.p_minus() >= 1.0) {
    std::ostringstream os;
    os << "q constant = " << q.p_minus() << ", p_minus = " << p.p_minus();
    return {NormabilityTag::Cond2, os.str()};
  }
  if (cond3) return {NormabilityTag::Cond3, "1/p(x) + 1/q(x) <= 1 everywhere"};
  return {NormabilityTag::None, "all three norm conditions fail"};
}

CheckReport check_log_holder(const ExponentField& p, double c,
                             double p_infinity) {
  if (!(c > 0.0)) throw Error(ErrorCode::BadBounds, "log-Hoelder c must be > 0");
  if (!p.all_finite())
    throw Error(ErrorCode::SpecOutOfRange,
                "log-Hoelder check needs a finite-valued field");

  const Grid& g = p.grid();
  const int n = g.n_points();
  CheckReport rep;

  for (int i = 0; i < n; ++i) {
    const double bound = c / std::log(std::numbers::e + std::fabs(g.x(i)));
    const double margin = bound - std::fabs(p[i] - p_infinity);
    if (margin < rep.worst_decay_margin) {
      rep.worst_decay_margin = margin;
      rep.worst_decay_x = g.x(i);
    }
  }

  // stride 1 is the exact O(n^2) sweep; larger grids test a strided subset
  const int stride = n <= 4096 ? 1 : n / 4096;
  rep.pairs_subsampled = stride > 1;
  for (int i = 0; i < n; i += stride) {
    for (int j = i + 1; j < n; j += stride) {
      const double d = (j - i) * g.dx();
      const double bound = c / std::log(std::numbers::e + 1.0 / d);
      const double margin = bound - std::fabs(p[i] - p[j]);
      ++rep.pair_count;
      if (margin < rep.worst_local_margin) {
        rep.worst_local_margin = margin;
        rep.worst_local_x = g.x(i);
        rep.worst_local_y = g.x(j);
      }
    }
  }

  rep.pass = rep.worst_decay_margin >= 0.0 && rep.worst_local_margin >= 0.0;
  return rep;
}

namespace {

// C-infinity transition: 1 for t <= 0, 0 for t >= 1.
double smooth_step_down(double t) {
  if (t <= 0.0) return 1.0;
  if (t >= 1.0) return 0.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return b / (a + b);
}

}  // namespace

ExponentField random_log_holder(const Grid& grid, double lo, double hi,
                                int bandwidth, std::uint64_t seed) {
  if (!(lo > 1.0) || !(lo < hi) || hi == kInfExponent)
    throw Error(ErrorCode::BadBounds,
                "random exponent bounds need 1 < lo < hi < inf");
  if (bandwidth < 1)
    throw Error(ErrorCode::BadBounds, "bandwidth must be >= 1");

  RngStream rng(seed, "exponents/random_log_holder");
  const int n = grid.n_points();
  const double L = grid.half_length();
  const double w = std::numbers::pi / L;

  std::vector<double> raw(n, 0.0);
  for (int m = 1; m <= bandwidth; ++m) {
    const double am = rng.uniform(-1.0, 1.0);
    const double bm = rng.uniform(-1.0, 1.0);
    for (int i = 0; i < n; ++i) {
      const double x = grid.x(i);
      raw[i] += am * std::cos(m * w * x) + bm * std::sin(m * w * x);
    }
  }

  const auto [mn_it, mx_it] = std::minmax_element(raw.begin(), raw.end());
  const double mn = *mn_it, mx = *mx_it;
  const double mid = 0.5 * (lo + hi);
  std::vector<double> v(n, mid);
  if (mx > mn) {
    for (int i = 0; i < n; ++i)
      v[i] = lo + (hi - lo) * (raw[i] - mn) / (mx - mn);
  }

  // blend to the constant midpoint outside [-L/2, L/2]
  const double blend_start = 3.0 * L / 8.0;
  const double blend_end = L / 2.0;
  for (int i = 0; i < n; ++i) {
    const double ax = std::fabs(grid.x(i));
    const double t = (ax - blend_start) / (blend_end - blend_start);
    const double wgt = smooth_step_down(t);
    v[i] = mid + wgt * (v[i] - mid);
  }
  return ExponentField(grid, std::move(v), lo);
}

LogHolderConstant log_holder_constant(const ExponentField& p) {
  if (!p.all_finite())
    throw Error(ErrorCode::SpecOutOfRange,
                "log-Hoelder constant needs a finite-valued field");
  const Grid& g = p.grid();
  const int n = g.n_points();
  const double p_inf = p[0];  // x = -L sits in the constant boundary region

  double slope = 0.0;
  double vmin = p[0], vmax = p[0];
  for (int i = 0; i + 1 < n; ++i) {
    slope = std::max(slope, std::fabs(p[i + 1] - p[i]) / g.dx());
    vmin = std::min(vmin, p[i + 1]);
    vmax = std::max(vmax, p[i + 1]);
  }
  const double range = vmax - vmin;

  // |p(x)-p(y)| <= min(slope*d, range) for pair distance d = k*dx, so the
  // envelope evaluated at each discrete distance dominates every pair.
  double c_local = 0.0;
  for (int k = 1; k < n; ++k) {
    const double d = k * g.dx();
    const double env = std::min(slope * d, range);
    c_local = std::max(c_local, env * std::log(std::numbers::e + 1.0 / d));
  }

  double c_decay = 0.0;
  for (int i = 0; i < n; ++i)
    c_decay = std::max(c_decay, std::fabs(p[i] - p_inf) *
                                    std::log(std::numbers::e +
                                             std::fabs(g.x(i))));

  return {std::max({c_local, c_decay, 1e-12}), p_inf};
}

}  // namespace vexp
