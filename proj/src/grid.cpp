#include "grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rng.hpp"

namespace vexp {

namespace {

bool power_of_two(int n) { return n >= 2 && (n & (n - 1)) == 0; }

void check_finite(std::span<const double> v) {
  for (double x : v) {
    if (!std::isfinite(x))
      throw Error(ErrorCode::NonFinite, "grid function has non-finite entry");
  }
}

}  // namespace

Grid::Grid(double half_length, int n_points)
    : half_length_(half_length), n_(n_points) {
  if (!(half_length > 0.0) || !std::isfinite(half_length))
    throw Error(ErrorCode::Config, "grid half-length must be positive");
  if (!power_of_two(n_points))
    throw Error(ErrorCode::Config, "grid size must be a power of two >= 2");
  dx_ = 2.0 * half_length_ / n_;
}

GridFunction::GridFunction(const Grid& grid, std::vector<double> re)
    : grid_(grid), re_(std::move(re)) {
  if (re_.size() != static_cast<std::size_t>(grid.n_points()))
    throw Error(ErrorCode::GridMismatch, "value count does not match grid");
  check_finite(re_);
}

GridFunction::GridFunction(const Grid& grid, std::vector<double> re,
                           std::vector<double> im)
    : grid_(grid), re_(std::move(re)), im_(std::move(im)) {
  if (re_.size() != static_cast<std::size_t>(grid.n_points()) ||
      (!im_.empty() && im_.size() != re_.size()))
    throw Error(ErrorCode::GridMismatch, "value count does not match grid");
  check_finite(re_);
  check_finite(im_);
  // drop an all-zero imaginary part so the real fast path applies
  if (!im_.empty() &&
      std::all_of(im_.begin(), im_.end(), [](double v) { return v == 0.0; }))
    im_.clear();
}

GridFunction GridFunction::zero(const Grid& grid) {
  return GridFunction(grid, std::vector<double>(grid.n_points(), 0.0));
}

double GridFunction::abs_at(std::size_t i) const {
  if (im_.empty()) return std::fabs(re_[i]);
  return std::hypot(re_[i], im_[i]);
}

std::vector<double> GridFunction::abs_values() const {
  std::vector<double> a(re_.size());
  for (std::size_t i = 0; i < re_.size(); ++i) a[i] = abs_at(i);
  return a;
}

double GridFunction::max_abs() const {
  double m = 0.0;
  for (std::size_t i = 0; i < re_.size(); ++i) m = std::max(m, abs_at(i));
  return m;
}

bool GridFunction::is_zero() const { return max_abs() == 0.0; }

namespace {

void require_same_grid(const GridFunction& a, const GridFunction& b) {
  if (a.grid() != b.grid())
    throw Error(ErrorCode::GridMismatch, "grid functions on different grids");
}

}  // namespace

GridFunction add(const GridFunction& a, const GridFunction& b) {
  require_same_grid(a, b);
  std::vector<double> re(a.size()), im;
  for (std::size_t i = 0; i < a.size(); ++i) re[i] = a.re()[i] + b.re()[i];
  if (!a.is_real() || !b.is_real()) {
    im.assign(a.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
      im[i] = (a.is_real() ? 0.0 : a.im()[i]) +
              (b.is_real() ? 0.0 : b.im()[i]);
  }
  return GridFunction(a.grid(), std::move(re), std::move(im));
}

GridFunction sub(const GridFunction& a, const GridFunction& b) {
  return add(a, scaled(b, -1.0));
}

GridFunction scaled(const GridFunction& f, double c) {
  std::vector<double> re(f.size()), im;
  for (std::size_t i = 0; i < f.size(); ++i) re[i] = c * f.re()[i];
  if (!f.is_real()) {
    im.resize(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) im[i] = c * f.im()[i];
  }
  return GridFunction(f.grid(), std::move(re), std::move(im));
}

GridFunction abs(const GridFunction& f) {
  return GridFunction(f.grid(), f.abs_values());
}

GridFunction pointwise_mul(const GridFunction& a, const GridFunction& b) {
  require_same_grid(a, b);
  if (!a.is_real() || !b.is_real())
    throw Error(ErrorCode::NonFinite, "pointwise product expects real data");
  std::vector<double> re(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) re[i] = a.re()[i] * b.re()[i];
  return GridFunction(a.grid(), std::move(re));
}

double integrate(const GridFunction& f) {
  double s = 0.0;
  for (double v : f.re()) s += v;
  return f.grid().dx() * s;
}

FuncSequence::FuncSequence(const Grid& grid, std::vector<GridFunction> terms)
    : grid_(grid), terms_(std::move(terms)) {
  for (const auto& t : terms_)
    if (t.grid() != grid_)
      throw Error(ErrorCode::GridMismatch, "sequence terms on different grids");
}

void FuncSequence::push_back(GridFunction f) {
  if (f.grid() != grid_)
    throw Error(ErrorCode::GridMismatch, "sequence terms on different grids");
  terms_.push_back(std::move(f));
}

bool FuncSequence::is_zero() const {
  for (const auto& t : terms_)
    if (!t.is_zero()) return false;
  return true;
}

FuncSequence scaled(const FuncSequence& f, double c) {
  FuncSequence out(f.grid());
  for (const auto& t : f.terms()) out.push_back(scaled(t, c));
  return out;
}

FuncSequence add(const FuncSequence& a, const FuncSequence& b) {
  if (a.grid() != b.grid())
    throw Error(ErrorCode::GridMismatch, "sequences on different grids");
  FuncSequence out(a.grid());
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= a.size())
      out.push_back(b.term(i));
    else if (i >= b.size())
      out.push_back(a.term(i));
    else
      out.push_back(add(a.term(i), b.term(i)));
  }
  return out;
}

GridFunction random_function(const Grid& grid, RandomKind kind,
                             double amplitude, std::uint64_t seed) {
  if (!(amplitude > 0.0))
    throw Error(ErrorCode::BadBounds, "amplitude must be positive");
  RngStream rng(seed, "domain/random_function");
  const int n = grid.n_points();
  std::vector<double> v(n, 0.0);

  switch (kind) {
    case RandomKind::Smooth: {
      const int max_mode = std::max(1, n / 4);
      const int modes = std::min(max_mode, 16);
      const double w = std::numbers::pi / grid.half_length();
      std::vector<double> a(modes + 1), b(modes + 1);
      for (int m = 1; m <= modes; ++m) {
        a[m] = rng.uniform(-1.0, 1.0) / m;
        b[m] = rng.uniform(-1.0, 1.0) / m;
      }
      const double a0 = rng.uniform(-0.5, 0.5);
      for (int i = 0; i < n; ++i) {
        double x = grid.x(i), s = a0;
        for (int m = 1; m <= modes; ++m)
          s += a[m] * std::cos(m * w * x) + b[m] * std::sin(m * w * x);
        v[i] = s;
      }
      break;
    }
    case RandomKind::Bump: {
      const double L = grid.half_length();
      const double center = rng.uniform(-L / 2, L / 2);
      const double width = rng.uniform(L / 8, L / 4);
      for (int i = 0; i < n; ++i) {
        const double t = (grid.x(i) - center) / width;
        v[i] = std::fabs(t) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - t * t)) : 0.0;
      }
      break;
    }
    case RandomKind::Spike: {
      v[rng.uniform_int(0, n - 1)] = 1.0;
      break;
    }
  }

  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  if (m == 0.0) {
    v[0] = amplitude;  // degenerate random draw; keep the amplitude contract
  } else {
    const double c = amplitude / m;
    for (double& x : v) x *= c;
  }
  return GridFunction(grid, std::move(v));
}

}  // namespace vexp
