#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "errors.hpp"

namespace vexp {

// Uniform periodic grid on [-L, L). n_points must be a power of two; the
// default desk-scale grid is 1024 points on [-2, 2). Tiny grids (2, 4)
// are valid so that exhaustive searches over all degrees of freedom stay
// tractable; the dyadic filter bank needs at least 32 points.
class Grid {
 public:
  Grid(double half_length, int n_points);

  double half_length() const { return half_length_; }
  int n_points() const { return n_; }
  double dx() const { return dx_; }
  double x(int i) const { return -half_length_ + dx_ * i; }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.half_length_ == b.half_length_ && a.n_ == b.n_;
  }
  friend bool operator!=(const Grid& a, const Grid& b) { return !(a == b); }

 private:
  double half_length_;
  int n_;
  double dx_;
};

// Sampled function on a Grid, real or complex valued. Entries are validated
// finite at construction and the object is immutable afterwards.
class GridFunction {
 public:
  GridFunction(const Grid& grid, std::vector<double> re);
  GridFunction(const Grid& grid, std::vector<double> re,
               std::vector<double> im);
  static GridFunction zero(const Grid& grid);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return re_.size(); }
  bool is_real() const { return im_.empty(); }
  std::span<const double> re() const { return re_; }
  std::span<const double> im() const { return im_; }

  double abs_at(std::size_t i) const;
  std::vector<double> abs_values() const;
  double max_abs() const;
  bool is_zero() const;

 private:
  Grid grid_;
  std::vector<double> re_;
  std::vector<double> im_;  // empty for real-valued data
};

GridFunction add(const GridFunction& a, const GridFunction& b);
GridFunction sub(const GridFunction& a, const GridFunction& b);
GridFunction scaled(const GridFunction& f, double c);
GridFunction abs(const GridFunction& f);
GridFunction pointwise_mul(const GridFunction& a, const GridFunction& b);

// Rectangle rule dx * sum of values; exact for periodic trigonometric data.
// Real part only; the callers' contract is real-valued input.
double integrate(const GridFunction& f);

// Finite list of grid functions sharing one grid; indices past size() are
// implicitly zero.
class FuncSequence {
 public:
  explicit FuncSequence(const Grid& grid) : grid_(grid) {}
  FuncSequence(const Grid& grid, std::vector<GridFunction> terms);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return terms_.size(); }
  const GridFunction& term(std::size_t i) const { return terms_[i]; }
  const std::vector<GridFunction>& terms() const { return terms_; }
  void push_back(GridFunction f);
  bool is_zero() const;

 private:
  Grid grid_;
  std::vector<GridFunction> terms_;
};

FuncSequence scaled(const FuncSequence& f, double c);
FuncSequence add(const FuncSequence& a, const FuncSequence& b);

enum class RandomKind { Smooth, Bump, Spike };

// Deterministic in seed. Smooth is a band-limited Fourier series (modes up
// to n/4, never touching Nyquist), bump is compactly supported away from the
// periodic seam, spike is a single cell. All are scaled to max |value| =
// amplitude.
GridFunction random_function(const Grid& grid, RandomKind kind,
                             double amplitude, std::uint64_t seed);

}  // namespace vexp
