#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "kfs/errors.hpp"

namespace kfs {

// Closed interval [lo, hi]. Used both for geometric intervals on [0,1] and
// for rigorous value brackets.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& other) const {
    return lo <= other.lo && other.hi <= hi;
  }
};

namespace num {

// Kahan-compensated accumulator.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - c_;
    const double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

// log(sum exp(x_i)) with max-shift, compensated inner sum.
double log_sum_exp(std::span<const double> xs);

// Root of a continuous strictly decreasing function on [lo, hi] with
// f(lo) >= 0 >= f(hi), located to absolute tolerance xtol.
double bisect_decreasing(const std::function<double(double)>& f, double lo,
                         double hi, double xtol, int max_iter = 200);

// Newton iteration with bracket maintenance; falls back to bisection steps
// whenever the Newton step leaves the bracket. f must be strictly decreasing
// on the bracket. Converges to |f| <= ftol.
double newton_decreasing(const std::function<double(double)>& f,
                         const std::function<double(double)>& df, double x0,
                         double lo, double hi, double ftol, int max_iter = 200);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
  std::size_t points = 0;
};

// Ordinary least squares y = a + b x.
LinearFit least_squares(std::span<const double> xs, std::span<const double> ys);

// Aitken delta-squared applied to the last three terms.
double aitken(double a, double b, double c);

// Fits v_n = A - c/n - d/n^2 through three (level, value) pairs and returns A.
// This is the extrapolation matching the observed O(1/n) convergence of
// finite-level fixed points.
double richardson_1n(std::span<const int> levels,
                     std::span<const double> values);

std::vector<double> linspace(double a, double b, std::size_t count);
std::vector<double> log_spaced(double a, double b, std::size_t count);

}  // namespace num
}  // namespace kfs
