#include "kfs/numeric.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace kfs::num {

double log_sum_exp(std::span<const double> xs) {
  if (xs.empty()) return -std::numeric_limits<double>::infinity();
  double m = xs[0];
  for (double x : xs) m = std::max(m, x);
  if (!std::isfinite(m)) return m;
  KahanSum s;
  for (double x : xs) s.add(std::exp(x - m));
  return m + std::log(s.value());
}

double bisect_decreasing(const std::function<double(double)>& f, double lo,
                         double hi, double xtol, int max_iter) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo < 0.0 || fhi > 0.0) {
    throw NumericError("bisect_decreasing: root not bracketed");
  }
  for (int it = 0; it < max_iter && (hi - lo) > xtol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm >= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double newton_decreasing(const std::function<double(double)>& f,
                         const std::function<double(double)>& df, double x0,
                         double lo, double hi, double ftol, int max_iter) {
  double x = std::clamp(x0, lo, hi);
  for (int it = 0; it < max_iter; ++it) {
    const double fx = f(x);
    if (std::abs(fx) <= ftol) return x;
    if (fx > 0.0) {
      lo = std::max(lo, x);
    } else {
      hi = std::min(hi, x);
    }
    const double d = df(x);
    double next = (d != 0.0) ? x - fx / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    x = next;
  }
  if (std::abs(f(x)) <= ftol) return x;
  throw NumericError("newton_decreasing: no convergence after max_iter");
}

LinearFit least_squares(std::span<const double> xs,
                        std::span<const double> ys) {
  LinearFit fit;
  fit.points = xs.size();
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw NumericError("least_squares: need at least two matched points");
  }
  const double n = static_cast<double>(xs.size());
  KahanSum sx, sy, sxx, sxy;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx.add(xs[i]);
    sy.add(ys[i]);
    sxx.add(xs[i] * xs[i]);
    sxy.add(xs[i] * ys[i]);
  }
  const double det = n * sxx.value() - sx.value() * sx.value();
  if (det == 0.0) throw NumericError("least_squares: degenerate abscissae");
  fit.slope = (n * sxy.value() - sx.value() * sy.value()) / det;
  fit.intercept = (sy.value() - fit.slope * sx.value()) / n;
  KahanSum rss;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    rss.add(r * r);
  }
  fit.residual_rms = std::sqrt(rss.value() / n);
  return fit;
}

double aitken(double a, double b, double c) {
  const double d1 = b - a;
  const double d2 = c - b;
  const double denom = d1 - d2;
  if (denom == 0.0) return c;
  return c + d2 * d2 / denom;
}

double richardson_1n(std::span<const int> levels,
                     std::span<const double> values) {
  if (levels.size() != 3 || values.size() != 3) {
    throw NumericError("richardson_1n: exactly three levels required");
  }
  // Solve [1, -1/n, -1/n^2] [A, c, d]^T = v by elimination.
  std::array<std::array<double, 3>, 3> m{};
  std::array<double, 3> rhs{};
  for (int i = 0; i < 3; ++i) {
    const double n = static_cast<double>(levels[i]);
    if (n <= 0) throw NumericError("richardson_1n: levels must be positive");
    m[i] = {1.0, -1.0 / n, -1.0 / (n * n)};
    rhs[i] = values[i];
  }
  for (int col = 0; col < 2; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    }
    std::swap(m[col], m[piv]);
    std::swap(rhs[col], rhs[piv]);
    if (m[col][col] == 0.0) throw NumericError("richardson_1n: singular system");
    for (int r = col + 1; r < 3; ++r) {
      const double f = m[r][col] / m[col][col];
      for (int c2 = col; c2 < 3; ++c2) m[r][c2] -= f * m[col][c2];
      rhs[r] -= f * rhs[col];
    }
  }
  if (m[2][2] == 0.0) throw NumericError("richardson_1n: singular system");
  const double d = rhs[2] / m[2][2];
  const double c = (rhs[1] - m[1][2] * d) / m[1][1];
  return rhs[0] - m[0][1] * c - m[0][2] * d;
}

std::vector<double> linspace(double a, double b, std::size_t count) {
  std::vector<double> out;
  out.reserve(count);
  if (count == 1) {
    out.push_back(a);
    return out;
  }
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(a + (b - a) * static_cast<double>(i) /
                          static_cast<double>(count - 1));
  }
  return out;
}

std::vector<double> log_spaced(double a, double b, std::size_t count) {
  if (a <= 0.0 || b <= a) throw NumericError("log_spaced: need 0 < a < b");
  std::vector<double> out = linspace(std::log(a), std::log(b), count);
  for (double& x : out) x = std::exp(x);
  return out;
}

}  // namespace kfs::num
