#include "kfs/potential.hpp"

#include <algorithm>
#include <cmath>

#include "kfs/numeric.hpp"

namespace kfs {

PotentialSpec PotentialSpec::from_probabilities(std::span<const double> p) {
  num::KahanSum sum;
  for (double x : p) {
    if (!(x > 0.0) || !(x < 1.0)) {
      throw ConfigError("probability vector entries must lie in (0,1)");
    }
    sum.add(x);
  }
  if (std::abs(sum.value() - 1.0) > 1e-12) {
    throw ConfigError("probability vector must sum to 1 within 1e-12");
  }
  PotentialSpec spec;
  spec.range = 1;
  spec.alphabet_size = static_cast<int>(p.size());
  spec.values.reserve(p.size());
  for (double x : p) spec.values.push_back(std::log(x));
  spec.compute_variations();
  return spec;
}

PotentialSpec PotentialSpec::range1(std::span<const double> values) {
  PotentialSpec spec;
  spec.range = 1;
  spec.alphabet_size = static_cast<int>(values.size());
  spec.values.assign(values.begin(), values.end());
  spec.compute_variations();
  return spec;
}

PotentialSpec PotentialSpec::range2(int alphabet_size,
                                    std::span<const double> values) {
  if (static_cast<int>(values.size()) != alphabet_size * alphabet_size) {
    throw ConfigError("range-2 potential needs n*n values");
  }
  PotentialSpec spec;
  spec.range = 2;
  spec.alphabet_size = alphabet_size;
  spec.values.assign(values.begin(), values.end());
  spec.compute_variations();
  return spec;
}

void PotentialSpec::compute_variations() {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw ConfigError("potential values must be finite");
    }
  }
  const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  variation_bounds.assign(static_cast<std::size_t>(range), 0.0);
  variation_bounds[0] = *mx - *mn;
  if (range == 2) {
    // var_1 = max over first symbols of the spread across continuations.
    double v1 = 0.0;
    const int n = alphabet_size;
    for (int i = 0; i < n; ++i) {
      double lo = values[static_cast<std::size_t>(i) * n];
      double hi = lo;
      for (int j = 1; j < n; ++j) {
        const double v = values[static_cast<std::size_t>(i) * n + j];
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      v1 = std::max(v1, hi - lo);
    }
    variation_bounds[1] = v1;
  }
}

namespace {

// Power iteration for the dominant eigenpair of a positive matrix applied via
// `apply`. Returns log(lambda) and normalises v to sum 1.
double power_iterate(const std::function<void(const std::vector<double>&,
                                              std::vector<double>&)>& apply,
                     std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<double> next(n);
  double lambda = 1.0;
  for (int it = 0; it < 100000; ++it) {
    apply(v, next);
    double norm = 0.0;
    for (double x : next) norm += x;
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      throw NumericError("Perron iteration produced a non-positive vector");
    }
    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] /= norm;
      delta = std::max(delta, std::abs(next[i] - v[i]));
    }
    v.swap(next);
    lambda = norm;
    if (delta < 1e-15) {
      // Residual check at the fixed point: |A v - lambda v| / lambda.
      apply(v, next);
      double res = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        res = std::max(res, std::abs(next[i] - lambda * v[i]));
      }
      if (res / lambda <= 1e-13) return std::log(lambda);
    }
  }
  throw NumericError("Perron power iteration did not converge");
}

}  // namespace

NormalizedPotential normalize_potential(const PotentialSpec& raw) {
  if (raw.range != 1 && raw.range != 2) {
    throw ConfigError("potential range must be 1 or 2");
  }
  if (raw.alphabet_size < 2) {
    throw ConfigError("potential needs an alphabet of size >= 2");
  }
  NormalizedPotential out;
  out.spec = raw;

  if (raw.range == 1) {
    const double lse = num::log_sum_exp(raw.values);
    for (double& v : out.spec.values) v -= lse;
    out.weights.reserve(raw.values.size());
    for (double v : out.spec.values) out.weights.push_back(std::exp(v));
    out.spec.compute_variations();
    return out;
  }

  const int n = raw.alphabet_size;
  const auto nn = static_cast<std::size_t>(n);
  std::vector<double> a(nn * nn);
  for (std::size_t k = 0; k < a.size(); ++k) a[k] = std::exp(raw.values[k]);
  for (double x : a) {
    if (!(x > 0.0)) {
      throw ConfigError("range-2 potential matrix must be strictly positive "
                        "(non-primitive structure unsupported)");
    }
  }

  // Right eigenvector: (A h)_i = sum_j A_ij h_j.
  std::vector<double> h(nn, 1.0 / n);
  out.log_perron = power_iterate(
      [&](const std::vector<double>& v, std::vector<double>& r) {
        for (std::size_t i = 0; i < nn; ++i) {
          num::KahanSum s;
          for (std::size_t j = 0; j < nn; ++j) s.add(a[i * nn + j] * v[j]);
          r[i] = s.value();
        }
      },
      h);

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      out.spec.values[static_cast<std::size_t>(i) * nn + j] =
          raw.values[static_cast<std::size_t>(i) * nn + j] - out.log_perron +
          std::log(h[j]) - std::log(h[i]);
    }
  }
  out.spec.compute_variations();

  out.transition.resize(nn * nn);
  for (std::size_t k = 0; k < out.transition.size(); ++k) {
    out.transition[k] = std::exp(out.spec.values[k]);
  }
  // Stationary left distribution of the row-stochastic P.
  std::vector<double> pi(nn, 1.0 / n);
  power_iterate(
      [&](const std::vector<double>& v, std::vector<double>& r) {
        for (std::size_t j = 0; j < nn; ++j) {
          num::KahanSum s;
          for (std::size_t i = 0; i < nn; ++i) {
            s.add(out.transition[i * nn + j] * v[i]);
          }
          r[j] = s.value();
        }
      },
      pi);
  out.stationary = std::move(pi);
  return out;
}

}  // namespace kfs
