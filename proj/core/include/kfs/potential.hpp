#pragma once

#include <span>
#include <vector>

#include "kfs/errors.hpp"
#include "kfs/word.hpp"

namespace kfs {

// Finite-range potential over the shift. range 1: values[i-1] = psi(i...);
// range 2: values[(i-1)*n + (j-1)] = psi(ij...). variation_bounds[k] holds
// var_k(psi) (zero from k = range on).
struct PotentialSpec {
  int range = 1;
  int alphabet_size = 0;
  std::vector<double> values;
  std::vector<double> variation_bounds;

  static PotentialSpec from_probabilities(std::span<const double> p);
  static PotentialSpec range1(std::span<const double> values);
  static PotentialSpec range2(int alphabet_size, std::span<const double> values);

  double value1(Symbol i) const { return values[i - 1]; }
  double value2(Symbol i, Symbol j) const {
    return values[static_cast<std::size_t>(i - 1) * alphabet_size + (j - 1)];
  }
  void compute_variations();
};

// Result of Perron normalization. For range 1 the weights are the Bernoulli
// probabilities; for range 2 `transition` is the row-stochastic matrix
// P_ij = exp(psi1(ij)) and `stationary` its left fixed vector.
struct NormalizedPotential {
  PotentialSpec spec;
  std::vector<double> weights;     // range 1: p_i
  std::vector<double> transition;  // range 2: row-major P
  std::vector<double> stationary;  // range 2: pi with pi P = pi
  double log_perron = 0.0;         // log lambda of the raw matrix (range 2)
};

// Range 1: psi1(i) = psi(i) - log sum_j e^{psi(j)}.
// Range 2: with A_ij = e^{psi(ij)}, power-iterates the positive right Perron
// eigenvector h (relative residual 1e-13) and sets
// psi1(ij) = psi(ij) - log lambda + log h_j - log h_i, then computes the
// stationary left distribution of P_ij = e^{psi1(ij)}.
NormalizedPotential normalize_potential(const PotentialSpec& raw);

}  // namespace kfs
