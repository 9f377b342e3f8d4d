#pragma once

#include <optional>
#include <vector>

#include "kfs/ifs.hpp"
#include "kfs/potential.hpp"

namespace kfs {

// Weak Gibbs measure rho = nu o pi^{-1} on [0,1]: IFS plus normalized
// finite-range potential. Range 1 gives a Bernoulli nu, range 2 a stationary
// Markov nu. Measures are assumed atomless on [0,1] (holds under OSC; taken
// as a modelling assumption with overlaps).
class GibbsModel {
 public:
  GibbsModel(IfsSystem system, const PotentialSpec& raw_potential);

  const IfsSystem& system() const { return system_; }
  const NormalizedPotential& potential() const { return pot_; }
  int alphabet_size() const { return system_.alphabet_size(); }
  int range() const { return pot_.spec.range; }

  // nu([omega]); the empty word has mass 1.
  double cylinder_mass(const Word& omega) const;
  double log_cylinder_mass(const Word& omega) const;

  // Mass of the first symbol / of appending `next` after `last`.
  double root_weight(Symbol first) const;
  double step_weight(std::optional<Symbol> last, Symbol next) const;

  // Exact sup/inf over the cylinder of the psi-Birkhoff sum. For range 1 the
  // interval is a point; for range 2 the boundary block contributes the
  // spread over continuations.
  Interval psi_birkhoff_bounds(const Word& omega) const;

 private:
  IfsSystem system_;
  NormalizedPotential pot_;
};

struct CylinderNode {
  Word word;  // representative word when nodes were merged
  Interval interval;
  double mass = 0.0;
};

struct CylinderAtlas {
  std::vector<CylinderNode> nodes;
  double resolution = 0.0;  // max node diameter
  bool merged = false;      // identical-interval nodes were coalesced
};

struct Atom {
  double position = 0.0;
  double mass = 0.0;
};

// Per-cell mass brackets on the dyadic grid A_n^k = ((k-1)2^-n, k 2^-n].
struct DyadicMasses {
  int level = 0;
  std::vector<double> lower;
  std::vector<double> upper;
  double ambiguity = 0.0;  // sum of (upper - lower)
  bool exact = false;      // ambiguity below 1e-12

  std::size_t cells_definitely_occupied() const;
  std::size_t cells_possibly_occupied() const;
};

// Prefix-free cover with diam(T_w([0,1])) <= resolution < diam(parent).
// All-affine systems coalesce identical (ratio, offset[, last symbol]) nodes,
// which keeps equal-ratio overlapping systems within budget.
CylinderAtlas build_atlas(const GibbsModel& model, double resolution,
                          const Budget& budget = {});

// Rigorous bracket of F_rho(x), refined until hi - lo <= tol.
Interval distribution_function(const GibbsModel& model, double x, double tol,
                               const Budget& budget = {});

// Mass brackets for all 2^n dyadic cells with total ambiguity <= tol.
// Affine systems use a monotone transfer-operator iteration on a refined
// dyadic grid (exact whenever the inverse maps send grid points to grid
// points); nonlinear systems refine straddling cylinders adaptively.
DyadicMasses dyadic_masses(const GibbsModel& model, int level, double tol,
                           const Budget& budget = {});

// One atom per atlas node at the cylinder midpoint; coincident positions are
// merged. Total mass 1 within 1e-12; Wasserstein-1 distance to rho bounded by
// the resolution.
std::vector<Atom> discretize_atoms(const GibbsModel& model, double resolution,
                                   const Budget& budget = {});

}  // namespace kfs
