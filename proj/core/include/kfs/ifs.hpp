#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kfs/numeric.hpp"
#include "kfs/word.hpp"

namespace kfs {

// One contraction T: [0,1] -> [0,1] with nonvanishing derivative. Affine maps
// carry exact (ratio, offset) data; user-supplied C^{1+gamma} maps provide
// value/derivative evaluators plus Holder data for log|T'| (the library never
// differentiates numerically).
class ContractionMap {
 public:
  using Fn = std::function<double(double)>;

  static ContractionMap affine(double ratio, double offset);
  // holder_constant / holder_exponent bound the modulus of continuity of
  // log|T'|:  |log|T'(x)| - log|T'(y)|| <= C |x-y|^gamma.
  static ContractionMap nonlinear(Fn value, Fn derivative,
                                  double holder_constant,
                                  double holder_exponent,
                                  std::string label = "nonlinear");

  double operator()(double x) const;
  double derivative(double x) const;

  bool is_affine() const { return affine_.has_value(); }
  double ratio() const;
  double offset() const;

  double sup_abs_derivative() const { return sup_deriv_; }
  double inf_abs_derivative() const { return inf_deriv_; }
  double holder_constant() const { return holder_c_; }
  double holder_exponent() const { return holder_g_; }
  const std::string& label() const { return label_; }

 private:
  ContractionMap() = default;
  void validate_and_finalize();

  std::optional<std::pair<double, double>> affine_;  // (ratio, offset)
  Fn value_;
  Fn deriv_;
  double holder_c_ = 0.0;
  double holder_g_ = 1.0;
  double sup_deriv_ = 0.0;
  double inf_deriv_ = 0.0;
  std::string label_;
};

// Exact composition data for affine words.
struct AffineComposition {
  double ratio = 1.0;
  double offset = 0.0;
  double apply(double x) const { return ratio * x + offset; }
};

class IfsSystem {
 public:
  // osc_certified: for affine maps the open set condition on (0,1) is checked
  // by interval arithmetic; for nonlinear maps it is taken as a user
  // assertion.
  IfsSystem(std::vector<ContractionMap> maps, bool osc_certified);

  int alphabet_size() const { return static_cast<int>(maps_.size()); }
  const ContractionMap& map(Symbol s) const { return maps_[s - 1]; }
  std::span<const ContractionMap> maps() const { return maps_; }
  bool osc_certified() const { return osc_certified_; }
  bool all_affine() const { return all_affine_; }
  double alpha_max() const { return alpha_max_; }  // max_i sup |T_i'|
  double alpha_min() const { return alpha_min_; }  // min_i inf |T_i'|

 private:
  std::vector<ContractionMap> maps_;
  bool osc_certified_ = false;
  bool all_affine_ = true;
  double alpha_max_ = 0.0;
  double alpha_min_ = 0.0;
};

// T_omega = T_{w1} o ... o T_{wm}; T_empty = id.
class ComposedMap {
 public:
  ComposedMap(const IfsSystem& system, const Word& omega);

  double operator()(double x) const;
  double derivative(double x) const;  // chain rule
  bool is_affine() const { return affine_.has_value(); }
  const AffineComposition& affine() const { return *affine_; }

 private:
  const IfsSystem* system_;
  Word omega_;
  std::optional<AffineComposition> affine_;
};

ComposedMap compose(const IfsSystem& system, const Word& omega);

// T_omega([0,1]) as [min, max] of the endpoint images.
Interval cylinder_interval(const IfsSystem& system, const Word& omega);

// Distortion data: b_m bounds the oscillation of log|T_omega'| over [0,1] for
// |omega| = m (zero for affine systems); a0_log its limit; d0 adds the total
// potential variation.
struct DistortionBudget {
  std::vector<double> b;  // b[m], m = 0..max_depth
  double a0_log = 0.0;
  double d0 = 0.0;

  double b_at(std::size_t m) const {
    if (b.empty()) return 0.0;
    return m < b.size() ? b[m] : b.back();
  }
};

DistortionBudget distortion_budget(const IfsSystem& system,
                                   std::span<const double> potential_variations,
                                   std::size_t max_depth = 64);

// Interval containing { S_{|w|} phi(w x) : x } for the geometric potential
// phi = log|T'|. Exact (zero width) for affine systems; for nonlinear maps
// log|T_omega'(1/2)| +- b_{|omega|}.
Interval geometric_birkhoff_bounds(const IfsSystem& system, const Word& omega,
                                   const DistortionBudget& budget);
// Convenience overload for all-affine systems.
Interval geometric_birkhoff_bounds(const IfsSystem& system, const Word& omega);

// Named nonlinear map pairs usable from configs; see preset_system().
IfsSystem preset_system(const std::string& name);

}  // namespace kfs
