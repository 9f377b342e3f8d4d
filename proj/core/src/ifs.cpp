#include "kfs/ifs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace kfs {

ContractionMap ContractionMap::affine(double ratio, double offset) {
  ContractionMap m;
  m.affine_ = {ratio, offset};
  m.label_ = "affine";
  m.validate_and_finalize();
  return m;
}

ContractionMap ContractionMap::nonlinear(Fn value, Fn derivative,
                                         double holder_constant,
                                         double holder_exponent,
                                         std::string label) {
  ContractionMap m;
  m.value_ = std::move(value);
  m.deriv_ = std::move(derivative);
  m.holder_c_ = holder_constant;
  m.holder_g_ = holder_exponent;
  m.label_ = std::move(label);
  m.validate_and_finalize();
  return m;
}

void ContractionMap::validate_and_finalize() {
  if (affine_) {
    const auto [r, b] = *affine_;
    if (!(std::abs(r) > 0.0) || !(std::abs(r) < 1.0)) {
      throw ConfigError("affine map: ratio must satisfy 0 < |r| < 1");
    }
    const double lo = std::min(b, r + b);
    const double hi = std::max(b, r + b);
    if (lo < -1e-15 || hi > 1.0 + 1e-15) {
      throw ConfigError("affine map: image not contained in [0,1]");
    }
    sup_deriv_ = inf_deriv_ = std::abs(r);
    holder_c_ = 0.0;
    holder_g_ = 1.0;
    return;
  }
  if (!value_ || !deriv_) {
    throw ConfigError("nonlinear map: value and derivative required");
  }
  if (!(holder_c_ >= 0.0) || !(holder_g_ > 0.0) || holder_g_ > 1.0) {
    throw ConfigError("nonlinear map: Holder data (C >= 0, gamma in (0,1]) "
                      "for log|T'| required");
  }
  // Rigorous derivative bounds from a sample grid padded by the Holder
  // modulus of log|T'|.
  constexpr int kGrid = 1024;
  double log_min = std::numeric_limits<double>::infinity();
  double log_max = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kGrid; ++i) {
    const double x = static_cast<double>(i) / kGrid;
    const double d = deriv_(x);
    if (d == 0.0 || !std::isfinite(d)) {
      throw ConfigError("nonlinear map: derivative must be finite and "
                        "nonvanishing on [0,1]");
    }
    const double v = value_(x);
    if (v < -1e-12 || v > 1.0 + 1e-12) {
      throw ConfigError("nonlinear map: image not contained in [0,1]");
    }
    log_min = std::min(log_min, std::log(std::abs(d)));
    log_max = std::max(log_max, std::log(std::abs(d)));
  }
  const double pad = holder_c_ * std::pow(0.5 / kGrid, holder_g_);
  inf_deriv_ = std::exp(log_min - pad);
  sup_deriv_ = std::exp(log_max + pad);
  if (!(sup_deriv_ < 1.0)) {
    throw ConfigError("nonlinear map: not uniformly contracting");
  }
  if (!(inf_deriv_ > 0.0)) {
    throw ConfigError("nonlinear map: derivative not bounded away from zero");
  }
}

double ContractionMap::operator()(double x) const {
  if (affine_) return affine_->first * x + affine_->second;
  return value_(x);
}

double ContractionMap::derivative(double x) const {
  if (affine_) return affine_->first;
  return deriv_(x);
}

double ContractionMap::ratio() const {
  if (!affine_) throw ConfigError("ratio(): map is not affine");
  return affine_->first;
}

double ContractionMap::offset() const {
  if (!affine_) throw ConfigError("offset(): map is not affine");
  return affine_->second;
}

namespace {

double fixed_point_of(const ContractionMap& m) {
  if (m.is_affine()) return m.offset() / (1.0 - m.ratio());
  // Contraction: unique fixed point, locate by bisection of T(x) - x.
  double lo = 0.0, hi = 1.0;
  double flo = m(lo) - lo;
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = m(mid) - mid;
    if ((fm >= 0.0) == (flo >= 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

IfsSystem::IfsSystem(std::vector<ContractionMap> maps, bool osc_certified)
    : maps_(std::move(maps)), osc_certified_(osc_certified) {
  if (maps_.size() < 2) {
    throw ConfigError("IFS must contain at least two contractions");
  }
  if (maps_.size() > 255) throw ConfigError("IFS alphabet too large");
  alpha_max_ = 0.0;
  alpha_min_ = 1.0;
  for (const auto& m : maps_) {
    all_affine_ = all_affine_ && m.is_affine();
    alpha_max_ = std::max(alpha_max_, m.sup_abs_derivative());
    alpha_min_ = std::min(alpha_min_, m.inf_abs_derivative());
  }
  // Non-triviality: the maps must not share a common fixed point.
  const double fp0 = fixed_point_of(maps_[0]);
  bool all_same = true;
  for (const auto& m : maps_) {
    if (std::abs(fixed_point_of(m) - fp0) > 1e-12) {
      all_same = false;
      break;
    }
  }
  if (all_same) {
    throw ConfigError("IFS is trivial: all maps share a fixed point");
  }
  if (osc_certified_ && all_affine_) {
    // OSC with feasible open set (0,1): images of (0,1) pairwise disjoint.
    std::vector<Interval> images;
    images.reserve(maps_.size());
    for (const auto& m : maps_) {
      const double a = m(0.0), b = m(1.0);
      images.push_back({std::min(a, b), std::max(a, b)});
    }
    std::sort(images.begin(), images.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    for (std::size_t i = 1; i < images.size(); ++i) {
      if (images[i].lo < images[i - 1].hi - 1e-15) {
        throw ConfigError("osc_certified set, but affine images of (0,1) "
                          "overlap");
      }
    }
  }
}

ComposedMap::ComposedMap(const IfsSystem& system, const Word& omega)
    : system_(&system), omega_(omega) {
  for (Symbol s : omega.symbols()) {
    if (s < 1 || s > static_cast<Symbol>(system.alphabet_size())) {
      throw ConfigError("compose: word symbol outside alphabet");
    }
  }
  if (system.all_affine()) {
    // T_omega(x) = T_{w1}(T_{w2}(...T_{wm}(x))): wrap maps around the
    // accumulator from the last symbol to the first.
    AffineComposition acc;
    for (std::size_t i = omega.size(); i-- > 0;) {
      const auto& m = system.map(omega[i]);
      acc = AffineComposition{m.ratio() * acc.ratio,
                              m.ratio() * acc.offset + m.offset()};
    }
    affine_ = acc;
  }
}

double ComposedMap::operator()(double x) const {
  if (affine_) return affine_->apply(x);
  for (std::size_t i = omega_.size(); i-- > 0;) {
    x = system_->map(omega_[i])(x);
  }
  return x;
}

double ComposedMap::derivative(double x) const {
  if (affine_) return affine_->ratio;
  double d = 1.0;
  for (std::size_t i = omega_.size(); i-- > 0;) {
    const auto& m = system_->map(omega_[i]);
    d *= m.derivative(x);
    x = m(x);
  }
  return d;
}

ComposedMap compose(const IfsSystem& system, const Word& omega) {
  return ComposedMap(system, omega);
}

Interval cylinder_interval(const IfsSystem& system, const Word& omega) {
  const ComposedMap t(system, omega);
  const double a = t(0.0), b = t(1.0);
  return {std::min(a, b), std::max(a, b)};
}

DistortionBudget distortion_budget(const IfsSystem& system,
                                   std::span<const double> potential_variations,
                                   std::size_t max_depth) {
  for (double v : potential_variations) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw ConfigError("distortion_budget: variation bounds must be finite "
                        "and non-negative");
    }
  }
  DistortionBudget out;
  out.b.assign(max_depth + 1, 0.0);
  if (!system.all_affine()) {
    // B_k = max_i C_i R^{gamma_i k} with R the common contraction bound; the
    // weak budget is b_m = sum_{k<m} B_k, the strong constant its full sum.
    const double big_r = system.alpha_max();
    auto term = [&](std::size_t k) {
      double bk = 0.0;
      for (const auto& m : system.maps()) {
        if (m.is_affine()) continue;
        bk = std::max(bk, m.holder_constant() *
                              std::pow(big_r, m.holder_exponent() *
                                                  static_cast<double>(k)));
      }
      return bk;
    };
    num::KahanSum acc;
    for (std::size_t m = 1; m <= max_depth; ++m) {
      acc.add(term(m - 1));
      out.b[m] = acc.value();
    }
    // Geometric tail to convergence for a0 = sum_k B_k.
    num::KahanSum full;
    for (std::size_t k = 0; k < 100000; ++k) {
      const double t = term(k);
      full.add(t);
      if (t < 1e-300 || t < 1e-17 * std::max(full.value(), 1.0)) break;
    }
    out.a0_log = full.value();
  }
  num::KahanSum vars;
  for (double v : potential_variations) vars.add(v);
  out.d0 = out.a0_log + vars.value();
  return out;
}

Interval geometric_birkhoff_bounds(const IfsSystem& system, const Word& omega,
                                   const DistortionBudget& budget) {
  if (omega.empty()) {
    throw ConfigError("geometric_birkhoff_bounds: word must be nonempty");
  }
  if (system.all_affine()) {
    num::KahanSum sum;
    for (Symbol s : omega.symbols()) {
      sum.add(std::log(std::abs(system.map(s).ratio())));
    }
    return {sum.value(), sum.value()};
  }
  const ComposedMap t(system, omega);
  const double centre = std::log(std::abs(t.derivative(0.5)));
  const double pad = budget.b_at(omega.size());
  return {centre - pad, centre + pad};
}

Interval geometric_birkhoff_bounds(const IfsSystem& system,
                                   const Word& omega) {
  if (!system.all_affine()) {
    throw ConfigError("geometric_birkhoff_bounds: distortion budget required "
                      "for nonlinear systems");
  }
  static const DistortionBudget empty_budget;
  return geometric_birkhoff_bounds(system, omega, empty_budget);
}

IfsSystem preset_system(const std::string& name) {
  if (name == "quadratic_pair") {
    // Two C^{1+1} maps with disjoint images:
    //   T1(x) = x/4 + x^2/16,           T1' in [1/4, 3/8]
    //   T2(x) = 1/2 + x/3 + sin(pi x)/40, T2' in [1/3 - pi/40, 1/3 + pi/40]
    // Lipschitz constants of log|T'|: 1/2 and ~0.97 (padded to 1.0).
    auto t1 = ContractionMap::nonlinear(
        [](double x) { return x / 4.0 + x * x / 16.0; },
        [](double x) { return 0.25 + x / 8.0; }, 0.5, 1.0, "quadratic_lower");
    auto t2 = ContractionMap::nonlinear(
        [](double x) {
          return 0.5 + x / 3.0 + std::sin(std::numbers::pi * x) / 40.0;
        },
        [](double x) {
          return 1.0 / 3.0 +
                 std::numbers::pi * std::cos(std::numbers::pi * x) / 40.0;
        },
        1.0, 1.0, "perturbed_third");
    std::vector<ContractionMap> maps;
    maps.push_back(std::move(t1));
    maps.push_back(std::move(t2));
    return IfsSystem(std::move(maps), /*osc_certified=*/true);
  }
  throw ConfigError("unknown IFS preset: " + name);
}

}  // namespace kfs
