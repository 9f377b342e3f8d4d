#include "kfs/gibbs.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <unordered_map>

#include "kfs/numeric.hpp"

namespace kfs {

GibbsModel::GibbsModel(IfsSystem system, const PotentialSpec& raw_potential)
    : system_(std::move(system)), pot_(normalize_potential(raw_potential)) {
  if (pot_.spec.alphabet_size != system_.alphabet_size()) {
    throw ConfigError("potential alphabet does not match the IFS");
  }
}

double GibbsModel::root_weight(Symbol first) const {
  if (range() == 1) return pot_.weights[first - 1];
  return pot_.stationary[first - 1];
}

double GibbsModel::step_weight(std::optional<Symbol> last, Symbol next) const {
  if (range() == 1) return pot_.weights[next - 1];
  if (!last) return pot_.stationary[next - 1];
  const auto n = static_cast<std::size_t>(alphabet_size());
  return pot_.transition[static_cast<std::size_t>(*last - 1) * n + (next - 1)];
}

double GibbsModel::cylinder_mass(const Word& omega) const {
  double m = 1.0;
  std::optional<Symbol> last;
  for (Symbol s : omega.symbols()) {
    m *= step_weight(last, s);
    last = s;
  }
  return m;
}

double GibbsModel::log_cylinder_mass(const Word& omega) const {
  num::KahanSum sum;
  std::optional<Symbol> last;
  for (Symbol s : omega.symbols()) {
    sum.add(std::log(step_weight(last, s)));
    last = s;
  }
  return sum.value();
}

Interval GibbsModel::psi_birkhoff_bounds(const Word& omega) const {
  if (omega.empty()) return {0.0, 0.0};
  const auto& spec = pot_.spec;
  if (range() == 1) {
    num::KahanSum sum;
    for (Symbol s : omega.symbols()) sum.add(spec.value1(s));
    return {sum.value(), sum.value()};
  }
  num::KahanSum pairs;
  for (std::size_t i = 0; i + 1 < omega.size(); ++i) {
    pairs.add(spec.value2(omega[i], omega[i + 1]));
  }
  // Boundary block: the last factor ranges over all continuations.
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (Symbol j = 1; j <= static_cast<Symbol>(alphabet_size()); ++j) {
    const double v = spec.value2(omega.last(), j);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {pairs.value() + lo, pairs.value() + hi};
}

// ---------------------------------------------------------------------------
// Atlas construction
// ---------------------------------------------------------------------------

namespace {

struct MergeKey {
  std::uint64_t ratio_bits;
  std::uint64_t offset_bits;
  std::uint8_t last;

  bool operator==(const MergeKey&) const = default;
};

struct MergeKeyHash {
  std::size_t operator()(const MergeKey& k) const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
      h ^= v;
      h *= 1099511628211ull;
    };
    mix(k.ratio_bits);
    mix(k.offset_bits);
    mix(k.last);
    return static_cast<std::size_t>(h);
  }
};

// Affine BFS node; words are reconstructed through parent links so merged
// construction stays compact.
struct AffNode {
  AffineComposition map;
  double mass = 0.0;
  Symbol last = 0;          // last symbol (transition state for range 2)
  std::int64_t parent = -1; // index into the trail
  Symbol via = 0;           // symbol appended to the parent
};

Word trail_word(const std::vector<std::pair<std::int64_t, Symbol>>& trail,
                std::int64_t idx) {
  std::vector<Symbol> syms;
  while (idx >= 0) {
    syms.push_back(trail[static_cast<std::size_t>(idx)].second);
    idx = trail[static_cast<std::size_t>(idx)].first;
  }
  std::reverse(syms.begin(), syms.end());
  return Word(std::move(syms));
}

Interval affine_interval(const AffineComposition& m) {
  const double a = m.offset;
  const double b = m.ratio + m.offset;
  return {std::min(a, b), std::max(a, b)};
}

// BFS with identical-map merging for all-affine systems. `stop` decides
// whether a node is final; final nodes are appended to `out`.
template <typename StopFn, typename EmitFn>
void affine_bfs(const GibbsModel& model, const Budget& budget, StopFn stop,
                EmitFn emit) {
  const int n = model.alphabet_size();
  const bool markov = model.range() == 2;
  std::vector<std::pair<std::int64_t, Symbol>> trail;
  std::vector<AffNode> active;
  active.push_back(AffNode{AffineComposition{1.0, 0.0}, 1.0, 0, -1, 0});
  std::uint64_t visited = 0;

  while (!active.empty()) {
    std::vector<AffNode> next;
    std::unordered_map<MergeKey, std::size_t, MergeKeyHash> index;
    next.reserve(active.size() * static_cast<std::size_t>(n));
    for (const AffNode& node : active) {
      for (Symbol s = 1; s <= static_cast<Symbol>(n); ++s) {
        if (++visited > budget.max_words) {
          throw BudgetError("atlas enumeration budget exceeded",
                            std::abs(node.map.ratio));
        }
        const auto& m = model.system().map(s);
        AffNode child;
        child.map = AffineComposition{
            node.map.ratio * m.ratio(),
            node.map.ratio * m.offset() + node.map.offset};
        child.mass = node.mass * model.step_weight(
                                     node.last == 0
                                         ? std::optional<Symbol>{}
                                         : std::optional<Symbol>{node.last},
                                     s);
        child.last = s;
        child.parent = node.parent;
        child.via = s;
        // Trail bookkeeping: the child extends the parent's word. Record one
        // trail entry per (parent, symbol) pair lazily below.
        trail.emplace_back(node.parent, s);
        child.parent = static_cast<std::int64_t>(trail.size()) - 1;

        if (stop(child)) {
          emit(child, trail);
          continue;
        }
        const MergeKey key{std::bit_cast<std::uint64_t>(child.map.ratio),
                           std::bit_cast<std::uint64_t>(child.map.offset),
                           markov ? child.last : std::uint8_t{0}};
        auto [it, inserted] = index.emplace(key, next.size());
        if (inserted) {
          next.push_back(std::move(child));
        } else {
          next[it->second].mass += child.mass;
        }
      }
    }
    active.swap(next);
  }
}

// DFS for nonlinear systems; evaluates cylinder endpoints by applying the map
// stack (O(depth) per node).
template <typename StopFn, typename EmitFn>
void nonlinear_dfs(const GibbsModel& model, const Budget& budget, StopFn stop,
                   EmitFn emit) {
  const int n = model.alphabet_size();
  std::vector<Symbol> word;
  std::uint64_t visited = 0;

  auto endpoint = [&](double x) {
    for (std::size_t i = word.size(); i-- > 0;) {
      x = model.system().map(word[i])(x);
    }
    return x;
  };

  std::function<void(double, double)> descend = [&](double mass,
                                                    double parent_diam) {
    for (Symbol s = 1; s <= static_cast<Symbol>(n); ++s) {
      if (++visited > budget.max_words) {
        throw BudgetError("atlas enumeration budget exceeded", parent_diam);
      }
      const double w = model.step_weight(
          word.empty() ? std::optional<Symbol>{}
                       : std::optional<Symbol>{word.back()},
          s);
      word.push_back(s);
      const auto& m = model.system().map(s);
      const double e0 = endpoint(m(0.0));
      const double e1 = endpoint(m(1.0));
      // endpoint() composes the whole current word including s only through
      // the stack, so drop s for the outer part:
      word.pop_back();
      const double f0 = [&] {
        double x = m(0.0);
        for (std::size_t i = word.size(); i-- > 0;) {
          x = model.system().map(word[i])(x);
        }
        return x;
      }();
      (void)e0;
      (void)e1;
      const double f1 = [&] {
        double x = m(1.0);
        for (std::size_t i = word.size(); i-- > 0;) {
          x = model.system().map(word[i])(x);
        }
        return x;
      }();
      word.push_back(s);
      const Interval iv{std::min(f0, f1), std::max(f0, f1)};
      const double child_mass = mass * w;
      if (stop(iv, child_mass, word)) {
        emit(iv, child_mass, word);
      } else {
        descend(child_mass, iv.width());
      }
      word.pop_back();
    }
  };
  descend(1.0, 1.0);
}

}  // namespace

CylinderAtlas build_atlas(const GibbsModel& model, double resolution,
                          const Budget& budget) {
  if (!(resolution > 0.0) || !(resolution < 1.0)) {
    throw ConfigError("build_atlas: resolution must lie in (0,1)");
  }
  CylinderAtlas atlas;
  atlas.resolution = 0.0;
  if (model.system().all_affine()) {
    atlas.merged = true;
    affine_bfs(
        model, budget,
        [&](const AffNode& node) {
          return std::abs(node.map.ratio) <= resolution;
        },
        [&](const AffNode& node,
            const std::vector<std::pair<std::int64_t, Symbol>>& trail) {
          CylinderNode out;
          out.word = trail_word(trail, node.parent);
          out.interval = affine_interval(node.map);
          out.mass = node.mass;
          atlas.resolution = std::max(atlas.resolution, out.interval.width());
          atlas.nodes.push_back(std::move(out));
        });
  } else {
    nonlinear_dfs(
        model, budget,
        [&](const Interval& iv, double, const std::vector<Symbol>&) {
          return iv.width() <= resolution;
        },
        [&](const Interval& iv, double mass, const std::vector<Symbol>& w) {
          CylinderNode out;
          out.word = Word(std::vector<Symbol>(w));
          out.interval = iv;
          out.mass = mass;
          atlas.resolution = std::max(atlas.resolution, iv.width());
          atlas.nodes.push_back(std::move(out));
        });
  }
  return atlas;
}

// ---------------------------------------------------------------------------
// Distribution function via adaptive straddle refinement
// ---------------------------------------------------------------------------

Interval distribution_function(const GibbsModel& model, double x, double tol,
                               const Budget& budget) {
  if (!(x >= 0.0) || !(x <= 1.0)) {
    throw ConfigError("distribution_function: x must lie in [0,1]");
  }
  if (!(tol > 0.0)) throw ConfigError("distribution_function: tol must be > 0");
  if (x >= 1.0) return {1.0, 1.0};

  num::KahanSum below;
  double straddle = 1.0;

  if (model.system().all_affine()) {
    // Level-synchronous refinement of straddling nodes only.
    struct Node {
      AffineComposition map;
      double mass;
      Symbol last;
    };
    std::vector<Node> work{{AffineComposition{1.0, 0.0}, 1.0, 0}};
    std::uint64_t visited = 0;
    const int n = model.alphabet_size();
    const bool markov = model.range() == 2;
    while (straddle > tol && !work.empty()) {
      std::vector<Node> next;
      std::unordered_map<MergeKey, std::size_t, MergeKeyHash> index;
      for (const Node& node : work) {
        for (Symbol s = 1; s <= static_cast<Symbol>(n); ++s) {
          if (++visited > budget.max_words) {
            throw BudgetError("distribution_function budget exceeded",
                              straddle);
          }
          const auto& m = model.system().map(s);
          Node child{AffineComposition{
                         node.map.ratio * m.ratio(),
                         node.map.ratio * m.offset() + node.map.offset},
                     node.mass * model.step_weight(
                                     node.last == 0
                                         ? std::optional<Symbol>{}
                                         : std::optional<Symbol>{node.last},
                                     s),
                     s};
          const Interval iv = affine_interval(child.map);
          if (iv.hi <= x) {
            below.add(child.mass);
          } else if (iv.lo > x) {
            // entirely to the right
          } else {
            const MergeKey key{std::bit_cast<std::uint64_t>(child.map.ratio),
                               std::bit_cast<std::uint64_t>(child.map.offset),
                               markov ? child.last : std::uint8_t{0}};
            auto [it, inserted] = index.emplace(key, next.size());
            if (inserted) {
              next.push_back(child);
            } else {
              next[it->second].mass += child.mass;
            }
          }
        }
      }
      work.swap(next);
      num::KahanSum s;
      for (const Node& nd : work) s.add(nd.mass);
      straddle = s.value();
    }
    return {below.value(), below.value() + straddle};
  }

  // Nonlinear: depth-first refinement of the straddling chain.
  std::uint64_t visited = 0;
  num::KahanSum ambiguous;
  nonlinear_dfs(
      model,
      Budget{budget.max_words},
      [&](const Interval& iv, double mass, const std::vector<Symbol>&) {
        ++visited;
        if (iv.hi <= x) {
          below.add(mass);
          return true;
        }
        if (iv.lo > x) return true;
        if (mass <= tol * 0.5 || iv.width() <= 1e-15) {
          ambiguous.add(mass);
          return true;
        }
        return false;
      },
      [](const Interval&, double, const std::vector<Symbol>&) {});
  straddle = ambiguous.value();
  if (straddle > tol) {
    throw BudgetError("distribution_function: tolerance unreachable",
                      straddle);
  }
  return {below.value(), below.value() + straddle};
}

// ---------------------------------------------------------------------------
// Dyadic masses
// ---------------------------------------------------------------------------

namespace {

std::size_t DyadicMasses_count(const std::vector<double>& v) {
  std::size_t c = 0;
  for (double x : v) {
    if (x > 0.0) ++c;
  }
  return c;
}

// Monotone transfer-operator iteration for the distribution functions of an
// affine model on the dyadic grid of 2^f cells. Maintains rigorous brackets
// [lo_i, hi_i] per chain state (range 2) or a single pair (range 1).
//
// The inverse action on grid indices is u(g) = a g + c per map; when a and c
// are integers (up to floating-point noise of grid-compatible data) the
// iteration is exact, otherwise floor/ceil indices keep the bracket valid.
class GridTransfer {
 public:
  GridTransfer(const GibbsModel& model, int fine_level, const Budget& budget)
      : model_(model), f_(fine_level) {
    const auto n = static_cast<std::size_t>(model.alphabet_size());
    states_ = model.range() == 1 ? 1 : n;
    npts_ = (std::size_t{1} << f_) + 1;
    if (states_ * npts_ > budget.max_words) {
      throw BudgetError("dyadic grid exceeds budget; lower the level or "
                        "raise the budget");
    }
    const double scale = std::ldexp(1.0, f_);  // 2^f
    maps_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& m = model.system().map(static_cast<Symbol>(i + 1));
      MapAction act;
      act.a = 1.0 / m.ratio();
      act.c = -m.offset() / m.ratio() * scale;
      act.increasing = m.ratio() > 0.0;
      const double ra = std::round(act.a);
      const double rc = std::round(act.c);
      // Snap to the exact integer action when the data are grid compatible;
      // the 1e-6 slack only absorbs floating-point noise of compatible
      // systems (an accidental snap perturbs offsets by ~1e-6 grid cells).
      act.exact = std::abs(act.a - ra) <= 1e-6 && std::abs(act.c - rc) <= 1e-6;
      if (act.exact) {
        act.ia = static_cast<std::int64_t>(ra);
        act.ic = static_cast<std::int64_t>(rc);
      }
      maps_.push_back(act);
    }
    lo_.assign(states_, std::vector<double>(npts_, 0.0));
    hi_.assign(states_, std::vector<double>(npts_, 1.0));
    for (std::size_t st = 0; st < states_; ++st) {
      lo_[st][npts_ - 1] = 1.0;
      hi_[st][0] = 0.0;
    }
  }

  // One sweep H_i <- sum_j P_ij H_j o T_j^{-1} over all grid points.
  void sweep() {
    const auto n = static_cast<std::size_t>(model_.alphabet_size());
    std::vector<std::vector<double>> nlo(states_,
                                         std::vector<double>(npts_));
    std::vector<std::vector<double>> nhi(states_,
                                         std::vector<double>(npts_));
    for (std::size_t st = 0; st < states_; ++st) {
      for (std::size_t g = 0; g < npts_; ++g) {
        double acc_lo = 0.0, acc_hi = 0.0;
        for (std::size_t jm = 0; jm < n; ++jm) {
          const double w =
              states_ == 1
                  ? model_.potential().weights[jm]
                  : model_.potential()
                        .transition[st * n + jm];
          const std::size_t src = states_ == 1 ? 0 : jm;
          double vlo, vhi;
          eval_map(jm, src, g, vlo, vhi);
          acc_lo += w * vlo;
          acc_hi += w * vhi;
        }
        nlo[st][g] = acc_lo;
        nhi[st][g] = acc_hi;
      }
      nlo[st][0] = 0.0;
      nlo[st][npts_ - 1] = 1.0;
      nhi[st][0] = 0.0;
      nhi[st][npts_ - 1] = 1.0;
    }
    lo_.swap(nlo);
    hi_.swap(nhi);
  }

  // Final mix: F(x) = sum_i pi_i H_i(T_i^{-1} x) (range 2); identity for
  // range 1.
  void final_mix(std::vector<double>& out_lo,
                 std::vector<double>& out_hi) const {
    out_lo.assign(npts_, 0.0);
    out_hi.assign(npts_, 0.0);
    if (states_ == 1) {
      out_lo = lo_[0];
      out_hi = hi_[0];
      return;
    }
    const auto n = static_cast<std::size_t>(model_.alphabet_size());
    for (std::size_t g = 0; g < npts_; ++g) {
      double acc_lo = 0.0, acc_hi = 0.0;
      for (std::size_t im = 0; im < n; ++im) {
        const double w = model_.potential().stationary[im];
        double vlo, vhi;
        eval_map(im, im, g, vlo, vhi);
        acc_lo += w * vlo;
        acc_hi += w * vhi;
      }
      out_lo[g] = acc_lo;
      out_hi[g] = acc_hi;
    }
    out_lo[0] = 0.0;
    out_hi[0] = 0.0;
    out_lo[npts_ - 1] = 1.0;
    out_hi[npts_ - 1] = 1.0;
  }

  double total_gap() const {
    num::KahanSum s;
    for (std::size_t st = 0; st < states_; ++st) {
      for (std::size_t g = 0; g < npts_; ++g) s.add(hi_[st][g] - lo_[st][g]);
    }
    return s.value();
  }

 private:
  struct MapAction {
    double a = 0.0;
    double c = 0.0;
    bool increasing = true;
    bool exact = false;
    std::int64_t ia = 0;
    std::int64_t ic = 0;
  };

  void eval_map(std::size_t map_idx, std::size_t src, std::size_t g,
                double& vlo, double& vhi) const {
    const MapAction& act = maps_[map_idx];
    std::int64_t ufloor, uceil;
    if (act.exact) {
      const std::int64_t u = act.ia * static_cast<std::int64_t>(g) + act.ic;
      ufloor = uceil = u;
    } else {
      const double u = act.a * static_cast<double>(g) + act.c;
      ufloor = static_cast<std::int64_t>(std::floor(u));
      uceil = static_cast<std::int64_t>(std::ceil(u));
    }
    const auto& Lo = lo_[src];
    const auto& Hi = hi_[src];
    const auto last = static_cast<std::int64_t>(npts_) - 1;
    auto lo_at = [&](std::int64_t i) {
      if (i <= 0) return 0.0;
      if (i >= last) return 1.0;
      return Lo[static_cast<std::size_t>(i)];
    };
    auto hi_at = [&](std::int64_t i) {
      if (i <= 0) return 0.0;
      if (i >= last) return 1.0;
      return Hi[static_cast<std::size_t>(i)];
    };
    if (act.increasing) {
      vlo = lo_at(ufloor);
      vhi = hi_at(uceil);
    } else {
      // G([y, inf)) = 1 - F(y) for atomless G.
      vlo = 1.0 - hi_at(uceil);
      vhi = 1.0 - lo_at(ufloor);
    }
  }

  const GibbsModel& model_;
  int f_;
  std::size_t states_ = 1;
  std::size_t npts_ = 0;
  std::vector<MapAction> maps_;
  std::vector<std::vector<double>> lo_, hi_;
};

DyadicMasses dyadic_from_brackets(const std::vector<double>& flo,
                                  const std::vector<double>& fhi, int f,
                                  int level) {
  DyadicMasses out;
  out.level = level;
  const std::size_t cells = std::size_t{1} << level;
  const std::size_t step = std::size_t{1} << (f - level);
  out.lower.resize(cells);
  out.upper.resize(cells);
  num::KahanSum amb;
  for (std::size_t k = 0; k < cells; ++k) {
    const std::size_t g0 = k * step;
    const std::size_t g1 = (k + 1) * step;
    const double lo = std::max(0.0, flo[g1] - fhi[g0]);
    const double hi = std::min(1.0, fhi[g1] - flo[g0]);
    out.lower[k] = lo;
    out.upper[k] = std::max(hi, lo);
    amb.add(out.upper[k] - out.lower[k]);
  }
  out.ambiguity = amb.value();
  out.exact = out.ambiguity <= 1e-12;
  return out;
}

DyadicMasses dyadic_masses_affine(const GibbsModel& model, int level,
                                  double tol, const Budget& budget) {
  // Guard bits refine the grid beyond the requested level so that straddling
  // mass near cell boundaries resolves.
  const int max_f = 24;
  int f = std::min(level + 6, max_f);
  f = std::max(f, level);
  GridTransfer gt(model, f, budget);
  double prev_gap = std::numeric_limits<double>::infinity();
  std::vector<double> flo, fhi;
  DyadicMasses best;
  best.ambiguity = std::numeric_limits<double>::infinity();
  int stale = 0;
  for (int it = 0; it < 600; ++it) {
    gt.sweep();
    if (it % 8 != 7) continue;
    const double gap = gt.total_gap();
    gt.final_mix(flo, fhi);
    best = dyadic_from_brackets(flo, fhi, f, level);
    if (best.ambiguity <= tol) return best;
    if (gap >= prev_gap * (1.0 - 1e-4)) {
      if (++stale >= 3) break;  // stationary; extra sweeps cannot help
    } else {
      stale = 0;
    }
    prev_gap = gap;
  }
  if (best.ambiguity <= tol) return best;
  throw BudgetError(
      "dyadic_masses: requested tolerance unreachable at this grid",
      best.ambiguity);
}

DyadicMasses dyadic_masses_nonlinear(const GibbsModel& model, int level,
                                     double tol, const Budget& budget) {
  const double h = std::ldexp(1.0, -level);
  const std::size_t cells = std::size_t{1} << level;
  DyadicMasses out;
  out.level = level;
  out.lower.assign(cells, 0.0);
  std::vector<double> straddle_hi(cells, 0.0);
  num::KahanSum ambiguous;

  auto cell_of_left = [&](double a) {
    return static_cast<std::size_t>(
        std::min<double>(std::floor(a / h), static_cast<double>(cells - 1)));
  };

  nonlinear_dfs(
      model, budget,
      [&](const Interval& iv, double mass, const std::vector<Symbol>&) {
        const auto ka = static_cast<std::size_t>(std::floor(iv.lo / h)) + 1;
        const auto kb =
            static_cast<std::size_t>(std::ceil(iv.hi / h));
        if (ka >= kb) {
          out.lower[std::min(cells - 1, ka - 1)] += mass;
          return true;
        }
        if (mass <= tol * 0.25 / static_cast<double>(cells) ||
            iv.width() <= 1e-15) {
          // Give up refining: spread the ambiguity over the touched cells.
          ambiguous.add(mass);
          for (std::size_t k = ka; k <= kb && k >= 1; ++k) {
            straddle_hi[std::min(cells - 1, k - 1)] += mass;
          }
          return true;
        }
        return false;
      },
      [](const Interval&, double, const std::vector<Symbol>&) {});

  out.upper = out.lower;
  for (std::size_t k = 0; k < cells; ++k) {
    out.upper[k] = std::min(1.0, out.upper[k] + straddle_hi[k]);
  }
  out.ambiguity = ambiguous.value();
  out.exact = out.ambiguity <= 1e-12;
  if (out.ambiguity > tol) {
    throw BudgetError("dyadic_masses: tolerance unreachable within budget",
                      out.ambiguity);
  }
  return out;
}

}  // namespace

std::size_t DyadicMasses::cells_definitely_occupied() const {
  return DyadicMasses_count(lower);
}

std::size_t DyadicMasses::cells_possibly_occupied() const {
  return DyadicMasses_count(upper);
}

DyadicMasses dyadic_masses(const GibbsModel& model, int level, double tol,
                           const Budget& budget) {
  if (level < 0) throw ConfigError("dyadic_masses: level must be >= 0");
  if (!(tol > 0.0)) throw ConfigError("dyadic_masses: tol must be positive");
  if (level == 0) {
    DyadicMasses out;
    out.level = 0;
    out.lower = {1.0};
    out.upper = {1.0};
    out.exact = true;
    return out;
  }
  if (model.system().all_affine()) {
    return dyadic_masses_affine(model, level, tol, budget);
  }
  return dyadic_masses_nonlinear(model, level, tol, budget);
}

std::vector<Atom> discretize_atoms(const GibbsModel& model, double resolution,
                                   const Budget& budget) {
  CylinderAtlas atlas = build_atlas(model, resolution, budget);
  std::vector<Atom> atoms;
  atoms.reserve(atlas.nodes.size());
  for (const auto& node : atlas.nodes) {
    atoms.push_back({node.interval.mid(), node.mass});
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.position < b.position; });
  std::vector<Atom> merged;
  merged.reserve(atoms.size());
  for (const Atom& a : atoms) {
    if (!merged.empty() && merged.back().position == a.position) {
      merged.back().mass += a.mass;
    } else {
      merged.push_back(a);
    }
  }
  return merged;
}

}  // namespace kfs
