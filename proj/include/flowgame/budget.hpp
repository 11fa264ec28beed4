#pragma once

#include <flowgame/equilibria.hpp>
#include <flowgame/flowopt.hpp>
#include <flowgame/payoff.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace flowgame {

inline constexpr std::size_t kMaxPartitionEdges = 24;

/// Smallest transport budget that still supports a region-III equilibrium: T^min / p2.
inline Rational min_defender_budget(const FlowAnalysis& a, const GameParams& g) {
  detail::require_region_three(classify_region(g, a.alpha), "defender budget");
  detail::require_assumption1(a, "defender budget");
  return a.t_min / g.p2;
}

/// Lower bound on any attack budget that keeps the region-III equilibria:
/// F^max - T^min/p1.
inline Rational attacker_budget_lower_bound(const FlowAnalysis& a, const GameParams& g) {
  detail::require_region_three(classify_region(g, a.alpha), "attacker budget bound");
  detail::require_assumption1(a, "attacker budget bound");
  return a.f_max - a.t_min / g.p1;
}

/// n* = min(floor(p1 / (p1 - alpha)), N).
inline std::size_t optimal_partition_size(const GameParams& g, const Rational& alpha, std::size_t n_edges) {
  if (!(g.p1 > alpha))
    throw Error(ErrorCode::WrongRegion, "partition size needs p1 > alpha (p1 = " + g.p1.str() + ", alpha = " +
                                            alpha.str() + ")");
  if (n_edges == 0) throw Error(ErrorCode::InvalidPartition, "min-cut has no edges");
  mpz_class f = (g.p1 / (g.p1 - alpha)).floor();
  if (f >= static_cast<unsigned long>(n_edges)) return n_edges;
  return static_cast<std::size_t>(f.get_ui());
}

struct PartitionSolution {
  /// labels[l] is the block of item l; blocks are numbered in order of first use.
  std::vector<std::size_t> labels;
  std::size_t n = 0;
  Rational z_star;

  /// y_lk as an N x n 0/1 matrix.
  [[nodiscard]] std::vector<std::vector<int>> assignment() const {
    std::vector<std::vector<int>> y(labels.size(), std::vector<int>(n, 0));
    for (std::size_t l = 0; l < labels.size(); ++l) y[l][labels[l]] = 1;
    return y;
  }

  [[nodiscard]] Partition blocks(const std::vector<EdgeId>& items) const {
    Partition p;
    p.blocks.assign(n, {});
    for (std::size_t l = 0; l < labels.size(); ++l) p.blocks[labels[l]].push_back(items[l]);
    std::erase_if(p.blocks, [](const auto& b) { return b.empty(); });
    return p;
  }
};

namespace detail {

class PartitionSearch {
 public:
  PartitionSearch(const std::vector<Rational>& caps, std::size_t n) : caps_(caps), n_(n) {}

  /// Optimal makespan by depth-first branch-and-bound.
  Rational optimum(const Rational& lower, const Rational& upper) {
    lower_ = lower;
    best_ = upper;
    labels_.assign(caps_.size(), 0);
    loads_.assign(n_, Rational(0));
    done_ = false;
    improve(0, 0, Rational(0));
    return best_;
  }

  /// First assignment in restricted-growth order whose makespan is <= z.
  std::vector<std::size_t> first_within(const Rational& z) {
    limit_ = z;
    labels_.assign(caps_.size(), 0);
    loads_.assign(n_, Rational(0));
    found_.clear();
    find(0, 0);
    return found_;
  }

 private:
  void improve(std::size_t i, std::size_t used, const Rational& current) {
    if (done_) return;
    if (i == caps_.size()) {
      if (current < best_) {
        best_ = current;
        if (best_ == lower_) done_ = true;
      }
      return;
    }
    const std::size_t open = std::min(used + 1, n_);
    for (std::size_t b = 0; b < open && !done_; ++b) {
      Rational load = loads_[b] + caps_[i];
      if (load >= best_) continue;
      loads_[b] = load;
      labels_[i] = b;
      improve(i + 1, std::max(used, b + 1), max(current, load));
      loads_[b] -= caps_[i];
    }
  }

  bool find(std::size_t i, std::size_t used) {
    if (i == caps_.size()) {
      found_ = labels_;
      return true;
    }
    const std::size_t open = std::min(used + 1, n_);
    for (std::size_t b = 0; b < open; ++b) {
      Rational load = loads_[b] + caps_[i];
      if (load > limit_) continue;
      loads_[b] = load;
      labels_[i] = b;
      bool ok = find(i + 1, std::max(used, b + 1));
      loads_[b] -= caps_[i];
      if (ok) return true;
    }
    return false;
  }

  const std::vector<Rational>& caps_;
  std::size_t n_;
  std::vector<std::size_t> labels_;
  std::vector<Rational> loads_;
  std::vector<std::size_t> found_;
  Rational lower_;
  Rational best_;
  Rational limit_;
  bool done_ = false;
};

}  // namespace detail

/// Exact min-max partition of `caps` into at most n blocks. The returned
/// witness is the lexicographically smallest optimal labelling, then split
/// (without raising the makespan) until it uses exactly n nonempty blocks.
inline PartitionSolution solve_min_max_partition(const std::vector<Rational>& caps, std::size_t n) {
  if (caps.size() > kMaxPartitionEdges)
    throw Error(ErrorCode::TooManyEdges, std::to_string(caps.size()) + " items exceed the partition limit of " +
                                             std::to_string(kMaxPartitionEdges));
  if (n < 1 || n > caps.size())
    throw Error(ErrorCode::InvalidPartition,
                "partition size " + std::to_string(n) + " outside [1, " + std::to_string(caps.size()) + "]");
  Rational total;
  Rational largest;
  for (const auto& c : caps) {
    total += c;
    largest = max(largest, c);
  }
  const Rational lower = max(largest, total / Rational(static_cast<long>(n)));
  detail::PartitionSearch search(caps, n);
  // the single-block value is always feasible; start strictly above it
  PartitionSolution sol;
  sol.n = n;
  sol.z_star = search.optimum(lower, total + Rational(1));
  sol.labels = search.first_within(sol.z_star);

  std::vector<std::size_t> sizes(n, 0);
  std::size_t used = 0;
  for (auto l : sol.labels) {
    ++sizes[l];
    used = std::max(used, l + 1);
  }
  while (used < n) {
    std::size_t donor = n;
    for (std::size_t b = used; b-- > 0;)
      if (sizes[b] >= 2) {
        donor = b;
        break;
      }
    std::size_t item = sol.labels.size();
    for (std::size_t l = sol.labels.size(); l-- > 0;)
      if (sol.labels[l] == donor) {
        item = l;
        break;
      }
    sol.labels[item] = used;
    --sizes[donor];
    sizes[used] = 1;
    ++used;
  }
  return sol;
}

struct BudgetAnalysis {
  Rational b1_star;
  Rational b2_lower;
  std::size_t n_star = 0;
  Rational z_star;
  CutSet cut;
  Partition partition;
  PartitionSolution solution;
};

inline std::vector<Rational> cut_capacities(const Network& net, const CutSet& cut) {
  std::vector<Rational> caps;
  for (EdgeId e : cut.edges) caps.push_back(net.edge(e).capacity);
  return caps;
}

/// b1*, the attacker bound, n* and the IP optimum on the canonical min-cut, or
/// the best over every enumerated min-cut when `all_cuts` is set (ties keep
/// the earlier cut).
inline BudgetAnalysis analyze_budget(const Network& net, const FlowAnalysis& a, const GameParams& g,
                                     bool all_cuts = false) {
  BudgetAnalysis out;
  out.b1_star = min_defender_budget(a, g);
  out.b2_lower = attacker_budget_lower_bound(a, g);
  std::vector<CutSet> cuts{a.min_cut};
  if (all_cuts && a.all_min_cuts && !a.all_min_cuts->empty()) cuts = *a.all_min_cuts;
  bool first = true;
  for (const auto& cut : cuts) {
    const std::size_t n = optimal_partition_size(g, a.alpha, cut.edges.size());
    auto sol = solve_min_max_partition(cut_capacities(net, cut), n);
    if (first || sol.z_star < out.z_star) {
      out.n_star = n;
      out.z_star = sol.z_star;
      out.cut = cut;
      out.partition = sol.blocks(cut.edges);
      out.solution = std::move(sol);
      first = false;
    }
  }
  return out;
}

struct BudgetEquilibrium {
  EquilibriumProfile profile;
  Rational z_star;
  BudgetAnalysis analysis;
};

/// Partition equilibrium on the IP-optimal partition of size n*; its largest
/// support attack costs exactly z*.
inline BudgetEquilibrium min_budget_partition_equilibrium(const Network& net, const FlowAnalysis& a,
                                                          const GameParams& g, bool all_cuts = false) {
  BudgetEquilibrium out;
  out.analysis = analyze_budget(net, a, g, all_cuts);
  out.profile = partition_equilibrium(a, g, out.analysis.partition);
  out.z_star = out.analysis.z_star;
  return out;
}

/// Largest attack cost in the support: the smallest b2 the strategy fits in.
inline Rational max_attack_cost(const Network& net, const MixedAttackStrategy& s2) {
  Rational m;
  for (const auto& atom : s2.atoms()) m = max(m, attack_cost(atom.action, net));
  return m;
}

/// Largest transport cost in the support: the smallest b1 the strategy fits in.
inline Rational max_transport_cost(const Network& net, const MixedFlowStrategy& s1) {
  Rational m;
  for (const auto& atom : s1.atoms()) m = max(m, transport_cost(atom.action, net));
  return m;
}

}  // namespace flowgame
