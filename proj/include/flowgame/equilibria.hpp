#pragma once

#include <flowgame/flowopt.hpp>
#include <flowgame/network.hpp>
#include <flowgame/payoff.hpp>

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace flowgame {

enum class RegionTag { I, II, III, IIIa, IIIb, Boundary };

constexpr std::string_view to_string(RegionTag t) {
  switch (t) {
    case RegionTag::I: return "I";
    case RegionTag::II: return "II";
    case RegionTag::III: return "III";
    case RegionTag::IIIa: return "IIIa";
    case RegionTag::IIIb: return "IIIb";
    case RegionTag::Boundary: return "BOUNDARY";
  }
  return "?";
}

struct Region {
  RegionTag tag = RegionTag::Boundary;
  std::optional<std::size_t> partition_size;
  std::string boundary;  // which equality is tight, when tag == Boundary

  [[nodiscard]] bool in_region_three() const {
    return tag == RegionTag::III || tag == RegionTag::IIIa || tag == RegionTag::IIIb;
  }
};

/// Exact region classification. With a partition size n > 1, region III is
/// split at p1 = n alpha / (n - 1); n = 1 is IIIa for every p1 > alpha.
inline Region classify_region(const GameParams& g, const Rational& alpha,
                              std::optional<std::size_t> n = std::nullopt) {
  Region r;
  r.partition_size = n;
  if (g.p1 == alpha) {
    r.boundary = "p1 = alpha";
    return r;
  }
  if (g.p1 < alpha) {
    r.tag = RegionTag::I;
    return r;
  }
  if (g.p2 == Rational(1)) {
    r.boundary = "p2 = 1";
    return r;
  }
  if (g.p2 < Rational(1)) {
    r.tag = RegionTag::II;
    return r;
  }
  if (!n) {
    r.tag = RegionTag::III;
    return r;
  }
  if (*n <= 1) {
    r.tag = RegionTag::IIIa;
    return r;
  }
  const Rational lhs = g.p1 * Rational(*n - 1);
  const Rational rhs = Rational(*n) * alpha;
  if (lhs == rhs) {
    r.boundary = "p1 = n alpha / (n - 1)";
    return r;
  }
  r.tag = lhs < rhs ? RegionTag::IIIa : RegionTag::IIIb;
  return r;
}

enum class Construction { Prop1, Prop2, Prop3, Prop8, Prop9a, Prop9b };

constexpr std::string_view to_string(Construction c) {
  switch (c) {
    case Construction::Prop1: return "Prop1";
    case Construction::Prop2: return "Prop2";
    case Construction::Prop3: return "Prop3";
    case Construction::Prop8: return "Prop8";
    case Construction::Prop9a: return "Prop9a";
    case Construction::Prop9b: return "Prop9b";
  }
  return "?";
}

struct EquilibriumProfile {
  MixedFlowStrategy sigma1;
  MixedAttackStrategy sigma2;
  Construction construction = Construction::Prop1;
  Region region;
};

/// Disjoint nonempty blocks of min-cut edges; each block is one attack.
struct Partition {
  std::vector<std::vector<EdgeId>> blocks;

  [[nodiscard]] std::size_t size() const { return blocks.size(); }
  [[nodiscard]] std::vector<EdgeId> ground_set() const {
    std::vector<EdgeId> all;
    for (const auto& b : blocks) all.insert(all.end(), b.begin(), b.end());
    std::sort(all.begin(), all.end());
    return all;
  }
};

/// All set partitions of `edges` in restricted-growth order.
inline std::vector<Partition> enumerate_partitions(const std::vector<EdgeId>& edges) {
  std::vector<Partition> out;
  if (edges.empty()) return out;
  std::vector<std::size_t> label(edges.size(), 0);
  auto rec = [&](auto&& self, std::size_t i, std::size_t blocks) -> void {
    if (i == edges.size()) {
      Partition p;
      p.blocks.assign(blocks, {});
      for (std::size_t k = 0; k < edges.size(); ++k) p.blocks[label[k]].push_back(edges[k]);
      out.push_back(std::move(p));
      return;
    }
    for (std::size_t b = 0; b <= blocks; ++b) {
      label[i] = b;
      self(self, i + 1, std::max(blocks, b + 1));
    }
  };
  rec(rec, 0, 0);
  return out;
}

namespace detail {

template <class Action>
MixedStrategy<Action> positive_atoms(std::vector<Atom<Action>> atoms) {
  std::erase_if(atoms, [](const Atom<Action>& a) { return a.prob.is_zero(); });
  return MixedStrategy<Action>::create(std::move(atoms));
}

inline void require_region_three(const Region& r, const char* what) {
  if (r.tag == RegionTag::Boundary)
    throw Error(ErrorCode::BoundaryParameters, std::string(what) + ": parameters on boundary " + r.boundary);
  if (!r.in_region_three())
    throw Error(ErrorCode::WrongRegion,
                std::string(what) + " needs region III, parameters are in region " + std::string(to_string(r.tag)));
}

inline void require_assumption1(const FlowAnalysis& a, const char* what) {
  if (!a.assumption1)
    throw Error(ErrorCode::AssumptionViolated, std::string(what) + ": T^min = " + a.t_min.str() +
                                                   " differs from alpha * F^max = " + (a.alpha * a.f_max).str());
}

inline MixedFlowStrategy region_three_defender(const FlowAnalysis& a, const GameParams& g) {
  const Rational send = Rational(1) / g.p2;
  return positive_atoms<FlowAction>({{FlowAction{}, Rational(1) - send}, {a.x_star, send}});
}

}  // namespace detail

/// No flow and no attack, for p1 < alpha.
inline EquilibriumProfile region1_equilibrium(const FlowAnalysis& a, const GameParams& g) {
  Region r = classify_region(g, a.alpha);
  if (r.tag == RegionTag::Boundary) throw Error(ErrorCode::BoundaryParameters, "parameters on boundary " + r.boundary);
  if (r.tag != RegionTag::I) throw Error(ErrorCode::WrongRegion, "region I requires p1 < alpha");
  return {MixedFlowStrategy::pure(FlowAction{}), MixedAttackStrategy::pure(Attack{}), Construction::Prop1, r};
}

/// Min-cost max-flow and no attack, for p1 > alpha and p2 < 1.
inline EquilibriumProfile region2_equilibrium(const FlowAnalysis& a, const GameParams& g) {
  Region r = classify_region(g, a.alpha);
  if (r.tag == RegionTag::Boundary) throw Error(ErrorCode::BoundaryParameters, "parameters on boundary " + r.boundary);
  if (r.tag != RegionTag::II) throw Error(ErrorCode::WrongRegion, "region II requires p1 > alpha and p2 < 1");
  detail::require_assumption1(a, "region II equilibrium");
  return {MixedFlowStrategy::pure(a.x_star), MixedAttackStrategy::pure(Attack{}), Construction::Prop2, r};
}

/// The region-III mixture without the assumption-1 check. When the
/// assumption fails this is generally not an equilibrium.
inline EquilibriumProfile region3_candidate(const FlowAnalysis& a, const GameParams& g) {
  Region r = classify_region(g, a.alpha);
  detail::require_region_three(r, "region III profile");
  const Rational no_attack = a.alpha / g.p1;
  auto sigma2 = detail::positive_atoms<Attack>(
      {{Attack{}, no_attack}, {a.min_cut.as_attack(), Rational(1) - no_attack}});
  return {detail::region_three_defender(a, g), std::move(sigma2), Construction::Prop3, r};
}

/// Mixed equilibrium for p1 > alpha, p2 > 1:
/// defender plays x^0 w.p. 1 - 1/p2 and x* w.p. 1/p2;
/// attacker plays mu^0 w.p. alpha/p1 and the canonical min-cut w.p. 1 - alpha/p1.
inline EquilibriumProfile region3_equilibrium(const FlowAnalysis& a, const GameParams& g) {
  detail::require_region_three(classify_region(g, a.alpha), "region III equilibrium");
  detail::require_assumption1(a, "region III equilibrium");
  return region3_candidate(a, g);
}

/// Picks the closed-form equilibrium for the parameter region.
inline EquilibriumProfile default_equilibrium(const FlowAnalysis& a, const GameParams& g) {
  Region r = classify_region(g, a.alpha);
  switch (r.tag) {
    case RegionTag::I: return region1_equilibrium(a, g);
    case RegionTag::II: return region2_equilibrium(a, g);
    case RegionTag::Boundary: throw Error(ErrorCode::BoundaryParameters, "parameters on boundary " + r.boundary);
    default: return region3_equilibrium(a, g);
  }
}

/// The min-cut whose edge set equals the partition's ground set, if any.
inline std::optional<CutSet> matching_min_cut(const FlowAnalysis& a, const std::vector<EdgeId>& ground) {
  if (a.min_cut.edges == ground) return a.min_cut;
  if (a.all_min_cuts)
    for (const auto& c : *a.all_min_cuts)
      if (c.edges == ground) return c;
  return std::nullopt;
}

inline CutSet validate_partition(const FlowAnalysis& a, const Partition& p) {
  if (p.blocks.empty()) throw Error(ErrorCode::InvalidPartition, "partition has no blocks");
  for (const auto& b : p.blocks)
    if (b.empty()) throw Error(ErrorCode::InvalidPartition, "partition has an empty block");
  auto ground = p.ground_set();
  if (std::adjacent_find(ground.begin(), ground.end()) != ground.end())
    throw Error(ErrorCode::InvalidPartition, "partition blocks overlap");
  auto cut = matching_min_cut(a, ground);
  if (!cut) throw Error(ErrorCode::InvalidPartition, "partition does not cover exactly the edges of a min-cut");
  return *cut;
}

/// Partition-based equilibrium. Region IIIa (p1 < n alpha/(n-1)): each block
/// attack w.p. 1 - alpha/p1, mu^0 with the remainder. Region IIIb: each block
/// w.p. alpha/(p1 (n-1)), the whole cut with the remainder.
inline EquilibriumProfile partition_equilibrium(const FlowAnalysis& a, const GameParams& g, const Partition& p) {
  CutSet cut = validate_partition(a, p);
  const std::size_t n = p.size();
  Region r = classify_region(g, a.alpha, n);
  detail::require_region_three(r, "partition equilibrium");
  detail::require_assumption1(a, "partition equilibrium");

  std::vector<Atom<Attack>> atoms;
  Construction tag;
  if (r.tag == RegionTag::IIIa) {
    const Rational each = Rational(1) - a.alpha / g.p1;
    atoms.push_back({Attack{}, Rational(1) - Rational(n) * each});
    for (const auto& b : p.blocks) atoms.push_back({Attack(b), each});
    tag = n == 1 ? Construction::Prop3 : Construction::Prop9a;
  } else {
    const Rational each = a.alpha / (g.p1 * Rational(n - 1));
    for (const auto& b : p.blocks) atoms.push_back({Attack(b), each});
    atoms.push_back({cut.as_attack(), Rational(1) - Rational(n) * each});
    tag = Construction::Prop9b;
  }
  return {detail::region_three_defender(a, g), detail::positive_atoms(std::move(atoms)), tag, r};
}

/// Budget-scaled equilibrium: the defender sends x-dagger = (b1/T^min) x* with
/// probability T^min/(p2 b1); the attacker mixes as in region III.
inline EquilibriumProfile scaled_equilibrium(const FlowAnalysis& a, const GameParams& g, const Rational& b1) {
  Region r = classify_region(g, a.alpha);
  detail::require_region_three(r, "scaled equilibrium");
  detail::require_assumption1(a, "scaled equilibrium");
  if (a.t_min.sign() <= 0) throw Error(ErrorCode::BudgetOutOfRange, "T^min is zero; no budget scaling applies");
  const Rational lower = a.t_min / g.p2;
  if (b1 < lower || b1 > a.t_min)
    throw Error(ErrorCode::BudgetOutOfRange,
                "b1 = " + b1.str() + " outside [" + lower.str() + ", " + a.t_min.str() + "]");
  FlowAction dagger = a.x_star.scaled(b1 / a.t_min);
  const Rational send = a.t_min / (g.p2 * b1);
  auto sigma1 = detail::positive_atoms<FlowAction>({{FlowAction{}, Rational(1) - send}, {dagger, send}});
  const Rational no_attack = a.alpha / g.p1;
  auto sigma2 = detail::positive_atoms<Attack>(
      {{Attack{}, no_attack}, {a.min_cut.as_attack(), Rational(1) - no_attack}});
  return {std::move(sigma1), std::move(sigma2), Construction::Prop8, r};
}

/// Closed-form expectations shared by every region-III equilibrium.
struct TheoremOneQuantities {
  Rational u1;
  Rational u2;
  Rational exp_flow;
  Rational exp_transport;
  Rational exp_attack_cost;
  Rational exp_effective;
  Rational exp_loss;
  Rational yield;
};

inline TheoremOneQuantities theorem1_quantities(const FlowAnalysis& a, const GameParams& g) {
  detail::require_region_three(classify_region(g, a.alpha), "equilibrium quantities");
  detail::require_assumption1(a, "equilibrium quantities");
  TheoremOneQuantities q;
  q.exp_flow = a.f_max / g.p2;
  q.exp_transport = a.t_min / g.p2;
  q.exp_attack_cost = a.f_max - a.t_min / g.p1;
  q.exp_effective = a.t_min / (g.p1 * g.p2);
  q.exp_loss = (a.f_max - a.t_min / g.p1) / g.p2;
  q.yield = a.f_max.is_zero() ? a.alpha / g.p1 : a.t_min / (g.p1 * a.f_max);
  return q;
}

/// The same quantities measured directly on a strategy pair.
inline TheoremOneQuantities measured_quantities(const Network& net, const MixedFlowStrategy& s1,
                                                const MixedAttackStrategy& s2, const GameParams& g) {
  TheoremOneQuantities q;
  auto pay = expected_payoffs(net, s1, s2, g);
  q.u1 = pay.u1;
  q.u2 = pay.u2;
  q.exp_flow = expect(s1, [](const FlowAction& x) { return flow_value(x); });
  q.exp_transport = expect(s1, [&](const FlowAction& x) { return transport_cost(x, net); });
  q.exp_attack_cost = expect(s2, [&](const Attack& mu) { return attack_cost(mu, net); });
  q.exp_effective = expect_joint(s1, s2, [](const FlowAction& x, const Attack& mu) {
    return flow_value(effective_flow(x, mu));
  });
  q.exp_loss = expect_joint(s1, s2, [](const FlowAction& x, const Attack& mu) { return loss(x, mu); });
  q.yield = q.exp_flow.is_zero() ? Rational(0) : q.exp_effective / q.exp_flow;
  return q;
}

struct CutEdgeStat {
  EdgeId edge = 0;
  Rational capacity;
  Rational expected_flow;
  Rational disruption_probability;
};

inline std::vector<CutEdgeStat> cut_edge_statistics(const Network& net, const MixedFlowStrategy& s1,
                                                    const MixedAttackStrategy& s2, const CutSet& cut) {
  std::vector<CutEdgeStat> out;
  for (EdgeId e : cut.edges) {
    CutEdgeStat st;
    st.edge = e;
    st.capacity = net.edge(e).capacity;
    st.expected_flow = expect(s1, [&](const FlowAction& x) { return edge_flows(net, x)[e]; });
    st.disruption_probability = expect(s2, [&](const Attack& mu) { return Rational(mu.contains(e) ? 1 : 0); });
    out.push_back(std::move(st));
  }
  return out;
}

struct BoundCheck {
  std::string name;
  bool applicable = false;  // the action is in the support
  Rational probability;
  Rational bound;
  bool ok = true;
  bool tight = false;
};

struct ProbabilityBoundsReport {
  std::vector<BoundCheck> checks;
  [[nodiscard]] bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.ok; });
  }
};

/// Upper bounds on the probability of x^0, x*, mu^min and mu^0 in any
/// region-III equilibrium. Atoms are matched by exact action equality.
inline ProbabilityBoundsReport check_probability_bounds(const MixedFlowStrategy& s1, const MixedAttackStrategy& s2,
                                                        const FlowAnalysis& a, const GameParams& g) {
  ProbabilityBoundsReport rep;
  auto add = [&](std::string name, Rational prob, Rational bound) {
    BoundCheck c;
    c.name = std::move(name);
    c.applicable = prob.sign() > 0;
    c.ok = !c.applicable || prob <= bound;
    c.tight = c.applicable && prob == bound;
    c.probability = std::move(prob);
    c.bound = std::move(bound);
    rep.checks.push_back(std::move(c));
  };
  add("sigma1(x0) <= 1 - 1/p2", s1.probability_of(FlowAction{}), Rational(1) - Rational(1) / g.p2);
  add("sigma1(x*) <= 1/p2", s1.probability_of(a.x_star), Rational(1) / g.p2);
  add("sigma2(mu_min) <= 1 - alpha/p1", s2.probability_of(a.min_cut.as_attack()), Rational(1) - a.alpha / g.p1);
  add("sigma2(mu0) <= alpha/p1", s2.probability_of(Attack{}), a.alpha / g.p1);
  return rep;
}

}  // namespace flowgame
