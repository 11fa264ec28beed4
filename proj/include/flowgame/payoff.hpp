#pragma once

#include <flowgame/network.hpp>

#include <utility>
#include <vector>

namespace flowgame {

/// Sum of transport costs b_ij along a path.
inline Rational path_cost(const Network& net, const std::vector<EdgeId>& path) {
  Rational c;
  for (EdgeId e : path) c += net.edge(e).cost;
  return c;
}

/// Edge flows induced by a path-flow vector: x_ij is the total amount of the
/// paths through (i,j). Indexed by edge id.
inline std::vector<Rational> edge_flows(const Network& net, const FlowAction& x) {
  std::vector<Rational> flows(net.edge_count());
  for (const auto& p : x.paths)
    for (EdgeId e : p.edges) flows.at(e) += p.amount;
  return flows;
}

/// Conservation holds by construction, so only the capacity bounds and
/// non-negative amounts are checked.
inline bool is_feasible(const FlowAction& x, const Network& net) {
  for (const auto& p : x.paths)
    if (p.amount.sign() < 0) return false;
  auto flows = edge_flows(net, x);
  for (EdgeId e = 0; e < net.edge_count(); ++e)
    if (flows[e] > net.edge(e).capacity) return false;
  return true;
}

/// F(x): amount of flow leaving the source.
inline Rational flow_value(const FlowAction& x) {
  Rational v;
  for (const auto& p : x.paths) v += p.amount;
  return v;
}

/// T(x) = sum over paths of b_lambda x_lambda.
inline Rational transport_cost(const FlowAction& x, const Network& net) {
  Rational c;
  for (const auto& p : x.paths) c += path_cost(net, p.edges) * p.amount;
  return c;
}

/// C(mu): total capacity of the disrupted edges.
inline Rational attack_cost(const Attack& mu, const Network& net) {
  Rational c;
  for (EdgeId e : mu.edges()) c += net.edge(e).capacity;
  return c;
}

/// x^mu: the path flows that avoid every disrupted edge.
inline FlowAction effective_flow(const FlowAction& x, const Attack& mu) {
  FlowAction out;
  for (const auto& p : x.paths)
    if (!mu.hits(p.edges)) out.paths.push_back(p);
  return out;
}

inline Rational loss(const FlowAction& x, const Attack& mu) {
  Rational lost;
  for (const auto& p : x.paths)
    if (mu.hits(p.edges)) lost += p.amount;
  return lost;
}

/// u1 = p1 F(x^mu) - T(x)
inline Rational payoff_u1(const Network& net, const FlowAction& x, const Attack& mu, const GameParams& g) {
  return g.p1 * flow_value(effective_flow(x, mu)) - transport_cost(x, net);
}

/// u2 = p2 (F(x) - F(x^mu)) - C(mu)
inline Rational payoff_u2(const Network& net, const FlowAction& x, const Attack& mu, const GameParams& g) {
  return g.p2 * loss(x, mu) - attack_cost(mu, net);
}

/// Payoff of the strategically equivalent zero-sum game:
/// F(x^mu) - T(x)/p1 + C(mu)/p2.
inline Rational zero_sum_payoff(const Network& net, const FlowAction& x, const Attack& mu,
                                const GameParams& g) {
  return flow_value(effective_flow(x, mu)) - transport_cost(x, net) / g.p1 + attack_cost(mu, net) / g.p2;
}

/// Exact expectation of f(x, mu) under the product of the two strategies.
template <class F>
Rational expect_joint(const MixedFlowStrategy& s1, const MixedAttackStrategy& s2, F&& f) {
  Rational total;
  for (const auto& a1 : s1.atoms())
    for (const auto& a2 : s2.atoms()) total += a1.prob * a2.prob * f(a1.action, a2.action);
  return total;
}

template <class Action, class F>
Rational expect(const MixedStrategy<Action>& s, F&& f) {
  Rational total;
  for (const auto& a : s.atoms()) total += a.prob * f(a.action);
  return total;
}

struct ExpectedPayoffs {
  Rational u1;
  Rational u2;
};

inline ExpectedPayoffs expected_payoffs(const Network& net, const MixedFlowStrategy& s1,
                                        const MixedAttackStrategy& s2, const GameParams& g) {
  return {expect_joint(s1, s2, [&](const FlowAction& x, const Attack& mu) { return payoff_u1(net, x, mu, g); }),
          expect_joint(s1, s2, [&](const FlowAction& x, const Attack& mu) { return payoff_u2(net, x, mu, g); })};
}

inline Rational expected_zero_sum_payoff(const Network& net, const MixedFlowStrategy& s1,
                                         const MixedAttackStrategy& s2, const GameParams& g) {
  return expect_joint(s1, s2, [&](const FlowAction& x, const Attack& mu) { return zero_sum_payoff(net, x, mu, g); });
}

/// Throws InfeasibleFlow / InvalidPath unless every atom of s1 is a feasible
/// loop-free flow of `net` and every attack is well-formed.
inline void check_strategies(const Network& net, const MixedFlowStrategy& s1, const MixedAttackStrategy& s2) {
  for (const auto& a : s1.atoms()) {
    for (const auto& p : a.action.paths) check_simple_path(net, p.edges);
    if (!is_feasible(a.action, net)) throw Error(ErrorCode::InfeasibleFlow, "flow atom exceeds capacity");
  }
  for (const auto& a : s2.atoms()) check_attack(net, a.action);
}

}  // namespace flowgame
