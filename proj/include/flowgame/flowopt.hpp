#pragma once

#include <flowgame/network.hpp>
#include <flowgame/payoff.hpp>

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace flowgame {

inline constexpr std::size_t kDefaultPathLimit = 10000;
inline constexpr std::size_t kDefaultNodeLimit = 20;

struct CutSet {
  std::vector<NodeId> source_side;  // sorted
  std::vector<EdgeId> edges;        // sorted
  Rational capacity;

  [[nodiscard]] Attack as_attack() const { return Attack(edges); }
  friend bool operator==(const CutSet&, const CutSet&) = default;
};

struct PathInfo {
  std::vector<EdgeId> edges;
  Rational cost;
};

struct MaxFlowResult {
  Rational value;
  std::vector<Rational> edge_flow;
};

struct MinCostFlowResult {
  FlowAction x_star;
  Rational t_min;
  Rational f_max;
};

struct CutAlphaReport {
  CutSet cut;
  /// Cheapest path cost through each cut edge (absent when no s-t path uses it).
  std::vector<std::optional<Rational>> alphas;
  bool holds = false;
};

struct Assumption2Report {
  bool holds = false;
  std::optional<std::size_t> witness;  // index into per_cut
  std::vector<CutAlphaReport> per_cut;
};

struct FlowAnalysis {
  Rational f_max;
  Rational t_min;
  Rational alpha;
  FlowAction x_star;
  CutSet min_cut;
  std::optional<std::vector<CutSet>> all_min_cuts;
  bool assumption1 = false;
  std::optional<Assumption2Report> assumption2;
};

namespace detail {

/// Residual arc: forward arcs carry capacity - flow, backward arcs carry flow.
struct ResidualArc {
  EdgeId edge;
  bool forward;
};

inline std::vector<std::vector<ResidualArc>> residual_adjacency(const Network& net) {
  std::vector<std::vector<ResidualArc>> adj(net.node_count());
  for (NodeId u = 0; u < net.node_count(); ++u) {
    for (EdgeId e : net.out_edges(u)) adj[u].push_back({e, true});
    for (EdgeId e : net.in_edges(u)) adj[u].push_back({e, false});
  }
  return adj;
}

inline Rational residual(const Network& net, const std::vector<Rational>& flow, const ResidualArc& a) {
  return a.forward ? net.edge(a.edge).capacity - flow[a.edge] : flow[a.edge];
}

inline NodeId arc_target(const Network& net, const ResidualArc& a) {
  return a.forward ? net.edge(a.edge).head : net.edge(a.edge).tail;
}

inline void push(std::vector<Rational>& flow, const ResidualArc& a, const Rational& amount) {
  if (a.forward)
    flow[a.edge] += amount;
  else
    flow[a.edge] -= amount;
}

/// Nodes reachable from the source in the residual graph of `flow`.
inline std::vector<bool> residual_reachable(const Network& net, const std::vector<Rational>& flow) {
  auto adj = residual_adjacency(net);
  std::vector<bool> seen(net.node_count(), false);
  std::deque<NodeId> queue{net.source()};
  seen[net.source()] = true;
  while (!queue.empty()) {
    NodeId u = queue.front();
    queue.pop_front();
    for (const auto& a : adj[u]) {
      NodeId v = arc_target(net, a);
      if (!seen[v] && residual(net, flow, a).sign() > 0) {
        seen[v] = true;
        queue.push_back(v);
      }
    }
  }
  return seen;
}

inline CutSet cut_from_side(const Network& net, const std::vector<bool>& in_source_side) {
  CutSet cut;
  for (NodeId n = 0; n < net.node_count(); ++n)
    if (in_source_side[n]) cut.source_side.push_back(n);
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    const Edge& ed = net.edge(e);
    if (in_source_side[ed.tail] && !in_source_side[ed.head]) {
      cut.edges.push_back(e);
      cut.capacity += ed.capacity;
    }
  }
  return cut;
}

/// Splits an edge flow into simple s-t paths, walking edges in canonical
/// order. Cycles met on the walk are cancelled (they carry no s-t flow).
inline FlowAction decompose(const Network& net, std::vector<Rational> flow) {
  FlowAction x;
  while (true) {
    std::vector<EdgeId> walk;
    std::vector<std::optional<std::size_t>> position(net.node_count());
    NodeId u = net.source();
    position[u] = 0;
    bool stuck = false;
    while (u != net.sink()) {
      std::optional<EdgeId> next;
      for (EdgeId e : net.out_edges(u))
        if (flow[e].sign() > 0) {
          next = e;
          break;
        }
      if (!next) {
        stuck = true;
        break;
      }
      walk.push_back(*next);
      u = net.edge(*next).head;
      if (position[u]) {
        // cancel the cycle walk[position[u]..end)
        std::size_t start = *position[u];
        Rational amount = flow[walk[start]];
        for (std::size_t i = start; i < walk.size(); ++i) amount = min(amount, flow[walk[i]]);
        for (std::size_t i = start; i < walk.size(); ++i) flow[walk[i]] -= amount;
        walk.clear();
        std::fill(position.begin(), position.end(), std::nullopt);
        u = net.source();
        position[u] = 0;
        continue;
      }
      position[u] = walk.size();
    }
    if (stuck) break;
    Rational amount = flow[walk.front()];
    for (EdgeId e : walk) amount = min(amount, flow[e]);
    for (EdgeId e : walk) flow[e] -= amount;
    x.paths.push_back({walk, amount});
  }
  return x.canonical();
}

}  // namespace detail

/// Maximum s-t flow by shortest augmenting paths (Edmonds-Karp) in exact
/// arithmetic. Residual arcs are scanned in canonical edge order.
inline MaxFlowResult max_flow(const Network& net) {
  auto adj = detail::residual_adjacency(net);
  std::vector<Rational> flow(net.edge_count());
  Rational value;
  while (true) {
    std::vector<std::optional<detail::ResidualArc>> parent(net.node_count());
    std::vector<bool> seen(net.node_count(), false);
    std::deque<NodeId> queue{net.source()};
    seen[net.source()] = true;
    while (!queue.empty() && !seen[net.sink()]) {
      NodeId u = queue.front();
      queue.pop_front();
      for (const auto& a : adj[u]) {
        NodeId v = detail::arc_target(net, a);
        if (seen[v] || detail::residual(net, flow, a).sign() <= 0) continue;
        seen[v] = true;
        parent[v] = a;
        queue.push_back(v);
      }
    }
    if (!seen[net.sink()]) break;
    std::vector<detail::ResidualArc> path;
    for (NodeId v = net.sink(); v != net.source();) {
      path.push_back(*parent[v]);
      const Edge& e = net.edge(parent[v]->edge);
      v = parent[v]->forward ? e.tail : e.head;
    }
    Rational bottleneck = detail::residual(net, flow, path.front());
    for (const auto& a : path) bottleneck = min(bottleneck, detail::residual(net, flow, a));
    for (const auto& a : path) detail::push(flow, a, bottleneck);
    value += bottleneck;
  }
  return {value, flow};
}

/// Minimum-cost maximum flow by successive shortest augmenting paths with
/// node potentials. Shortest means least reduced cost, then fewest arcs, then
/// lowest node index; the result is decomposed into simple paths.
inline MinCostFlowResult min_cost_max_flow(const Network& net) {
  const std::size_t n = net.node_count();
  auto adj = detail::residual_adjacency(net);
  std::vector<Rational> flow(net.edge_count());
  std::vector<Rational> potential(n);
  Rational value;

  auto arc_cost = [&](const detail::ResidualArc& a) {
    return a.forward ? net.edge(a.edge).cost : -net.edge(a.edge).cost;
  };

  while (true) {
    std::vector<std::optional<std::pair<Rational, std::size_t>>> dist(n);
    std::vector<std::optional<detail::ResidualArc>> parent(n);
    std::vector<bool> done(n, false);
    dist[net.source()] = std::make_pair(Rational(0), std::size_t{0});
    while (true) {
      std::optional<NodeId> u;
      for (NodeId v = 0; v < n; ++v)
        if (!done[v] && dist[v] && (!u || *dist[v] < *dist[*u])) u = v;
      if (!u) break;
      done[*u] = true;
      for (const auto& a : adj[*u]) {
        if (detail::residual(net, flow, a).sign() <= 0) continue;
        NodeId v = detail::arc_target(net, a);
        if (done[v]) continue;
        std::pair<Rational, std::size_t> cand{dist[*u]->first + arc_cost(a) + potential[*u] - potential[v],
                                              dist[*u]->second + 1};
        if (!dist[v] || cand < *dist[v]) {
          dist[v] = cand;
          parent[v] = a;
        }
      }
    }
    if (!dist[net.sink()]) break;
    for (NodeId v = 0; v < n; ++v)
      if (dist[v]) potential[v] += dist[v]->first;

    std::vector<detail::ResidualArc> path;
    for (NodeId v = net.sink(); v != net.source();) {
      path.push_back(*parent[v]);
      const Edge& e = net.edge(parent[v]->edge);
      v = parent[v]->forward ? e.tail : e.head;
    }
    Rational bottleneck = detail::residual(net, flow, path.front());
    for (const auto& a : path) bottleneck = min(bottleneck, detail::residual(net, flow, a));
    for (const auto& a : path) detail::push(flow, a, bottleneck);
    value += bottleneck;
  }

  MinCostFlowResult out;
  out.x_star = detail::decompose(net, flow);
  out.t_min = transport_cost(out.x_star, net);
  out.f_max = value;
  return out;
}

/// Canonical min-cut: source side is the residual-reachable set of a max-flow.
inline CutSet min_cut(const Network& net) {
  auto mf = max_flow(net);
  return detail::cut_from_side(net, detail::residual_reachable(net, mf.edge_flow));
}

/// Every s-t partition whose cut capacity equals `f_max`, deduplicated by
/// edge set, found by exhaustive enumeration over the non-terminal nodes.
inline std::vector<CutSet> enumerate_min_cuts(const Network& net, const Rational& f_max,
                                              std::size_t node_limit = kDefaultNodeLimit) {
  std::vector<NodeId> free_nodes;
  for (NodeId v = 0; v < net.node_count(); ++v)
    if (v != net.source() && v != net.sink()) free_nodes.push_back(v);
  if (free_nodes.size() > node_limit || free_nodes.size() >= 63)
    throw Error(ErrorCode::TooManyNodes, std::to_string(free_nodes.size()) + " non-terminal nodes exceed the limit of " +
                                             std::to_string(node_limit));
  std::vector<CutSet> cuts;
  std::set<std::vector<EdgeId>> seen;
  const std::uint64_t count = std::uint64_t{1} << free_nodes.size();
  std::vector<bool> side(net.node_count(), false);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    std::fill(side.begin(), side.end(), false);
    side[net.source()] = true;
    for (std::size_t i = 0; i < free_nodes.size(); ++i)
      if (mask >> i & 1U) side[free_nodes[i]] = true;
    Rational cap;
    bool over = false;
    for (EdgeId e = 0; e < net.edge_count() && !over; ++e) {
      const Edge& ed = net.edge(e);
      if (side[ed.tail] && !side[ed.head]) {
        cap += ed.capacity;
        over = cap > f_max;
      }
    }
    if (over || cap != f_max) continue;
    CutSet cut = detail::cut_from_side(net, side);
    if (seen.insert(cut.edges).second) cuts.push_back(std::move(cut));
  }
  return cuts;
}

/// Cheapest s-t path cost (label-setting; costs are non-negative).
inline Rational alpha(const Network& net) {
  const std::size_t n = net.node_count();
  std::vector<std::optional<Rational>> dist(n);
  std::vector<bool> done(n, false);
  dist[net.source()] = Rational(0);
  while (true) {
    std::optional<NodeId> u;
    for (NodeId v = 0; v < n; ++v)
      if (!done[v] && dist[v] && (!u || *dist[v] < *dist[*u])) u = v;
    if (!u) break;
    done[*u] = true;
    for (EdgeId e : net.out_edges(*u)) {
      NodeId v = net.edge(e).head;
      Rational cand = *dist[*u] + net.edge(e).cost;
      if (!dist[v] || cand < *dist[v]) dist[v] = cand;
    }
  }
  return dist[net.sink()].value();
}

/// All simple s-t paths in DFS order over the canonical edge order.
inline std::vector<PathInfo> enumerate_paths(const Network& net, std::size_t limit = kDefaultPathLimit) {
  std::vector<PathInfo> paths;
  std::vector<bool> on_path(net.node_count(), false);
  std::vector<EdgeId> stack;
  Rational cost;
  auto dfs = [&](auto&& self, NodeId u) -> void {
    if (u == net.sink()) {
      if (paths.size() >= limit)
        throw Error(ErrorCode::TooManyPaths, "more than " + std::to_string(limit) + " simple s-t paths");
      paths.push_back({stack, cost});
      return;
    }
    on_path[u] = true;
    for (EdgeId e : net.out_edges(u)) {
      NodeId v = net.edge(e).head;
      if (on_path[v]) continue;
      stack.push_back(e);
      cost += net.edge(e).cost;
      self(self, v);
      cost -= net.edge(e).cost;
      stack.pop_back();
    }
    on_path[u] = false;
  };
  dfs(dfs, net.source());
  return paths;
}

/// T^min == alpha * F^max, which holds exactly when the min-cost max-flow uses
/// only cheapest paths.
inline bool check_assumption1(const FlowAnalysis& analysis) {
  return analysis.t_min == analysis.alpha * analysis.f_max;
}

/// For each min-cut, alpha_k is the cheapest path cost through cut edge e_k;
/// a cut satisfies the assumption when every x*-path through e_k costs alpha_k.
inline Assumption2Report check_assumption2(const Network& net, const FlowAnalysis& analysis,
                                           std::size_t path_limit = kDefaultPathLimit,
                                           std::size_t node_limit = kDefaultNodeLimit) {
  auto paths = enumerate_paths(net, path_limit);
  std::vector<CutSet> cuts = analysis.all_min_cuts ? *analysis.all_min_cuts
                                                   : enumerate_min_cuts(net, analysis.f_max, node_limit);
  Assumption2Report report;
  for (auto& cut : cuts) {
    CutAlphaReport r;
    r.cut = cut;
    r.holds = true;
    for (EdgeId e : cut.edges) {
      std::optional<Rational> best;
      for (const auto& p : paths)
        if (std::find(p.edges.begin(), p.edges.end(), e) != p.edges.end())
          if (!best || p.cost < *best) best = p.cost;
      r.alphas.push_back(best);
      for (const auto& xp : analysis.x_star.paths) {
        if (std::find(xp.edges.begin(), xp.edges.end(), e) == xp.edges.end()) continue;
        if (!best || path_cost(net, xp.edges) != *best) r.holds = false;
      }
    }
    if (r.holds && !report.witness) report.witness = report.per_cut.size();
    report.per_cut.push_back(std::move(r));
  }
  report.holds = report.witness.has_value();
  return report;
}

struct AnalysisOptions {
  bool enumerate_cuts = true;
  bool check_assumption2 = false;
  std::size_t node_limit = kDefaultNodeLimit;
  std::size_t path_limit = kDefaultPathLimit;
};

inline FlowAnalysis analyze(const Network& net, const AnalysisOptions& opts = {}) {
  FlowAnalysis a;
  auto mcf = min_cost_max_flow(net);
  a.f_max = mcf.f_max;
  a.t_min = mcf.t_min;
  a.x_star = mcf.x_star;
  a.alpha = alpha(net);
  a.min_cut = min_cut(net);
  if (opts.enumerate_cuts) a.all_min_cuts = enumerate_min_cuts(net, a.f_max, opts.node_limit);
  a.assumption1 = check_assumption1(a);
  if (opts.check_assumption2) a.assumption2 = check_assumption2(net, a, opts.path_limit, opts.node_limit);
  return a;
}

}  // namespace flowgame
