#pragma once

#include <flowgame/error.hpp>
#include <flowgame/rational.hpp>

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace flowgame {

using NodeId = std::size_t;
using EdgeId = std::size_t;

struct Edge {
  NodeId tail = 0;
  NodeId head = 0;
  Rational capacity;
  Rational cost;
};

/// Unvalidated network description, as read from JSON.
struct RawEdge {
  std::string tail;
  std::string head;
  Rational capacity;
  Rational cost;
};

struct RawNetwork {
  std::string name;
  std::string source;
  std::string sink;
  /// Optional explicit node list; inferred from the edges when empty.
  std::vector<std::string> nodes;
  std::vector<RawEdge> edges;
};

class Network;
Network validate_network(const RawNetwork& raw);

/// Capacitated directed graph with per-edge transport cost and a distinguished
/// source and sink. Edge order is the canonical edge index used for every
/// tie-break in the library. Only constructible through validate_network.
class Network {
 public:
  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] std::size_t node_count() const { return node_names_.size(); }
  [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }
  [[nodiscard]] NodeId source() const { return source_; }
  [[nodiscard]] NodeId sink() const { return sink_; }
  [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
  [[nodiscard]] const Edge& edge(EdgeId e) const { return edges_.at(e); }
  [[nodiscard]] const std::vector<std::string>& node_names() const { return node_names_; }
  [[nodiscard]] const std::string& node_name(NodeId n) const { return node_names_.at(n); }

  /// Outgoing edge indices of a node, in canonical order.
  [[nodiscard]] const std::vector<EdgeId>& out_edges(NodeId n) const { return out_.at(n); }
  [[nodiscard]] const std::vector<EdgeId>& in_edges(NodeId n) const { return in_.at(n); }

  [[nodiscard]] std::optional<NodeId> find_node(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// All edges tail -> head (more than one when parallel edges exist).
  [[nodiscard]] std::vector<EdgeId> find_edges(NodeId tail, NodeId head) const {
    std::vector<EdgeId> out;
    for (EdgeId e : out_.at(tail))
      if (edges_[e].head == head) out.push_back(e);
    return out;
  }

  /// Resolves a (tail, head) name pair to its unique edge.
  [[nodiscard]] EdgeId resolve_edge(const std::string& tail, const std::string& head) const {
    auto t = find_node(tail);
    auto h = find_node(head);
    if (!t || !h) throw Error(ErrorCode::InvalidEdge, "unknown node in edge (" + tail + "," + head + ")");
    auto found = find_edges(*t, *h);
    if (found.empty()) throw Error(ErrorCode::InvalidEdge, "no edge (" + tail + "," + head + ")");
    if (found.size() > 1)
      throw Error(ErrorCode::AmbiguousEdge,
                  "parallel edges (" + tail + "," + head + "); use an edge index");
    return found.front();
  }

  [[nodiscard]] std::string edge_label(EdgeId e) const {
    const Edge& ed = edges_.at(e);
    return "(" + node_names_[ed.tail] + "," + node_names_[ed.head] + ")";
  }

  [[nodiscard]] RawNetwork to_raw() const {
    RawNetwork raw;
    raw.name = name_;
    raw.source = node_names_[source_];
    raw.sink = node_names_[sink_];
    raw.nodes = node_names_;
    for (const Edge& e : edges_)
      raw.edges.push_back({node_names_[e.tail], node_names_[e.head], e.capacity, e.cost});
    return raw;
  }

 private:
  friend Network validate_network(const RawNetwork& raw);
  Network() = default;

  std::string name_;
  std::vector<std::string> node_names_;
  std::map<std::string, NodeId> index_;
  NodeId source_ = 0;
  NodeId sink_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<std::vector<EdgeId>> in_;
};

inline Network validate_network(const RawNetwork& raw) {
  Network net;
  net.name_ = raw.name;

  auto add_node = [&](const std::string& n) {
    if (net.index_.count(n)) return;
    net.index_.emplace(n, net.node_names_.size());
    net.node_names_.push_back(n);
  };
  const bool declared = !raw.nodes.empty();
  if (declared) {
    for (const auto& n : raw.nodes) add_node(n);
  } else {
    add_node(raw.source);
    for (const auto& e : raw.edges) {
      add_node(e.tail);
      add_node(e.head);
    }
    add_node(raw.sink);
  }

  auto lookup = [&](const std::string& n) -> NodeId {
    auto it = net.index_.find(n);
    if (it == net.index_.end()) throw Error(ErrorCode::MissingNode, "node '" + n + "' is not declared");
    return it->second;
  };
  net.source_ = lookup(raw.source);
  net.sink_ = lookup(raw.sink);
  if (net.source_ == net.sink_) throw Error(ErrorCode::SourceEqualsSink, "source and sink coincide");

  net.out_.assign(net.node_names_.size(), {});
  net.in_.assign(net.node_names_.size(), {});
  for (const auto& re : raw.edges) {
    Edge e{lookup(re.tail), lookup(re.head), re.capacity, re.cost};
    const std::string label = "(" + re.tail + "," + re.head + ")";
    if (e.tail == e.head) throw Error(ErrorCode::SelfLoop, "self-loop at " + re.tail);
    if (e.capacity.sign() < 0) throw Error(ErrorCode::NegativeCapacity, "edge " + label);
    if (e.cost.sign() < 0) throw Error(ErrorCode::NegativeCost, "edge " + label);
    const EdgeId id = net.edges_.size();
    net.out_[e.tail].push_back(id);
    net.in_[e.head].push_back(id);
    net.edges_.push_back(std::move(e));
  }

  std::vector<bool> seen(net.node_names_.size(), false);
  std::deque<NodeId> queue{net.source_};
  seen[net.source_] = true;
  while (!queue.empty()) {
    NodeId u = queue.front();
    queue.pop_front();
    for (EdgeId e : net.out_[u]) {
      NodeId v = net.edges_[e].head;
      if (!seen[v]) {
        seen[v] = true;
        queue.push_back(v);
      }
    }
  }
  if (!seen[net.sink_])
    throw Error(ErrorCode::NoPathSourceToSink, "sink '" + raw.sink + "' unreachable from source");
  return net;
}

/// Flow along one simple s-t path, stored as its edge sequence so parallel
/// edges stay distinguishable.
struct PathFlow {
  std::vector<EdgeId> edges;
  Rational amount;

  friend bool operator==(const PathFlow&, const PathFlow&) = default;
};

/// Node sequence visited by a path.
inline std::vector<NodeId> path_nodes(const Network& net, const std::vector<EdgeId>& edges) {
  std::vector<NodeId> nodes;
  if (edges.empty()) return nodes;
  nodes.push_back(net.edge(edges.front()).tail);
  for (EdgeId e : edges) nodes.push_back(net.edge(e).head);
  return nodes;
}

inline std::vector<std::string> path_node_names(const Network& net, const std::vector<EdgeId>& edges) {
  std::vector<std::string> names;
  for (NodeId n : path_nodes(net, edges)) names.push_back(net.node_name(n));
  return names;
}

/// Throws InvalidPath unless `edges` is a simple s-t path of `net`.
inline void check_simple_path(const Network& net, const std::vector<EdgeId>& edges) {
  if (edges.empty()) throw Error(ErrorCode::InvalidPath, "empty path");
  for (EdgeId e : edges)
    if (e >= net.edge_count()) throw Error(ErrorCode::InvalidPath, "edge index out of range");
  if (net.edge(edges.front()).tail != net.source())
    throw Error(ErrorCode::InvalidPath, "path does not start at the source");
  if (net.edge(edges.back()).head != net.sink())
    throw Error(ErrorCode::InvalidPath, "path does not end at the sink");
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (net.edge(edges[i - 1]).head != net.edge(edges[i]).tail)
      throw Error(ErrorCode::InvalidPath, "consecutive edges are not adjacent");
  auto nodes = path_nodes(net, edges);
  std::sort(nodes.begin(), nodes.end());
  if (std::adjacent_find(nodes.begin(), nodes.end()) != nodes.end())
    throw Error(ErrorCode::InvalidPath, "path repeats a node");
}

/// Builds the edge sequence of a path given by node names.
inline std::vector<EdgeId> path_from_nodes(const Network& net, const std::vector<std::string>& nodes) {
  if (nodes.size() < 2) throw Error(ErrorCode::InvalidPath, "path needs at least two nodes");
  std::vector<EdgeId> edges;
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    try {
      edges.push_back(net.resolve_edge(nodes[i - 1], nodes[i]));
    } catch (const Error& err) {
      if (err.code() == ErrorCode::AmbiguousEdge) throw;
      throw Error(ErrorCode::InvalidPath, err.what());
    }
  }
  check_simple_path(net, edges);
  return edges;
}

/// Defender pure action: a vector of simple s-t path flows. Empty is x^0.
struct FlowAction {
  std::vector<PathFlow> paths;

  /// Merges paths with identical edge sequence, drops zero amounts and
  /// sorts by edge sequence, so that equal flows compare equal.
  [[nodiscard]] FlowAction canonical() const {
    std::map<std::vector<EdgeId>, Rational> merged;
    for (const auto& p : paths) merged[p.edges] += p.amount;
    FlowAction out;
    for (auto& [edges, amount] : merged)
      if (!amount.is_zero()) out.paths.push_back({edges, amount});
    return out;
  }

  /// Every path amount multiplied by `factor`.
  [[nodiscard]] FlowAction scaled(const Rational& factor) const {
    FlowAction out = *this;
    for (auto& p : out.paths) p.amount *= factor;
    return out;
  }

  [[nodiscard]] bool empty() const { return canonical().paths.empty(); }

  friend bool operator==(const FlowAction& a, const FlowAction& b) {
    return a.canonical().paths == b.canonical().paths;
  }
};

/// Attacker pure action: a set of disrupted edges. Empty is mu^0.
class Attack {
 public:
  Attack() = default;
  explicit Attack(std::vector<EdgeId> edges) : edges_(std::move(edges)) {
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  }

  [[nodiscard]] const std::vector<EdgeId>& edges() const { return edges_; }
  [[nodiscard]] bool empty() const { return edges_.empty(); }
  [[nodiscard]] std::size_t size() const { return edges_.size(); }
  [[nodiscard]] bool contains(EdgeId e) const {
    return std::binary_search(edges_.begin(), edges_.end(), e);
  }
  [[nodiscard]] bool hits(const std::vector<EdgeId>& path) const {
    return std::any_of(path.begin(), path.end(), [&](EdgeId e) { return contains(e); });
  }
  [[nodiscard]] bool subset_of(const std::vector<EdgeId>& sorted_edges) const {
    return std::includes(sorted_edges.begin(), sorted_edges.end(), edges_.begin(), edges_.end());
  }

  friend bool operator==(const Attack&, const Attack&) = default;
  friend auto operator<=>(const Attack&, const Attack&) = default;

 private:
  std::vector<EdgeId> edges_;
};

inline void check_attack(const Network& net, const Attack& mu) {
  for (EdgeId e : mu.edges())
    if (e >= net.edge_count()) throw Error(ErrorCode::InvalidEdge, "attack edge index out of range");
}

/// Marginal values of effective flow (p1) and of lost flow (p2).
struct GameParams {
  Rational p1;
  Rational p2;

  static GameParams make(Rational p1, Rational p2) {
    if (p1.sign() <= 0 || p2.sign() <= 0)
      throw Error(ErrorCode::ParseError, "p1 and p2 must be positive");
    return {std::move(p1), std::move(p2)};
  }
};

template <class Action>
struct Atom {
  Action action;
  Rational prob;
};

/// Finite-support mixed strategy with strictly positive probabilities that
/// sum to exactly one.
template <class Action>
class MixedStrategy {
 public:
  static MixedStrategy create(std::vector<Atom<Action>> atoms) {
    if (atoms.empty()) throw Error(ErrorCode::InvalidStrategy, "strategy has no atoms");
    Rational total;
    for (const auto& a : atoms) {
      if (a.prob.sign() <= 0)
        throw Error(ErrorCode::InvalidStrategy, "atom probability must be positive, got " + a.prob.str());
      total += a.prob;
    }
    if (total != Rational(1))
      throw Error(ErrorCode::InvalidStrategy, "probabilities sum to " + total.str() + ", not 1");
    MixedStrategy s;
    s.atoms_ = std::move(atoms);
    return s;
  }

  static MixedStrategy pure(Action a) { return create({{std::move(a), Rational(1)}}); }

  [[nodiscard]] const std::vector<Atom<Action>>& atoms() const { return atoms_; }
  [[nodiscard]] std::size_t size() const { return atoms_.size(); }

  /// Total probability on atoms equal to `a`.
  [[nodiscard]] Rational probability_of(const Action& a) const {
    Rational p;
    for (const auto& atom : atoms_)
      if (atom.action == a) p += atom.prob;
    return p;
  }

 private:
  std::vector<Atom<Action>> atoms_;
};

using MixedFlowStrategy = MixedStrategy<FlowAction>;
using MixedAttackStrategy = MixedStrategy<Attack>;

}  // namespace flowgame
