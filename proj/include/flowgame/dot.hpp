#pragma once

#include <flowgame/network.hpp>
#include <flowgame/payoff.hpp>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace flowgame {

struct DotOptions {
  /// Per-edge flow shown as the third label field; edges with positive flow are bold.
  std::optional<std::vector<Rational>> edge_flow;
  /// Cut edges are dashed.
  std::vector<EdgeId> cut;
  /// Attacked edges are drawn red, labelled with their disruption probability when below 1.
  std::optional<std::vector<Rational>> disruption;
};

namespace dot_detail {

inline std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace dot_detail

/// Expected edge flow under a mixed flow strategy (the edge flow itself for a pure one).
inline std::vector<Rational> expected_edge_flows(const Network& net, const MixedFlowStrategy& s) {
  std::vector<Rational> out(net.edge_count());
  for (const auto& a : s.atoms()) {
    auto f = edge_flows(net, a.action);
    for (EdgeId e = 0; e < net.edge_count(); ++e) out[e] += a.prob * f[e];
  }
  return out;
}

inline std::vector<Rational> disruption_probabilities(const Network& net, const MixedAttackStrategy& s) {
  std::vector<Rational> out(net.edge_count());
  for (const auto& a : s.atoms())
    for (EdgeId e : a.action.edges()) out[e] += a.prob;
  return out;
}

/// Deterministic Graphviz rendering: nodes and edges in canonical order,
/// labels "cap,cost[,flow]".
inline std::string to_dot(const Network& net, const DotOptions& opts = {}) {
  using dot_detail::quote;
  std::ostringstream os;
  os << "digraph " << quote(net.name().empty() ? "network" : net.name()) << " {\n";
  os << "  rankdir=LR;\n";
  os << "  node [shape=circle];\n";
  for (NodeId n = 0; n < net.node_count(); ++n) {
    os << "  " << quote(net.node_name(n));
    if (n == net.source() || n == net.sink()) os << " [shape=doublecircle]";
    os << ";\n";
  }
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    const Edge& ed = net.edge(e);
    std::string label = ed.capacity.str() + "," + ed.cost.str();
    std::vector<std::string> style;
    std::vector<std::string> attrs;
    if (opts.edge_flow) {
      const Rational& f = (*opts.edge_flow)[e];
      label += "," + f.str();
      if (f.sign() > 0) style.emplace_back("bold");
    }
    if (std::binary_search(opts.cut.begin(), opts.cut.end(), e)) style.emplace_back("dashed");
    if (opts.disruption && (*opts.disruption)[e].sign() > 0) {
      attrs.emplace_back("color=red");
      if ((*opts.disruption)[e] != Rational(1)) label += " p=" + (*opts.disruption)[e].str();
    }
    os << "  " << quote(net.node_name(ed.tail)) << " -> " << quote(net.node_name(ed.head)) << " [label="
       << quote(label);
    if (!style.empty()) {
      std::string s;
      for (const auto& x : style) s += (s.empty() ? "" : ",") + x;
      os << ", style=" << quote(s);
    }
    for (const auto& a : attrs) os << ", " << a;
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace flowgame
