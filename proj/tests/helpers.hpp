#pragma once

#include <flowgame/flowgame.hpp>

#include <string>
#include <utility>
#include <vector>

namespace testing_helpers {

inline flowgame::Network load(const std::string& name) {
  return flowgame::load_network(std::string(FLOWGAME_FIXTURES) + "/" + name + ".json");
}

inline std::string fixture_path(const std::string& file) { return std::string(FLOWGAME_FIXTURES) + "/" + file; }

inline std::vector<flowgame::EdgeId> path(const flowgame::Network& net, const std::vector<std::string>& nodes) {
  return flowgame::path_from_nodes(net, nodes);
}

inline flowgame::Attack attack(const flowgame::Network& net,
                               const std::vector<std::pair<std::string, std::string>>& edges) {
  std::vector<flowgame::EdgeId> ids;
  for (const auto& [t, h] : edges) ids.push_back(net.resolve_edge(t, h));
  return flowgame::Attack(ids);
}

inline flowgame::FlowAction unit_flow(const flowgame::Network& net,
                                      const std::vector<std::vector<std::string>>& paths) {
  flowgame::FlowAction x;
  for (const auto& p : paths) x.paths.push_back({path(net, p), flowgame::Rational(1)});
  return x;
}

inline flowgame::Network make_network(const std::vector<std::tuple<std::string, std::string, long, long>>& edges,
                                      std::string source = "s", std::string sink = "t") {
  flowgame::RawNetwork raw;
  raw.name = "test";
  raw.source = std::move(source);
  raw.sink = std::move(sink);
  for (const auto& [a, b, c, d] : edges) raw.edges.push_back({a, b, flowgame::Rational(c), flowgame::Rational(d)});
  return flowgame::validate_network(raw);
}

}  // namespace testing_helpers
