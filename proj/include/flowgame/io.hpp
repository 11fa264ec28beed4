#pragma once

#include <flowgame/budget.hpp>
#include <flowgame/equilibria.hpp>
#include <flowgame/flowopt.hpp>
#include <flowgame/mcsim.hpp>
#include <flowgame/verify.hpp>

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace flowgame {

using Json = nlohmann::ordered_json;

namespace io_detail {

[[noreturn]] inline void fail(const std::string& msg) { throw Error(ErrorCode::ParseError, msg); }

inline const Json& require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) fail(where + ": missing \"" + key + "\"");
  return j.at(key);
}

inline std::string as_string(const Json& j, const std::string& where) {
  if (!j.is_string()) fail(where + ": expected a string");
  return j.get<std::string>();
}

/// Rationals are strings ("9/2", "0.25", "3"); plain JSON integers and
/// decimals are accepted and read exactly from their literal text.
inline Rational as_rational(const Json& j, const std::string& where) {
  try {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer() || j.is_number_unsigned()) return Rational::parse(j.dump());
    if (j.is_number_float()) return Rational::parse(j.dump());
  } catch (const std::invalid_argument& e) {
    fail(where + ": " + e.what());
  }
  fail(where + ": expected a rational number");
}

inline std::size_t as_index(const Json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    fail(where + ": expected a non-negative integer");
  return j.get<std::size_t>();
}

inline std::vector<std::string> as_names(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where + ": expected an array of node names");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_string(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace io_detail

inline const char* kMultiTerminalMessage =
    "multiple sources or sinks are not supported directly: add an extra source node with an edge of unbounded "
    "capacity and zero cost to every original source (and likewise an extra sink fed by every original sink), "
    "then pass the single super-source and super-sink";

// ---------------------------------------------------------------- networks

inline RawNetwork raw_network_from_json(const Json& j) {
  using namespace io_detail;
  if (!j.is_object()) fail("network: expected a JSON object");
  if (j.contains("sources") || j.contains("sinks")) throw Error(ErrorCode::MultipleTerminals, kMultiTerminalMessage);
  if ((j.contains("source") && j["source"].is_array()) || (j.contains("sink") && j["sink"].is_array()))
    throw Error(ErrorCode::MultipleTerminals, kMultiTerminalMessage);
  RawNetwork raw;
  if (j.contains("name")) raw.name = as_string(j["name"], "network.name");
  raw.source = as_string(require(j, "source", "network"), "network.source");
  raw.sink = as_string(require(j, "sink", "network"), "network.sink");
  if (j.contains("nodes")) raw.nodes = as_names(j["nodes"], "network.nodes");
  const Json& edges = require(j, "edges", "network");
  if (!edges.is_array()) fail("network.edges: expected an array");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string where = "network.edges[" + std::to_string(i) + "]";
    const Json& e = edges[i];
    raw.edges.push_back({as_string(require(e, "tail", where), where + ".tail"),
                         as_string(require(e, "head", where), where + ".head"),
                         as_rational(require(e, "capacity", where), where + ".capacity"),
                         as_rational(require(e, "cost", where), where + ".cost")});
  }
  return raw;
}

inline Network network_from_json(const Json& j) { return validate_network(raw_network_from_json(j)); }

inline Json to_json(const Network& net) {
  RawNetwork raw = net.to_raw();
  Json j;
  j["name"] = raw.name;
  j["source"] = raw.source;
  j["sink"] = raw.sink;
  j["nodes"] = raw.nodes;
  Json edges = Json::array();
  for (const auto& e : raw.edges)
    edges.push_back({{"tail", e.tail}, {"head", e.head}, {"capacity", e.capacity.str()}, {"cost", e.cost.str()}});
  j["edges"] = std::move(edges);
  return j;
}

// -------------------------------------------------------------- strategies

inline bool has_parallel(const Network& net, EdgeId e) {
  const Edge& ed = net.edge(e);
  return net.find_edges(ed.tail, ed.head).size() > 1;
}

inline Json path_to_json(const Network& net, const PathFlow& p) {
  Json j;
  if (std::any_of(p.edges.begin(), p.edges.end(), [&](EdgeId e) { return has_parallel(net, e); }))
    j["edge_indices"] = p.edges;
  else
    j["nodes"] = path_node_names(net, p.edges);
  j["amount"] = p.amount.str();
  return j;
}

inline Json attack_edges_to_json(const Network& net, const Attack& mu) {
  Json edges = Json::array();
  for (EdgeId e : mu.edges()) {
    if (has_parallel(net, e))
      edges.push_back({{"edge_index", e}});
    else
      edges.push_back({net.node_name(net.edge(e).tail), net.node_name(net.edge(e).head)});
  }
  return edges;
}

inline Json to_json(const Network& net, const MixedFlowStrategy& s) {
  Json atoms = Json::array();
  for (const auto& a : s.atoms()) {
    Json paths = Json::array();
    for (const auto& p : a.action.paths) paths.push_back(path_to_json(net, p));
    atoms.push_back({{"prob", a.prob.str()}, {"paths", std::move(paths)}});
  }
  return {{"atoms", std::move(atoms)}};
}

inline Json to_json(const Network& net, const MixedAttackStrategy& s) {
  Json atoms = Json::array();
  for (const auto& a : s.atoms()) atoms.push_back({{"prob", a.prob.str()}, {"edges", attack_edges_to_json(net, a.action)}});
  return {{"atoms", std::move(atoms)}};
}

inline FlowAction flow_action_from_json(const Network& net, const Json& paths, const std::string& where) {
  using namespace io_detail;
  if (!paths.is_array()) fail(where + ": expected an array of paths");
  FlowAction x;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const std::string w = where + "[" + std::to_string(i) + "]";
    const Json& p = paths[i];
    std::vector<EdgeId> edges;
    if (p.is_object() && p.contains("nodes")) {
      edges = path_from_nodes(net, as_names(p["nodes"], w + ".nodes"));
    } else if (p.is_object() && p.contains("edge_indices")) {
      if (!p["edge_indices"].is_array()) fail(w + ".edge_indices: expected an array");
      for (const auto& e : p["edge_indices"]) edges.push_back(as_index(e, w + ".edge_indices"));
      for (EdgeId e : edges)
        if (e >= net.edge_count()) throw Error(ErrorCode::InvalidEdge, w + ": edge index out of range");
      check_simple_path(net, edges);
    } else {
      fail(w + ": a path needs \"nodes\" or \"edge_indices\"");
    }
    Rational amount = as_rational(require(p, "amount", w), w + ".amount");
    if (amount.sign() < 0) throw Error(ErrorCode::InfeasibleFlow, w + ": negative path amount");
    x.paths.push_back({std::move(edges), std::move(amount)});
  }
  return x;
}

inline Attack attack_from_json(const Network& net, const Json& edges, const std::string& where) {
  using namespace io_detail;
  if (!edges.is_array()) fail(where + ": expected an array of edges");
  std::vector<EdgeId> ids;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string w = where + "[" + std::to_string(i) + "]";
    const Json& e = edges[i];
    if (e.is_object() && e.contains("edge_index")) {
      EdgeId id = as_index(e["edge_index"], w + ".edge_index");
      if (id >= net.edge_count()) throw Error(ErrorCode::InvalidEdge, w + ": edge index out of range");
      ids.push_back(id);
    } else if (e.is_array() && e.size() == 2) {
      ids.push_back(net.resolve_edge(as_string(e[0], w), as_string(e[1], w)));
    } else {
      fail(w + ": an edge is [tail, head] or {\"edge_index\": k}");
    }
  }
  return Attack(std::move(ids));
}

namespace io_detail {

/// Accepts a bare strategy document or a profile document holding `key`.
inline const Json& strategy_body(const Json& j, const char* key) {
  if (j.is_object() && j.contains(key) && !j.contains("atoms")) return j.at(key);
  return j;
}

}  // namespace io_detail

inline MixedFlowStrategy flow_strategy_from_json(const Network& net, const Json& doc) {
  using namespace io_detail;
  const Json& j = strategy_body(doc, "sigma1");
  const Json& atoms = require(j, "atoms", "flow strategy");
  if (!atoms.is_array()) fail("flow strategy.atoms: expected an array");
  std::vector<Atom<FlowAction>> out;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const std::string w = "flow strategy.atoms[" + std::to_string(i) + "]";
    Rational prob = as_rational(require(atoms[i], "prob", w), w + ".prob");
    FlowAction x = atoms[i].contains("paths") ? flow_action_from_json(net, atoms[i]["paths"], w + ".paths") : FlowAction{};
    out.push_back({std::move(x), std::move(prob)});
  }
  return MixedFlowStrategy::create(std::move(out));
}

inline MixedAttackStrategy attack_strategy_from_json(const Network& net, const Json& doc) {
  using namespace io_detail;
  const Json& j = strategy_body(doc, "sigma2");
  const Json& atoms = require(j, "atoms", "attack strategy");
  if (!atoms.is_array()) fail("attack strategy.atoms: expected an array");
  std::vector<Atom<Attack>> out;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const std::string w = "attack strategy.atoms[" + std::to_string(i) + "]";
    Rational prob = as_rational(require(atoms[i], "prob", w), w + ".prob");
    Attack mu = atoms[i].contains("edges") ? attack_from_json(net, atoms[i]["edges"], w + ".edges") : Attack{};
    out.push_back({std::move(mu), std::move(prob)});
  }
  return MixedAttackStrategy::create(std::move(out));
}

// ---------------------------------------------------------------- profiles

inline std::optional<Construction> construction_from_string(std::string_view s) {
  for (auto c : {Construction::Prop1, Construction::Prop2, Construction::Prop3, Construction::Prop8,
                 Construction::Prop9a, Construction::Prop9b})
    if (to_string(c) == s) return c;
  return std::nullopt;
}

inline Json region_to_json(const Region& r) {
  Json j{{"tag", to_string(r.tag)}};
  if (r.partition_size) j["partition_size"] = *r.partition_size;
  if (!r.boundary.empty()) j["boundary"] = r.boundary;
  return j;
}

inline Json to_json(const Network& net, const EquilibriumProfile& p) {
  return {{"construction", to_string(p.construction)},
          {"region", region_to_json(p.region)},
          {"sigma1", to_json(net, p.sigma1)},
          {"sigma2", to_json(net, p.sigma2)}};
}

inline EquilibriumProfile profile_from_json(const Network& net, const Json& j) {
  using namespace io_detail;
  EquilibriumProfile p{flow_strategy_from_json(net, require(j, "sigma1", "profile")),
                       attack_strategy_from_json(net, require(j, "sigma2", "profile")),
                       Construction::Prop1,
                       {}};
  auto c = construction_from_string(as_string(require(j, "construction", "profile"), "profile.construction"));
  if (!c) fail("profile.construction: unknown construction");
  p.construction = *c;
  if (j.contains("region")) {
    const Json& r = j["region"];
    std::string tag = as_string(require(r, "tag", "profile.region"), "profile.region.tag");
    bool known = false;
    for (auto t : {RegionTag::I, RegionTag::II, RegionTag::III, RegionTag::IIIa, RegionTag::IIIb, RegionTag::Boundary})
      if (to_string(t) == tag) {
        p.region.tag = t;
        known = true;
      }
    if (!known) fail("profile.region.tag: unknown region");
    if (r.contains("partition_size")) p.region.partition_size = as_index(r["partition_size"], "profile.region");
    if (r.contains("boundary")) p.region.boundary = as_string(r["boundary"], "profile.region.boundary");
  }
  return p;
}

inline Json partition_to_json(const Network& net, const Partition& p) {
  Json blocks = Json::array();
  for (const auto& b : p.blocks) blocks.push_back(attack_edges_to_json(net, Attack(b)));
  return blocks;
}

/// Partition file: {"blocks": [[["1","3"]], [["2","3"],["2","4"]]]} (or a bare array of blocks).
inline Partition partition_from_json(const Network& net, const Json& j) {
  const Json& blocks = j.is_object() ? io_detail::require(j, "blocks", "partition") : j;
  if (!blocks.is_array()) io_detail::fail("partition: expected an array of blocks");
  Partition p;
  for (std::size_t i = 0; i < blocks.size(); ++i)
    p.blocks.push_back(attack_from_json(net, blocks[i], "partition.blocks[" + std::to_string(i) + "]").edges());
  return p;
}

// ----------------------------------------------------------------- reports

inline Json edge_list_json(const Network& net, const std::vector<EdgeId>& edges) {
  return attack_edges_to_json(net, Attack(edges));
}

inline Json cut_to_json(const Network& net, const CutSet& c) {
  Json side = Json::array();
  for (NodeId n : c.source_side) side.push_back(net.node_name(n));
  return {{"edges", edge_list_json(net, c.edges)}, {"capacity", c.capacity.str()}, {"source_side", side}};
}

inline Json to_json(const Network& net, const FlowAnalysis& a) {
  Json j;
  j["network"] = net.name();
  j["f_max"] = a.f_max.str();
  j["t_min"] = a.t_min.str();
  j["alpha"] = a.alpha.str();
  Json paths = Json::array();
  for (const auto& p : a.x_star.paths) {
    Json pj = path_to_json(net, p);
    pj["cost"] = path_cost(net, p.edges).str();
    paths.push_back(std::move(pj));
  }
  j["x_star"] = std::move(paths);
  j["min_cut"] = cut_to_json(net, a.min_cut);
  if (a.all_min_cuts) {
    Json cuts = Json::array();
    for (const auto& c : *a.all_min_cuts) cuts.push_back(cut_to_json(net, c));
    j["all_min_cuts"] = std::move(cuts);
  }
  j["assumption1"] = a.assumption1;
  if (a.assumption2) {
    Json a2{{"holds", a.assumption2->holds}};
    if (a.assumption2->witness) a2["witness_cut"] = *a.assumption2->witness;
    Json per = Json::array();
    for (const auto& r : a.assumption2->per_cut) {
      Json alphas = Json::array();
      for (const auto& al : r.alphas) alphas.push_back(al ? Json(al->str()) : Json(nullptr));
      per.push_back({{"edges", edge_list_json(net, r.cut.edges)}, {"alphas", alphas}, {"holds", r.holds}});
    }
    a2["per_cut"] = std::move(per);
    j["assumption2"] = std::move(a2);
  }
  return j;
}

inline Json to_json(const TheoremOneQuantities& q) {
  return {{"u1", q.u1.str()},
          {"u2", q.u2.str()},
          {"expected_flow", q.exp_flow.str()},
          {"expected_transport", q.exp_transport.str()},
          {"expected_attack_cost", q.exp_attack_cost.str()},
          {"expected_effective_flow", q.exp_effective.str()},
          {"expected_loss", q.exp_loss.str()},
          {"yield", q.yield.str()}};
}

inline Json to_json(const NamedCheck& c) {
  Json j{{"name", c.name}, {"status", to_string(c.status)}};
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

inline Json to_json(const Network& net, const VerificationReport& r) {
  Json j;
  j["equilibrium"] = r.is_equilibrium;
  j["u1"] = r.u1.str();
  j["u2"] = r.u2.str();
  j["eps"] = r.eps.str();
  j["defender"] = {{"best_response_value", r.br1_value.str()},
                   {"gap", r.gap1.str()},
                   {"witness", to_json(net, MixedFlowStrategy::pure(r.br1_witness))["atoms"][0]["paths"]}};
  j["attacker"] = {{"best_response_value", r.br2_value.str()},
                   {"gap", r.gap2.str()},
                   {"witness", attack_edges_to_json(net, r.br2_witness)}};
  j["region"] = region_to_json(r.region);
  if (!r.theorem1_residuals.empty()) {
    Json res = Json::array();
    for (const auto& x : r.theorem1_residuals)
      res.push_back({{"name", x.name},
                     {"measured", x.measured.str()},
                     {"expected", x.expected.str()},
                     {"residual", x.residual.str()}});
    j["theorem1_residuals"] = std::move(res);
  }
  if (r.probability_bounds) {
    Json b = Json::array();
    for (const auto& c : r.probability_bounds->checks) {
      Json cj{{"name", c.name}, {"applicable", c.applicable}};
      if (c.applicable) {
        cj["probability"] = c.probability.str();
        cj["bound"] = c.bound.str();
        cj["ok"] = c.ok;
        cj["tight"] = c.tight;
      }
      b.push_back(std::move(cj));
    }
    j["probability_bounds"] = std::move(b);
  }
  if (!r.support_checks.empty()) {
    Json s = Json::array();
    for (const auto& c : r.support_checks) s.push_back(to_json(c));
    j["support_checks"] = std::move(s);
  }
  if (!r.cut_reports.empty()) {
    Json cuts = Json::array();
    for (const auto& c : r.cut_reports) {
      Json stats = Json::array();
      for (const auto& st : c.stats)
        stats.push_back({{"edge", edge_list_json(net, {st.edge})[0]},
                         {"capacity", st.capacity.str()},
                         {"expected_flow", st.expected_flow.str()},
                         {"disruption_probability", st.disruption_probability.str()}});
      cuts.push_back({{"cut", edge_list_json(net, c.cut.edges)},
                      {"edges", std::move(stats)},
                      {"checks", Json::array({to_json(c.expected_flow), to_json(c.disruption)})}});
    }
    j["cut_statistics"] = std::move(cuts);
  }
  return j;
}

inline Json to_json(const Network& net, const BudgetAnalysis& b) {
  return {{"b1_star", b.b1_star.str()},
          {"b2_lower", b.b2_lower.str()},
          {"n_star", b.n_star},
          {"z_star", b.z_star.str()},
          {"cut", edge_list_json(net, b.cut.edges)},
          {"partition", partition_to_json(net, b.partition)},
          {"assignment", b.solution.assignment()}};
}

inline Json to_json(const SimResult& r) {
  Json qs = Json::array();
  for (const auto& q : r.quantities) {
    Json j{{"name", q.name}, {"mean", q.mean}, {"std_error", q.std_error}, {"exact", q.exact}};
    if (q.target) j["target"] = *q.target;
    j["z_score"] = std::isfinite(q.z_score) ? Json(q.z_score) : Json(q.z_score > 0 ? "inf" : "-inf");
    qs.push_back(std::move(j));
  }
  return {{"trials", r.trials}, {"seed", r.seed}, {"quantities", std::move(qs)}};
}

// ------------------------------------------------------------------- files

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

inline Network load_network(const std::string& path) { return network_from_json(read_json_file(path)); }

}  // namespace flowgame
