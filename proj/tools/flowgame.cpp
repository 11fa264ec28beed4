#include <flowgame/flowgame.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

namespace fg = flowgame;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitAssumption = 2;
constexpr int kExitVerification = 3;

int exit_code_for(fg::ErrorCode c) {
  switch (c) {
    case fg::ErrorCode::NoPathSourceToSink:
    case fg::ErrorCode::WrongRegion:
    case fg::ErrorCode::BoundaryParameters:
    case fg::ErrorCode::AssumptionViolated:
    case fg::ErrorCode::BudgetOutOfRange:
      return kExitAssumption;
    default:
      return kExitInput;
  }
}

std::size_t path_limit() {
  if (const char* env = std::getenv("FLOWGAME_PATH_LIMIT")) {
    try {
      std::size_t pos = 0;
      unsigned long long v = std::stoull(env, &pos);
      if (pos == std::string(env).size() && v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    throw fg::Error(fg::ErrorCode::ParseError, std::string("FLOWGAME_PATH_LIMIT is not a positive integer: ") + env);
  }
  return fg::kDefaultPathLimit;
}

fg::Rational rational_flag(const std::string& name, const std::string& text) {
  try {
    return fg::Rational::parse(text);
  } catch (const std::invalid_argument& e) {
    throw fg::Error(fg::ErrorCode::ParseError, "--" + name + ": " + e.what());
  }
}

fg::GameParams params(const std::string& p1, const std::string& p2) {
  return fg::GameParams::make(rational_flag("p1", p1), rational_flag("p2", p2));
}

fg::FlowAnalysis analysis_for(const fg::Network& net, bool assumption2 = false) {
  fg::AnalysisOptions opts;
  opts.path_limit = path_limit();
  opts.enumerate_cuts = net.node_count() <= opts.node_limit;
  opts.check_assumption2 = assumption2 && opts.enumerate_cuts;
  return fg::analyze(net, opts);
}

void emit(const fg::Json& j) { std::cout << j.dump(2) << "\n"; }

std::string edges_text(const fg::Network& net, const std::vector<fg::EdgeId>& edges) {
  std::string s = "{";
  for (std::size_t i = 0; i < edges.size(); ++i) s += (i ? ", " : "") + net.edge_label(edges[i]);
  return s + "}";
}

std::string path_text(const fg::Network& net, const std::vector<fg::EdgeId>& edges) {
  std::string s;
  for (const auto& n : fg::path_node_names(net, edges)) s += (s.empty() ? "" : "-") + n;
  return s;
}

void print_analysis(const fg::Network& net, const fg::FlowAnalysis& a) {
  std::cout << "network      " << net.name() << " (" << net.node_count() << " nodes, " << net.edge_count()
            << " edges)\n";
  std::cout << "F^max        " << a.f_max.str() << "\n";
  std::cout << "T^min        " << a.t_min.str() << "\n";
  std::cout << "alpha        " << a.alpha.str() << "\n";
  std::cout << "x*\n";
  for (const auto& p : a.x_star.paths)
    std::cout << "  " << path_text(net, p.edges) << "  amount " << p.amount.str() << "  cost "
              << fg::path_cost(net, p.edges).str() << "\n";
  std::cout << "min-cut      " << edges_text(net, a.min_cut.edges) << "  capacity " << a.min_cut.capacity.str()
            << "\n";
  if (a.all_min_cuts && a.all_min_cuts->size() > 1) {
    std::cout << "other min-cuts\n";
    for (const auto& c : *a.all_min_cuts)
      if (c.edges != a.min_cut.edges) std::cout << "  " << edges_text(net, c.edges) << "\n";
  }
  std::cout << "assumption 1 " << (a.assumption1 ? "holds" : "fails") << "\n";
  if (a.assumption2) std::cout << "assumption 2 " << (a.assumption2->holds ? "holds" : "fails") << "\n";
}

void print_verification(const fg::Network& net, const fg::VerificationReport& r) {
  std::cout << "U1 " << r.u1.str() << "   U2 " << r.u2.str() << "\n";
  std::cout << "defender best response " << r.br1_value.str() << "  gap " << r.gap1.str() << "\n";
  std::cout << "attacker best response " << r.br2_value.str() << " via " << edges_text(net, r.br2_witness.edges())
            << "  gap " << r.gap2.str() << "\n";
  std::cout << (r.is_equilibrium ? "equilibrium" : "not an equilibrium") << "\n";
  for (const auto& x : r.theorem1_residuals)
    std::cout << "  " << x.name << " = " << x.measured.str() << " (closed form " << x.expected.str() << ")\n";
  for (const auto& c : r.support_checks)
    std::cout << "  " << c.name << ": " << fg::to_string(c.status) << (c.detail.empty() ? "" : "  " + c.detail)
              << "\n";
  for (const auto& c : r.cut_reports) {
    std::cout << "  cut " << edges_text(net, c.cut.edges) << "\n";
    for (const auto& st : c.stats)
      std::cout << "    " << net.edge_label(st.edge) << "  E[x] " << st.expected_flow.str() << "  P(disrupted) "
                << st.disruption_probability.str() << "\n";
  }
}

void print_profile(const fg::Network& net, const fg::EquilibriumProfile& p) {
  std::cout << "construction " << fg::to_string(p.construction) << "  region " << fg::to_string(p.region.tag)
            << "\n";
  std::cout << "defender\n";
  for (const auto& a : p.sigma1.atoms()) {
    std::cout << "  " << a.prob.str() << "  ";
    if (a.action.paths.empty()) std::cout << "no flow";
    for (std::size_t i = 0; i < a.action.paths.size(); ++i)
      std::cout << (i ? ", " : "") << path_text(net, a.action.paths[i].edges) << " x" << a.action.paths[i].amount.str();
    std::cout << "\n";
  }
  std::cout << "attacker\n";
  for (const auto& a : p.sigma2.atoms())
    std::cout << "  " << a.prob.str() << "  " << (a.action.empty() ? "no attack" : edges_text(net, a.action.edges()))
              << "\n";
}

fg::Json verification_summary(const fg::VerificationReport& r, const fg::Network& net, const fg::EquilibriumProfile& p) {
  return {{"equilibrium", r.is_equilibrium},
          {"defender_gap", r.gap1.str()},
          {"attacker_gap", r.gap2.str()},
          {"max_transport_cost", fg::max_transport_cost(net, p.sigma1).str()},
          {"max_attack_cost", fg::max_attack_cost(net, p.sigma2).str()}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Attacker-defender flow network games: analysis, equilibria, verification"};
  app.require_subcommand(1);
  bool text = false;
  app.add_flag("--text", text, "Human-readable output instead of JSON");

  std::string network;
  std::string p1;
  std::string p2;

  auto add_network = [&](CLI::App* sub) {
    sub->add_option("network", network, "Network JSON file")->required();
  };
  auto add_params = [&](CLI::App* sub) {
    sub->add_option("--p1", p1, "Value of a unit of effective flow")->required();
    sub->add_option("--p2", p2, "Value of a unit of lost flow")->required();
  };

  auto* analyze_cmd = app.add_subcommand("analyze", "Max-flow, min-cost max-flow, min-cuts, alpha, assumptions");
  add_network(analyze_cmd);

  auto* eq_cmd = app.add_subcommand("equilibrium", "Construct and self-verify a closed-form equilibrium");
  add_network(eq_cmd);
  add_params(eq_cmd);
  std::string b1;
  std::size_t partition_size = 0;
  std::string partition_file;
  bool force = false;
  eq_cmd->add_option("--b1", b1, "Defender budget for the scaled equilibrium");
  auto* size_opt = eq_cmd->add_option("--partition-size", partition_size, "Use the min-max partition with k blocks");
  auto* file_opt = eq_cmd->add_option("--partition", partition_file, "Partition of a min-cut (JSON)");
  size_opt->excludes(file_opt);
  eq_cmd->add_flag("--force", force, "Build the region III mixture even when assumption 1 fails");

  auto* verify_cmd = app.add_subcommand("verify", "Best-response verification of a strategy profile");
  add_network(verify_cmd);
  add_params(verify_cmd);
  std::string sigma1_file;
  std::string sigma2_file;
  std::string eps = "0";
  bool minimax = false;
  verify_cmd->add_option("--sigma1", sigma1_file, "Defender strategy JSON")->required();
  verify_cmd->add_option("--sigma2", sigma2_file, "Attacker strategy JSON")->required();
  verify_cmd->add_option("--eps", eps, "Gap tolerance (exact rational)");
  verify_cmd->add_flag("--minimax", minimax, "Also run the minimax and zero-sum value checks");

  auto* budget_cmd = app.add_subcommand("budget", "Budgets and the min-max partition");
  add_network(budget_cmd);
  add_params(budget_cmd);
  bool all_cuts = false;
  budget_cmd->add_flag("--all-cuts", all_cuts, "Solve on every min-cut and keep the best");

  auto* sim_cmd = app.add_subcommand("simulate", "Seeded Monte-Carlo play of a strategy profile");
  add_network(sim_cmd);
  add_params(sim_cmd);
  std::size_t trials = 100000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string sim_sigma1;
  std::string sim_sigma2;
  sim_cmd->add_option("--trials", trials, "Number of plays")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--seed", seed, "64-bit seed");
  sim_cmd->add_option("--threads", threads, "Worker threads (0 = hardware)");
  auto* s1_opt = sim_cmd->add_option("--sigma1", sim_sigma1, "Defender strategy JSON (default: constructed)");
  auto* s2_opt = sim_cmd->add_option("--sigma2", sim_sigma2, "Attacker strategy JSON (default: constructed)");
  s1_opt->needs(s2_opt);
  s2_opt->needs(s1_opt);

  auto* dot_cmd = app.add_subcommand("export-dot", "Graphviz rendering of a network, flow, cut and attacks");
  add_network(dot_cmd);
  std::string flow_file;
  std::string attack_file;
  bool show_cut = false;
  bool show_xstar = false;
  auto* flow_opt = dot_cmd->add_option("--flow", flow_file, "Flow strategy JSON; expected edge flows are shown");
  auto* xstar_opt = dot_cmd->add_flag("--xstar", show_xstar, "Show the min-cost max-flow");
  flow_opt->excludes(xstar_opt);
  dot_cmd->add_flag("--cut", show_cut, "Dash the canonical min-cut");
  dot_cmd->add_option("--attack", attack_file, "Attack strategy JSON; attacked edges in red");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    const fg::Network net = fg::load_network(network);

    if (*analyze_cmd) {
      auto a = analysis_for(net, true);
      if (text)
        print_analysis(net, a);
      else
        emit(fg::to_json(net, a));
      return kExitOk;
    }

    if (*eq_cmd) {
      auto g = params(p1, p2);
      auto a = analysis_for(net);
      fg::EquilibriumProfile profile;
      if (!b1.empty()) {
        profile = fg::scaled_equilibrium(a, g, rational_flag("b1", b1));
      } else if (*size_opt) {
        auto sol = fg::solve_min_max_partition(fg::cut_capacities(net, a.min_cut), partition_size);
        profile = fg::partition_equilibrium(a, g, sol.blocks(a.min_cut.edges));
      } else if (*file_opt) {
        profile = fg::partition_equilibrium(a, g, fg::partition_from_json(net, fg::read_json_file(partition_file)));
      } else if (force) {
        profile = fg::region3_candidate(a, g);
      } else {
        profile = fg::default_equilibrium(a, g);
      }
      fg::VerifyOptions vo;
      vo.path_limit = path_limit();
      auto report = fg::verify_equilibrium(net, profile.sigma1, profile.sigma2, g, a, vo);
      if (text) {
        print_profile(net, profile);
        print_verification(net, report);
      } else {
        fg::Json j = fg::to_json(net, profile);
        j["verification"] = verification_summary(report, net, profile);
        emit(j);
      }
      return report.is_equilibrium ? kExitOk : kExitVerification;
    }

    if (*verify_cmd) {
      auto g = params(p1, p2);
      auto a = analysis_for(net);
      auto s1 = fg::flow_strategy_from_json(net, fg::read_json_file(sigma1_file));
      auto s2 = fg::attack_strategy_from_json(net, fg::read_json_file(sigma2_file));
      fg::VerifyOptions vo;
      vo.path_limit = path_limit();
      vo.eps = rational_flag("eps", eps);
      if (vo.eps.sign() < 0) throw fg::Error(fg::ErrorCode::ParseError, "--eps must be non-negative");
      auto report = fg::verify_equilibrium(net, s1, s2, g, a, vo);
      fg::Json j = fg::to_json(net, report);
      if (minimax) {
        auto m = fg::minimax_checks(net, s1, s2, a, g, vo);
        j["minimax"] = {{"ok", m.ok},
                        {"min_attack_u1", m.min_attack_u1.str()},
                        {"neg_expected_transport", m.neg_expected_transport.str()},
                        {"u1_at_min_cut", m.u1_at_full_cut.str()},
                        {"max_flow_u1", m.max_flow_u1.str()},
                        {"maximin_u1_by_no_flow", m.maximin_u1_by_x0.str()},
                        {"max_attack_u2", m.max_attack_u2.str()},
                        {"maximin_u2_by_no_attack", m.maximin_u2_by_mu0.str()}};
        auto z = fg::zero_sum_value_check(net, s1, s2, a, g);
        j["zero_sum_value"] = {{"value", z.value.str()}, {"target", z.target.str()}, {"residual", z.residual.str()}};
      }
      if (text)
        print_verification(net, report);
      else
        emit(j);
      return report.is_equilibrium ? kExitOk : kExitVerification;
    }

    if (*budget_cmd) {
      auto g = params(p1, p2);
      auto a = analysis_for(net);
      auto be = fg::min_budget_partition_equilibrium(net, a, g, all_cuts);
      fg::Json j = fg::to_json(net, be.analysis);
      j["profile"] = fg::to_json(net, be.profile);
      if (text) {
        std::cout << "b1*      " << be.analysis.b1_star.str() << "\n";
        std::cout << "b2 lower " << be.analysis.b2_lower.str() << "\n";
        std::cout << "n*       " << be.analysis.n_star << "\n";
        std::cout << "z*       " << be.analysis.z_star.str() << "\n";
        for (const auto& b : be.analysis.partition.blocks) std::cout << "  block " << edges_text(net, b) << "\n";
      } else {
        emit(j);
      }
      return kExitOk;
    }

    if (*sim_cmd) {
      auto g = params(p1, p2);
      auto a = analysis_for(net);
      std::optional<fg::MixedFlowStrategy> s1;
      std::optional<fg::MixedAttackStrategy> s2;
      if (!sim_sigma1.empty()) {
        s1 = fg::flow_strategy_from_json(net, fg::read_json_file(sim_sigma1));
        s2 = fg::attack_strategy_from_json(net, fg::read_json_file(sim_sigma2));
      } else {
        auto p = fg::default_equilibrium(a, g);
        s1 = p.sigma1;
        s2 = p.sigma2;
      }
      fg::SimOptions so;
      so.threads = threads;
      auto region = fg::classify_region(g, a.alpha);
      if (region.in_region_three() && a.assumption1) so.targets = fg::theorem1_quantities(a, g);
      auto res = fg::monte_carlo(net, *s1, *s2, g, trials, seed, so);
      if (text) {
        for (const auto& q : res.quantities)
          std::cout << q.name << "  mean " << q.mean << "  se " << q.std_error << "  z " << q.z_score << "\n";
      } else {
        emit(fg::to_json(res));
      }
      return kExitOk;
    }

    if (*dot_cmd) {
      fg::DotOptions opts;
      std::optional<fg::FlowAnalysis> a;
      if (show_cut || show_xstar) a = analysis_for(net);
      if (!flow_file.empty())
        opts.edge_flow = fg::expected_edge_flows(net, fg::flow_strategy_from_json(net, fg::read_json_file(flow_file)));
      if (show_xstar) opts.edge_flow = fg::edge_flows(net, a->x_star);
      if (show_cut) opts.cut = a->min_cut.edges;
      if (!attack_file.empty())
        opts.disruption =
            fg::disruption_probabilities(net, fg::attack_strategy_from_json(net, fg::read_json_file(attack_file)));
      std::cout << fg::to_dot(net, opts);
      return kExitOk;
    }
  } catch (const fg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
