#include "helpers.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace flowgame;
using namespace testing_helpers;

namespace {

GameParams P(Rational p1, Rational p2) { return GameParams::make(std::move(p1), std::move(p2)); }

struct OracleAttack {
  Rational value;
  std::vector<Attack> maximizers;
};

// Direct maximization of the expected attacker payoff over all edge subsets.
OracleAttack oracle_attack(const Network& net, const MixedFlowStrategy& s1, const GameParams& g) {
  OracleAttack out;
  bool first = true;
  for (unsigned m = 0; m < (1U << net.edge_count()); ++m) {
    std::vector<EdgeId> edges;
    for (EdgeId e = 0; e < net.edge_count(); ++e)
      if (m >> e & 1U) edges.push_back(e);
    Attack mu(edges);
    Rational v = expected_payoffs(net, s1, MixedAttackStrategy::pure(mu), g).u2;
    if (first || v > out.value) {
      out.value = v;
      out.maximizers.clear();
      first = false;
    }
    if (v == out.value) out.maximizers.push_back(mu);
  }
  return out;
}

// Lower bound for the defender: best expected payoff over flows with path
// amounts on a half-unit grid.
Rational grid_defender_value(const Network& net, const MixedAttackStrategy& s2, const GameParams& g) {
  auto paths = enumerate_paths(net);
  Rational best;
  FlowAction x;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == paths.size()) {
      Rational v = expected_payoffs(net, MixedFlowStrategy::pure(x), s2, g).u1;
      if (v > best) best = v;
      return;
    }
    for (int k = 0; k <= 6; ++k) {
      x.paths.push_back({paths[i].edges, Rational(k, 2)});
      bool ok = is_feasible(x, net);
      if (ok) rec(i + 1);
      x.paths.pop_back();
      if (!ok) break;
    }
  };
  rec(0);
  return best;
}

MixedFlowStrategy prop3_defender(const FlowAnalysis& a, const GameParams& g) { return region3_equilibrium(a, g).sigma1; }

}  // namespace

TEST(BestResponse, AttackerMatchesExhaustiveOracle) {
  for (const char* name : {"fig1", "fig4", "fig7", "fig8a"}) {
    auto net = load(name);
    auto a = analyze(net);
    for (auto g : {P(6, 2), P(5, 3), P(10, Rational(3, 2))}) {
      std::vector<MixedFlowStrategy> strategies{
          MixedFlowStrategy::pure(a.x_star),
          MixedFlowStrategy::create({{FlowAction{}, Rational(1) - Rational(1) / g.p2}, {a.x_star, Rational(1) / g.p2}}),
          MixedFlowStrategy::create({{a.x_star.scaled(Rational(1, 2)), Rational(1, 3)}, {a.x_star, Rational(2, 3)}})};
      for (const auto& s1 : strategies) {
        auto br = best_response_attack(net, s1, g);
        auto o = oracle_attack(net, s1, g);
        EXPECT_EQ(br.value, o.value) << name;
        // tie-break: fewest edges, then lexicographically smallest
        Attack expected = o.maximizers.front();
        for (const auto& m : o.maximizers)
          if (m.size() < expected.size() || (m.size() == expected.size() && m.edges() < expected.edges()))
            expected = m;
        EXPECT_EQ(br.witness, expected) << name;
      }
    }
  }
}

TEST(BestResponse, AttackerDeterministicAcrossThreads) {
  std::mt19937_64 rng(5);
  RawNetwork raw;
  raw.source = "s";
  raw.sink = "t";
  std::vector<std::string> names{"s", "a", "b", "c", "d", "t"};
  std::uniform_int_distribution<int> cap(1, 2);
  for (std::size_t i = 0; i + 1 < names.size(); ++i)
    for (std::size_t j = i + 1; j < names.size(); ++j)
      raw.edges.push_back({names[i], names[j], Rational(cap(rng)), Rational(1)});
  auto net = validate_network(raw);
  ASSERT_EQ(net.edge_count(), 15u);
  auto a = analyze(net);
  auto g = P(9, 2);
  auto s1 = MixedFlowStrategy::create({{FlowAction{}, Rational(1, 2)}, {a.x_star, Rational(1, 2)}});
  auto one = best_response_attack(net, s1, g, kDefaultEdgeLimit, 1);
  auto many = best_response_attack(net, s1, g, kDefaultEdgeLimit, 4);
  EXPECT_EQ(one.value, many.value);
  EXPECT_EQ(one.witness, many.witness);
  EXPECT_THROW(best_response_attack(net, s1, g, 10), Error);
}

TEST(BestResponse, DefenderAgainstNoAttack) {
  auto net = load("fig4");
  auto g = P(6, 2);
  auto br = best_response_flow(net, MixedAttackStrategy::pure(Attack{}), g);
  // all three units on cost-3 paths: 3 * (6 - 3)
  EXPECT_EQ(br.value, Rational(9));
  EXPECT_TRUE(is_feasible(br.witness, net));
  EXPECT_EQ(payoff_u1(net, br.witness, Attack{}, g), br.value);
}

TEST(BestResponse, DefenderDominatesGrid) {
  for (const char* name : {"fig1", "fig4", "fig7", "fig8a"}) {
    auto net = load(name);
    auto a = analyze(net);
    auto g = P(7, 2);
    std::vector<MixedAttackStrategy> strategies{
        MixedAttackStrategy::pure(Attack{}),
        MixedAttackStrategy::create({{Attack{}, Rational(1, 3)}, {a.min_cut.as_attack(), Rational(2, 3)}}),
        MixedAttackStrategy::create({{Attack({0}), Rational(1, 2)}, {Attack({1}), Rational(1, 2)}})};
    for (const auto& s2 : strategies) {
      auto br = best_response_flow(net, s2, g);
      EXPECT_TRUE(is_feasible(br.witness, net)) << name;
      EXPECT_EQ(expected_payoffs(net, MixedFlowStrategy::pure(br.witness), s2, g).u1, br.value) << name;
      EXPECT_GE(br.value, grid_defender_value(net, s2, g)) << name;
    }
  }
}

TEST(Verify, PropositionThreeIsEquilibrium) {
  auto net = load("fig4");
  auto a = analyze(net);
  auto g = P(6, 2);
  auto p = region3_equilibrium(a, g);
  auto r = verify_equilibrium(net, p.sigma1, p.sigma2, g, a);
  EXPECT_TRUE(r.is_equilibrium);
  EXPECT_EQ(r.gap1, Rational(0));
  EXPECT_EQ(r.gap2, Rational(0));
  EXPECT_FALSE(r.theorem1_residuals.empty());
  EXPECT_TRUE(r.residuals_zero());
  ASSERT_TRUE(r.probability_bounds);
  EXPECT_TRUE(r.probability_bounds->ok());
  for (const auto& c : r.support_checks) EXPECT_EQ(c.status, CheckStatus::Pass) << c.name;
  ASSERT_EQ(r.cut_reports.size(), 1u);
  EXPECT_EQ(r.cut_reports[0].expected_flow.status, CheckStatus::Pass);
  EXPECT_EQ(r.cut_reports[0].disruption.status, CheckStatus::Pass);
}

TEST(Verify, PureProfileIsNotEquilibrium) {
  auto net = load("fig4");
  auto a = analyze(net);
  auto g = P(6, 2);
  auto r = verify_equilibrium(net, MixedFlowStrategy::pure(a.x_star), MixedAttackStrategy::pure(a.min_cut.as_attack()),
                              g, a);
  EXPECT_FALSE(r.is_equilibrium);
  // against a certain full cut the defender prefers to send nothing
  EXPECT_EQ(r.br1_value, Rational(0));
  EXPECT_EQ(r.gap1, Rational(9));
}

TEST(Verify, RegionsOneAndTwo) {
  auto net = load("fig4");
  auto a = analyze(net);
  for (auto g : {P(2, 2), P(4, Rational(1, 2)), P(Rational(5, 2), Rational(1, 3))}) {
    auto p = default_equilibrium(a, g);
    auto r = verify_equilibrium(net, p.sigma1, p.sigma2, g, a);
    EXPECT_TRUE(r.is_equilibrium);
  }
}

TEST(Verify, EveryPartitionAndScaledProfile) {
  auto net = load("fig4");
  auto a = analyze(net);
  for (auto g : {P(5, 2), P(12, 3), P(Rational(7, 2), Rational(3, 2))}) {
    for (const auto& part : enumerate_partitions(a.min_cut.edges)) {
      if (classify_region(g, a.alpha, part.size()).tag == RegionTag::Boundary) continue;
      auto p = partition_equilibrium(a, g, part);
      auto r = verify_equilibrium(net, p.sigma1, p.sigma2, g, a);
      EXPECT_TRUE(r.is_equilibrium);
      EXPECT_TRUE(r.residuals_zero());
    }
    for (Rational b1 : {a.t_min / g.p2, (a.t_min / g.p2 + a.t_min) / Rational(2), a.t_min}) {
      auto p = scaled_equilibrium(a, g, b1);
      auto r = verify_equilibrium(net, p.sigma1, p.sigma2, g, a);
      EXPECT_TRUE(r.is_equilibrium) << b1;
    }
  }
}

TEST(Verify, CounterexampleWithoutAssumptionOne) {
  auto net = load("fig8a");
  auto a = analyze(net);
  auto g = P(6, 6);
  auto p = region3_candidate(a, g);
  auto r = verify_equilibrium(net, p.sigma1, p.sigma2, g, a);
  EXPECT_FALSE(r.is_equilibrium);
  EXPECT_GT(r.gap1 + r.gap2, Rational(0));
}

TEST(Verify, FigureSevenOffCutAttack) {
  auto net = load("fig7");
  auto a = analyze(net);
  auto g = P(Rational(7, 2), 2);
  auto s1 = flow_strategy_from_json(net, read_json_file(fixture_path("fig7_sigma1.json")));
  auto s2 = attack_strategy_from_json(net, read_json_file(fixture_path("fig7_sigma2.json")));
  auto r = verify_equilibrium(net, s1, s2, g, a);
  EXPECT_TRUE(r.is_equilibrium);
  EXPECT_EQ(r.gap1, Rational(0));
  EXPECT_EQ(r.gap2, Rational(0));
  // the off-cut attack saturates edges of x* but is not inside the min-cut
  ASSERT_EQ(r.cut_reports.size(), 1u);
  EXPECT_EQ(r.cut_reports[0].disruption.status, CheckStatus::NotApplicable);
}

TEST(Verify, Interchangeability) {
  auto net = load("fig4");
  auto a = analyze(net);
  auto g = P(5, 2);
  auto s1 = region3_equilibrium(a, g).sigma1;
  for (const auto& part : enumerate_partitions(a.min_cut.edges)) {
    auto p = partition_equilibrium(a, g, part);
    auto r = verify_equilibrium(net, s1, p.sigma2, g, a);
    EXPECT_TRUE(r.is_equilibrium);
  }
}

TEST(Verify, EpsilonTolerance) {
  auto net = load("fig4");
  auto a = analyze(net);
  auto g = P(6, 2);
  auto s1 = MixedFlowStrategy::create({{FlowAction{}, Rational(1, 2)}, {a.x_star, Rational(1, 2)}});
  auto s2 = MixedAttackStrategy::create(
      {{Attack{}, Rational(1, 2) + Rational(1, 100)}, {a.min_cut.as_attack(), Rational(1, 2) - Rational(1, 100)}});
  auto strict = verify_equilibrium(net, s1, s2, g, a);
  EXPECT_FALSE(strict.is_equilibrium);
  VerifyOptions loose;
  loose.eps = strict.gap1 + strict.gap2;
  EXPECT_TRUE(verify_equilibrium(net, s1, s2, g, a, loose).is_equilibrium);
}

TEST(SupportChecks, DetectViolations) {
  auto net = load("fig4");
  auto a = analyze(net);
  auto g = P(6, 2);
  auto costly = MixedFlowStrategy::pure(unit_flow(net, {{"s", "2", "1", "3", "t"}}));
  auto off = MixedAttackStrategy::pure(attack(net, {{"s", "1"}, {"3", "t"}}));
  auto checks = check_support_conditions(net, costly, off, a, g);
  auto status = [&](const std::string& n) {
    for (const auto& c : checks)
      if (c.name == n) return c.status;
    ADD_FAILURE() << n;
    return CheckStatus::Pass;
  };
  EXPECT_EQ(status("lemma3_cheapest_paths"), CheckStatus::Fail);
  EXPECT_EQ(status("prop4_attack_cost"), CheckStatus::Fail);  // cost 5 > F^max = 3
  EXPECT_EQ(status("prop4_saturation"), CheckStatus::Fail);
  EXPECT_EQ(status("corollary2_cut_coverage"), CheckStatus::Fail);

  auto fig13 = load("fig13");
  auto b = analyze(fig13);
  auto c13 = check_support_conditions(fig13, MixedFlowStrategy::pure(b.x_star),
                                      MixedAttackStrategy::pure(Attack{}), b, g);
  EXPECT_EQ(c13.front().status, CheckStatus::NotApplicable);
}

TEST(Minimax, PropositionThreeProfile) {
  auto net = load("fig4");
  auto a = analyze(net);
  for (auto g : {P(6, 2), P(5, 3)}) {
    auto p = region3_equilibrium(a, g);
    auto m = minimax_checks(net, p.sigma1, p.sigma2, a, g);
    EXPECT_TRUE(m.ok);
    EXPECT_EQ(m.min_attack_u1, -a.t_min / g.p2);
    EXPECT_EQ(m.max_flow_u1, Rational(0));
    EXPECT_EQ(m.max_attack_u2, Rational(0));
    EXPECT_LT(m.min_flow_u2_at_sigma2, Rational(0));
    auto z = zero_sum_value_check(net, p.sigma1, p.sigma2, a, g);
    EXPECT_EQ(z.residual, Rational(0));
    EXPECT_EQ(z.target, (Rational(1) - a.alpha / g.p1) * a.f_max / g.p2);
  }
}

TEST(LemmaFour, LossNeverExceedsCost) {
  for (const char* name : {"fig1", "fig3", "fig4", "fig7", "fig8a", "fig13"}) {
    auto net = load(name);
    auto a = analyze(net);
    auto rep = check_lemma4(net, a, 1000, 17);
    EXPECT_TRUE(rep.ok()) << name << ": " << rep.first_violation;
    EXPECT_EQ(rep.equality_cases, (std::size_t{1} << a.min_cut.edges.size()) - 1) << name;
  }
}

TEST(BestResponse, RestrictedAgreesOnSaturatedEdges) {
  auto net = load("fig4");
  auto a = analyze(net);
  auto g = P(6, 2);
  auto s1 = prop3_defender(a, g);
  auto full = best_response_attack(net, s1, g);
  auto restricted = best_response_attack_restricted(net, s1, g, saturated_edges(net, a.x_star));
  EXPECT_EQ(full.value, restricted.value);
}
