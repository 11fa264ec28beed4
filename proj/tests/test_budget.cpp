#include "helpers.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace flowgame;
using namespace testing_helpers;

namespace {

GameParams P(Rational p1, Rational p2) { return GameParams::make(std::move(p1), std::move(p2)); }

std::vector<Rational> R(const std::vector<long>& v) { return {v.begin(), v.end()}; }

// Oracle: every set partition of the items into at most n blocks, integer arithmetic.
long brute_force_makespan(const std::vector<long>& caps, std::size_t n) {
  long best = -1;
  std::vector<long> load(n, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) {
    if (i == caps.size()) {
      long m = *std::max_element(load.begin(), load.end());
      if (best < 0 || m < best) best = m;
      return;
    }
    // item i joins an open block or opens the next one
    for (std::size_t b = 0; b < std::min(used + 1, n); ++b) {
      load[b] += caps[i];
      rec(i + 1, std::max(used, b + 1));
      load[b] -= caps[i];
    }
  };
  rec(0, 0);
  return best;
}

}  // namespace

TEST(Budget, DefenderAndAttackerBudgets) {
  auto net = load("fig4");
  auto a = analyze(net);
  EXPECT_EQ(min_defender_budget(a, P(5, 2)), Rational(9, 2));
  EXPECT_EQ(min_defender_budget(a, P(5, 3)), Rational(3));
  EXPECT_EQ(attacker_budget_lower_bound(a, P(5, 2)), Rational(6, 5));
  EXPECT_EQ(attacker_budget_lower_bound(a, P(6, 2)), Rational(3, 2));
  EXPECT_GT(attacker_budget_lower_bound(a, P(Rational(3001, 1000), 2)), Rational(0));
  EXPECT_THROW(min_defender_budget(a, P(5, 1)), Error);
  EXPECT_THROW(min_defender_budget(a, P(2, 2)), Error);
  EXPECT_THROW(attacker_budget_lower_bound(a, P(5, Rational(1, 2))), Error);
}

TEST(Budget, OptimalPartitionSize) {
  EXPECT_EQ(optimal_partition_size(P(5, 2), Rational(3), 3), 2u);
  EXPECT_EQ(optimal_partition_size(P(100, 2), Rational(3), 3), 1u);
  EXPECT_EQ(optimal_partition_size(P(Rational(7, 2), 2), Rational(3), 3), 3u);
  EXPECT_EQ(optimal_partition_size(P(6, 2), Rational(3), 3), 2u);
  EXPECT_THROW(optimal_partition_size(P(3, 2), Rational(3), 3), Error);
  EXPECT_THROW(optimal_partition_size(P(2, 2), Rational(3), 3), Error);
}

TEST(Budget, MinMaxPartitionExamples) {
  EXPECT_EQ(solve_min_max_partition(R({1, 1, 1}), 2).z_star, Rational(2));
  EXPECT_EQ(solve_min_max_partition(R({1, 1, 1}), 3).z_star, Rational(1));
  EXPECT_EQ(solve_min_max_partition(R({5, 3, 2, 2}), 2).z_star, Rational(7));
  EXPECT_EQ(solve_min_max_partition({Rational(1, 2), Rational(1, 3), Rational(1, 6)}, 2).z_star, Rational(1, 2));
  EXPECT_THROW(solve_min_max_partition(R({1, 2}), 3), Error);
  EXPECT_THROW(solve_min_max_partition(R({1, 2}), 0), Error);
  EXPECT_THROW(solve_min_max_partition(std::vector<Rational>(25, Rational(1)), 2), Error);
}

TEST(Budget, WitnessIsExactPartitionIntoNBlocks) {
  auto sol = solve_min_max_partition(R({5, 3, 2, 2}), 2);
  auto y = sol.assignment();
  ASSERT_EQ(y.size(), 4u);
  std::vector<long> loads(2, 0);
  const std::vector<long> caps{5, 3, 2, 2};
  for (std::size_t l = 0; l < 4; ++l) {
    EXPECT_EQ(y[l][0] + y[l][1], 1);
    for (std::size_t k = 0; k < 2; ++k) loads[k] += caps[l] * y[l][k];
  }
  EXPECT_EQ(Rational(*std::max_element(loads.begin(), loads.end())), sol.z_star);
  EXPECT_EQ(sol.labels.front(), 0u);

  // a single large item makes fewer blocks optimal; the witness still uses n
  auto wide = solve_min_max_partition(R({10, 1, 1, 1}), 4);
  EXPECT_EQ(wide.z_star, Rational(10));
  EXPECT_EQ(wide.blocks({0, 1, 2, 3}).size(), 4u);
}

TEST(Budget, DeterministicLexicographicWitness) {
  auto a = solve_min_max_partition(R({1, 1, 1}), 2);
  EXPECT_EQ(a.labels, (std::vector<std::size_t>{0, 0, 1}));
  auto b = solve_min_max_partition(R({1, 1, 1}), 2);
  EXPECT_EQ(a.labels, b.labels);
}

TEST(Budget, MatchesBruteForceAndPsiIsMonotone) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> len(1, 8);
  std::uniform_int_distribution<long> val(1, 5);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<long> caps(static_cast<std::size_t>(len(rng)));
    for (auto& c : caps) c = val(rng);
    std::uniform_int_distribution<std::size_t> pick(1, caps.size());
    std::size_t n = pick(rng);
    auto sol = solve_min_max_partition(R(caps), n);
    ASSERT_EQ(sol.z_star, Rational(brute_force_makespan(caps, n))) << trial;
    if (n + 1 <= caps.size()) {
      EXPECT_LE(solve_min_max_partition(R(caps), n + 1).z_star, sol.z_star);
    }
    long total = 0;
    for (long c : caps) total += c;
    EXPECT_GE(sol.z_star, Rational(*std::max_element(caps.begin(), caps.end())));
    EXPECT_GE(sol.z_star, Rational(total) / Rational(static_cast<long>(n)));
  }
}

TEST(Budget, MinBudgetEquilibriumFigureFour) {
  auto net = load("fig4");
  auto a = analyze(net);
  auto g = P(5, 2);
  auto be = min_budget_partition_equilibrium(net, a, g);
  EXPECT_EQ(be.analysis.n_star, 2u);
  EXPECT_EQ(be.z_star, Rational(2));
  EXPECT_EQ(be.analysis.b1_star, Rational(9, 2));
  EXPECT_EQ(be.analysis.b2_lower, Rational(6, 5));
  EXPECT_EQ(be.profile.construction, Construction::Prop9a);
  EXPECT_EQ(max_attack_cost(net, be.profile.sigma2), Rational(2));
  for (const auto& b : be.analysis.partition.blocks)
    EXPECT_EQ(attack_cost(Attack(b), net), [&] {
      Rational c;
      for (EdgeId e : b) c += net.edge(e).capacity;
      return c;
    }());
  auto r = verify_equilibrium(net, be.profile.sigma1, be.profile.sigma2, g, a);
  EXPECT_TRUE(r.is_equilibrium);
  EXPECT_LE(be.analysis.b2_lower, be.z_star);
  EXPECT_LE(be.z_star, a.f_max);
}

TEST(Budget, LargeP1UsesWholeCut) {
  auto net = load("fig4");
  auto a = analyze(net);
  auto be = min_budget_partition_equilibrium(net, a, P(100, 2));
  EXPECT_EQ(be.analysis.n_star, 1u);
  EXPECT_EQ(be.z_star, Rational(3));
  EXPECT_EQ(be.profile.construction, Construction::Prop3);
  EXPECT_EQ(be.profile.sigma2.probability_of(a.min_cut.as_attack()), Rational(97, 100));
}

TEST(Budget, BracketHoldsAcrossParameters) {
  for (const char* name : {"fig3", "fig4", "fig7"}) {
    auto net = load(name);
    auto a = analyze(net);
    for (auto g : {P(Rational(7, 2), 2), P(5, 2), P(7, 3), P(100, 2)}) {
      auto n = optimal_partition_size(g, a.alpha, a.min_cut.edges.size());
      if (classify_region(g, a.alpha, n).tag == RegionTag::Boundary) continue;
      auto be = min_budget_partition_equilibrium(net, a, g, true);
      EXPECT_LE(be.analysis.b2_lower, be.z_star) << name;
      EXPECT_LE(be.z_star, a.f_max) << name;
      EXPECT_TRUE(verify_equilibrium(net, be.profile.sigma1, be.profile.sigma2, g, a).is_equilibrium) << name;
    }
  }
}

TEST(Budget, BoundaryParametersRejected) {
  auto net = load("fig4");
  auto a = analyze(net);
  // n* = floor(6/3) = 2 lands exactly on the partition threshold 2 alpha
  EXPECT_THROW(min_budget_partition_equilibrium(net, a, P(6, 2)), Error);
}
