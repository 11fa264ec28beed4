#include "helpers.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace flowgame;
using namespace testing_helpers;

namespace {

GameParams P(Rational p1, Rational p2) { return GameParams::make(std::move(p1), std::move(p2)); }

}  // namespace

TEST(Sampler, ThresholdsAreExact) {
  auto s = MixedAttackStrategy::create({{Attack{}, Rational(1, 3)}, {Attack({0}), Rational(2, 3)}});
  AtomSampler sampler(s);
  // 2^64 / 3 = 6148914691236517205.33..., so the first atom covers u <= 6148914691236517205
  EXPECT_EQ(sampler.pick(0), 0u);
  EXPECT_EQ(sampler.pick(6148914691236517205ULL), 0u);
  EXPECT_EQ(sampler.pick(6148914691236517206ULL), 1u);
  EXPECT_EQ(sampler.pick(~0ULL), 1u);

  auto half = MixedAttackStrategy::create({{Attack{}, Rational(1, 2)}, {Attack({0}), Rational(1, 2)}});
  AtomSampler h(half);
  EXPECT_EQ(h.pick((1ULL << 63) - 1), 0u);
  EXPECT_EQ(h.pick(1ULL << 63), 1u);
}

TEST(Sampler, PureStrategiesAlwaysPickTheirAtom) {
  AtomSampler s(MixedAttackStrategy::pure(Attack{}));
  for (std::uint64_t u : {0ULL, 1ULL << 40, ~0ULL}) EXPECT_EQ(s.pick(u), 0u);
}

TEST(Play, NoFlowNoAttack) {
  auto net = load("fig4");
  auto g = P(6, 2);
  auto s1 = MixedFlowStrategy::pure(FlowAction{});
  auto s2 = MixedAttackStrategy::pure(Attack{});
  TrialStream rng{7, 0};
  for (int i = 0; i < 10; ++i) {
    Play p = sample_play(net, s1, s2, g, rng);
    EXPECT_EQ(p.u1, 0.0);
    EXPECT_EQ(p.u2, 0.0);
  }
}

TEST(Play, RealizedOutcomeValues) {
  auto net = load("fig4");
  auto a = analyze(net);
  auto g = P(6, 2);
  auto p = region3_equilibrium(a, g);
  PlayTable table(net, p.sigma1, p.sigma2, g);
  bool seen_flow_no_attack = false;
  for (std::uint64_t t = 0; t < 200; ++t) {
    TrialStream rng{11, t};
    Play play = table.sample(rng);
    EXPECT_EQ(play.loss, play.flow - play.effective_flow);
    const bool sent = p.sigma1.atoms()[play.flow_atom].action == a.x_star;
    const bool attacked = !p.sigma2.atoms()[play.attack_atom].action.empty();
    if (sent && !attacked) {
      EXPECT_EQ(play.u1, 6.0 * 3 - 9);
      EXPECT_EQ(play.u2, 0.0);
      seen_flow_no_attack = true;
    }
    if (sent && attacked) {
      EXPECT_EQ(play.u1, -9.0);
      EXPECT_EQ(play.u2, 2.0 * 3 - 3);
    }
  }
  EXPECT_TRUE(seen_flow_no_attack);
}

TEST(MonteCarlo, SingleTrialMeansEqualTheDraw) {
  auto net = load("fig4");
  auto a = analyze(net);
  auto g = P(6, 2);
  auto p = region3_equilibrium(a, g);
  auto res = monte_carlo(net, p.sigma1, p.sigma2, g, 1, 3);
  TrialStream rng{3, 0};
  Play play = PlayTable(net, p.sigma1, p.sigma2, g).sample(rng);
  EXPECT_EQ(res.at("u1").mean, play.u1);
  EXPECT_EQ(res.at("u2").mean, play.u2);
  EXPECT_EQ(res.at("effective_flow").mean, play.effective_flow);
  EXPECT_EQ(res.at("u1").std_error, 0.0);
  EXPECT_THROW(monte_carlo(net, p.sigma1, p.sigma2, g, 0, 3), Error);
}

TEST(MonteCarlo, DeterministicAcrossThreadCounts) {
  auto net = load("fig4");
  auto a = analyze(net);
  auto g = P(5, 2);
  auto p = partition_equilibrium(a, g, enumerate_partitions(a.min_cut.edges)[4]);
  SimOptions one;
  one.threads = 1;
  SimOptions many;
  many.threads = 7;
  auto r1 = monte_carlo(net, p.sigma1, p.sigma2, g, 20000, 123, one);
  auto r2 = monte_carlo(net, p.sigma1, p.sigma2, g, 20000, 123, many);
  auto r3 = monte_carlo(net, p.sigma1, p.sigma2, g, 20000, 123, many);
  EXPECT_EQ(r1, r2);
  EXPECT_EQ(r2, r3);
  auto other = monte_carlo(net, p.sigma1, p.sigma2, g, 20000, 124, one);
  EXPECT_FALSE(r1 == other);
}

TEST(MonteCarlo, EstimatesAgreeWithClosedForms) {
  auto net = load("fig4");
  auto a = analyze(net);
  auto g = P(6, 2);
  auto p = region3_equilibrium(a, g);
  SimOptions opts;
  opts.targets = theorem1_quantities(a, g);
  auto res = monte_carlo(net, p.sigma1, p.sigma2, g, 50000, 2024, opts);
  EXPECT_EQ(res.quantities.size(), 8u);
  for (const auto& q : res.quantities) {
    ASSERT_TRUE(q.target);
    EXPECT_LT(std::abs(q.z_score), 4.0) << q.name;
    EXPECT_DOUBLE_EQ(q.exact, *q.target) << q.name;
  }
  EXPECT_NEAR(res.at("effective_flow").mean, 0.75, 4 * res.at("effective_flow").std_error);
  EXPECT_NEAR(res.at("flow").mean - res.at("effective_flow").mean, res.at("loss").mean, 1e-9);
}

TEST(MonteCarlo, StreamsAreIndependentOfOrder) {
  TrialStream a{42, 1000};
  TrialStream b{42, 1000};
  EXPECT_EQ(a.next(), b.next());
  TrialStream c{42, 1001};
  EXPECT_NE(TrialStream({42, 1000}).next(), c.next());
}
