#pragma once

#include <flowgame/equilibria.hpp>
#include <flowgame/flowopt.hpp>
#include <flowgame/payoff.hpp>
#include <flowgame/simplex.hpp>

#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

namespace flowgame {

inline constexpr std::size_t kDefaultEdgeLimit = 24;

struct FlowResponse {
  Rational value;
  FlowAction witness;
};

struct AttackResponse {
  Rational value;
  Attack witness;
};

/// Probability that an attack drawn from `s2` leaves every edge of `path` intact.
inline Rational survival_probability(const MixedAttackStrategy& s2, const std::vector<EdgeId>& path) {
  Rational p;
  for (const auto& a : s2.atoms())
    if (!a.action.hits(path)) p += a.prob;
  return p;
}

/// Defender best response to a mixed attack. U1(x, s2) is linear in the path
/// flows with weight p1 * P(path survives) - path cost, so the best response
/// is a fractional path-packing LP over the enumerated simple paths.
inline FlowResponse best_response_flow(const Network& net, const MixedAttackStrategy& s2, const GameParams& g,
                                       std::size_t path_limit = kDefaultPathLimit) {
  auto paths = enumerate_paths(net, path_limit);
  std::vector<std::size_t> columns;
  std::vector<Rational> weights;
  for (std::size_t k = 0; k < paths.size(); ++k) {
    Rational w = g.p1 * survival_probability(s2, paths[k].edges) - paths[k].cost;
    if (w.sign() > 0) {
      columns.push_back(k);
      weights.push_back(std::move(w));
    }
  }
  if (columns.empty()) return {Rational(0), FlowAction{}};

  std::vector<EdgeId> rows;
  std::map<EdgeId, std::size_t> row_of;
  for (std::size_t k : columns)
    for (EdgeId e : paths[k].edges)
      if (row_of.emplace(e, 0).second) rows.push_back(e);
  std::sort(rows.begin(), rows.end());
  for (std::size_t i = 0; i < rows.size(); ++i) row_of[rows[i]] = i;

  PackingLp lp;
  lp.a.assign(rows.size(), std::vector<Rational>(columns.size()));
  lp.b.resize(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) lp.b[i] = net.edge(rows[i]).capacity;
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (EdgeId e : paths[columns[j]].edges) lp.a[row_of[e]][j] += Rational(1);
  lp.c = weights;

  auto sol = solve_packing_lp(lp);
  FlowResponse out;
  out.value = sol.value;
  for (std::size_t j = 0; j < columns.size(); ++j)
    if (sol.x[j].sign() > 0) out.witness.paths.push_back({paths[columns[j]].edges, sol.x[j]});
  out.witness = out.witness.canonical();
  return out;
}

namespace detail {

/// Expected-loss terms of a flow strategy, grouped by the edge mask of each path.
struct LossTerms {
  std::vector<std::uint64_t> masks;
  std::vector<Rational> weights;  // prob * amount
};

inline LossTerms loss_terms(const Network& net, const MixedFlowStrategy& s1) {
  std::map<std::uint64_t, Rational> grouped;
  for (const auto& atom : s1.atoms())
    for (const auto& p : atom.action.paths) {
      std::uint64_t m = 0;
      for (EdgeId e : p.edges) m |= std::uint64_t{1} << e;
      grouped[m] += atom.prob * p.amount;
    }
  (void)net;
  LossTerms t;
  for (auto& [m, w] : grouped) {
    t.masks.push_back(m);
    t.weights.push_back(w);
  }
  return t;
}

inline std::vector<EdgeId> mask_edges(std::uint64_t m, const std::vector<EdgeId>& universe) {
  std::vector<EdgeId> out;
  for (std::size_t i = 0; i < universe.size(); ++i)
    if (m >> i & 1U) out.push_back(universe[i]);
  return out;
}

struct Candidate {
  Rational value;
  std::uint64_t mask = 0;
  int popcount = 0;
  bool valid = false;
};

/// Higher value, then fewer edges, then lexicographically smaller edge list.
/// Attack edges are bits of `mask` in ascending universe order, so the
/// lexicographic comparison reduces to comparing ascending bit sequences.
inline bool better(const Candidate& a, const Candidate& b, bool maximize) {
  if (!b.valid) return a.valid;
  if (!a.valid) return false;
  if (a.value != b.value) return maximize ? a.value > b.value : a.value < b.value;
  if (a.popcount != b.popcount) return a.popcount < b.popcount;
  std::uint64_t x = a.mask;
  std::uint64_t y = b.mask;
  while (x != 0 && y != 0) {
    int ia = std::countr_zero(x);
    int ib = std::countr_zero(y);
    if (ia != ib) return ia < ib;
    x &= x - 1;
    y &= y - 1;
  }
  return false;
}

/// Exhaustive search over every subset of `universe` for the extremum of
/// score(expected loss, attack cost). Chunks run in parallel and are reduced
/// in chunk order, so the witness does not depend on the thread count.
inline Candidate search_attacks(const Network& net, const MixedFlowStrategy& s1, const std::vector<EdgeId>& universe,
                                const std::function<Rational(const Rational&, const Rational&)>& score,
                                bool maximize, unsigned threads = 0) {
  // project path masks onto the universe bits
  LossTerms terms = loss_terms(net, s1);
  std::vector<std::uint64_t> local_masks;
  for (std::uint64_t m : terms.masks) {
    std::uint64_t lm = 0;
    for (std::size_t i = 0; i < universe.size(); ++i)
      if (m >> universe[i] & 1U) lm |= std::uint64_t{1} << i;
    local_masks.push_back(lm);
  }
  std::vector<Rational> caps;
  for (EdgeId e : universe) caps.push_back(net.edge(e).capacity);

  const std::uint64_t total = std::uint64_t{1} << universe.size();
  auto run = [&](std::uint64_t begin, std::uint64_t end) {
    Candidate best;
    for (std::uint64_t m = begin; m < end; ++m) {
      Rational lost;
      for (std::size_t k = 0; k < local_masks.size(); ++k)
        if (local_masks[k] & m) lost += terms.weights[k];
      Rational cost;
      for (std::uint64_t r = m; r != 0; r &= r - 1) cost += caps[static_cast<std::size_t>(std::countr_zero(r))];
      Candidate c{score(lost, cost), m, std::popcount(m), true};
      if (better(c, best, maximize)) best = std::move(c);
    }
    return best;
  };

  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  if (total < (std::uint64_t{1} << 14) || threads == 1) return run(0, total);

  const std::uint64_t chunks = std::min<std::uint64_t>(threads, total);
  std::vector<Candidate> partial(chunks);
  std::vector<std::thread> pool;
  for (std::uint64_t c = 0; c < chunks; ++c) {
    std::uint64_t begin = total * c / chunks;
    std::uint64_t end = total * (c + 1) / chunks;
    pool.emplace_back([&, c, begin, end] { partial[c] = run(begin, end); });
  }
  for (auto& t : pool) t.join();
  Candidate best;
  for (auto& c : partial)
    if (better(c, best, maximize)) best = std::move(c);
  return best;
}

inline std::vector<EdgeId> all_edges(const Network& net) {
  std::vector<EdgeId> v(net.edge_count());
  for (EdgeId e = 0; e < v.size(); ++e) v[e] = e;
  return v;
}

inline void check_edge_limit(std::size_t count, std::size_t limit) {
  if (count > limit || count >= 63)
    throw Error(ErrorCode::TooManyEdges,
                std::to_string(count) + " edges exceed the exhaustive attack limit of " + std::to_string(limit));
}

}  // namespace detail

/// Attacker best response by enumerating all 2^|E| attacks. Ties go to the
/// attack with fewer edges, then to the lexicographically smaller edge list.
inline AttackResponse best_response_attack(const Network& net, const MixedFlowStrategy& s1, const GameParams& g,
                                           std::size_t edge_limit = kDefaultEdgeLimit, unsigned threads = 0) {
  detail::check_edge_limit(net.edge_count(), edge_limit);
  auto universe = detail::all_edges(net);
  auto best = detail::search_attacks(
      net, s1, universe, [&](const Rational& lost, const Rational& cost) { return g.p2 * lost - cost; }, true,
      threads);
  return {best.value, Attack(detail::mask_edges(best.mask, universe))};
}

/// Same search restricted to subsets of `allowed` edges (e.g. the edges
/// saturated by x*). Used as a cross-check, never as the certifying oracle.
inline AttackResponse best_response_attack_restricted(const Network& net, const MixedFlowStrategy& s1,
                                                      const GameParams& g, std::vector<EdgeId> allowed,
                                                      std::size_t edge_limit = kDefaultEdgeLimit) {
  std::sort(allowed.begin(), allowed.end());
  allowed.erase(std::unique(allowed.begin(), allowed.end()), allowed.end());
  detail::check_edge_limit(allowed.size(), edge_limit);
  auto best = detail::search_attacks(
      net, s1, allowed, [&](const Rational& lost, const Rational& cost) { return g.p2 * lost - cost; }, true, 1);
  return {best.value, Attack(detail::mask_edges(best.mask, allowed))};
}

/// Edges whose flow under x* equals their capacity.
inline std::vector<EdgeId> saturated_edges(const Network& net, const FlowAction& x) {
  auto flows = edge_flows(net, x);
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < net.edge_count(); ++e)
    if (flows[e] == net.edge(e).capacity && net.edge(e).capacity.sign() > 0) out.push_back(e);
  return out;
}

enum class CheckStatus { Pass, Fail, NotApplicable };

constexpr std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::NotApplicable: return "not_applicable";
  }
  return "?";
}

struct NamedCheck {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::string detail;
};

/// Necessary conditions on equilibrium supports: every support flow uses only
/// cheapest paths; every support attack costs at most F^max and only disrupts
/// edges saturated by x*; every min-cut edge carries flow in some support flow.
inline std::vector<NamedCheck> check_support_conditions(const Network& net, const MixedFlowStrategy& s1,
                                                        const MixedAttackStrategy& s2, const FlowAnalysis& a,
                                                        const GameParams& g) {
  (void)g;
  std::vector<NamedCheck> out;

  NamedCheck lemma3{"lemma3_cheapest_paths", CheckStatus::Pass, ""};
  if (!a.assumption1) {
    lemma3.status = CheckStatus::NotApplicable;
    lemma3.detail = "assumption 1 does not hold";
  } else {
    for (std::size_t i = 0; i < s1.size() && lemma3.status == CheckStatus::Pass; ++i)
      for (const auto& p : s1.atoms()[i].action.paths) {
        Rational c = path_cost(net, p.edges);
        if (p.amount.sign() > 0 && c != a.alpha) {
          lemma3.status = CheckStatus::Fail;
          std::string nodes;
          for (const auto& n : path_node_names(net, p.edges)) nodes += (nodes.empty() ? "" : ",") + n;
          lemma3.detail = "flow atom " + std::to_string(i) + " uses path {" + nodes + "} of cost " + c.str() +
                          " != alpha = " + a.alpha.str();
          break;
        }
      }
  }
  out.push_back(std::move(lemma3));

  NamedCheck cost{"prop4_attack_cost", CheckStatus::Pass, ""};
  for (std::size_t i = 0; i < s2.size(); ++i) {
    Rational c = attack_cost(s2.atoms()[i].action, net);
    if (c > a.f_max) {
      cost.status = CheckStatus::Fail;
      cost.detail = "attack atom " + std::to_string(i) + " costs " + c.str() + " > F^max = " + a.f_max.str();
      break;
    }
  }
  out.push_back(std::move(cost));

  NamedCheck sat{"prop4_saturation", CheckStatus::Pass,
                 "checked against the canonical x* only (approximate for edges outside every min-cut)"};
  auto saturated = saturated_edges(net, a.x_star);
  for (std::size_t i = 0; i < s2.size() && sat.status == CheckStatus::Pass; ++i)
    for (EdgeId e : s2.atoms()[i].action.edges())
      if (!std::binary_search(saturated.begin(), saturated.end(), e)) {
        sat.status = CheckStatus::Fail;
        sat.detail = "attack atom " + std::to_string(i) + " disrupts " + net.edge_label(e) +
                     ", which x* does not saturate";
        break;
      }
  out.push_back(std::move(sat));

  NamedCheck cover{"corollary2_cut_coverage", CheckStatus::Pass, ""};
  std::vector<CutSet> cuts = a.all_min_cuts ? *a.all_min_cuts : std::vector<CutSet>{a.min_cut};
  for (const auto& cut : cuts) {
    for (EdgeId e : cut.edges) {
      if (net.edge(e).capacity.is_zero()) continue;
      bool used = std::any_of(s1.atoms().begin(), s1.atoms().end(),
                              [&](const auto& atom) { return edge_flows(net, atom.action)[e].sign() > 0; });
      if (!used) {
        cover.status = CheckStatus::Fail;
        cover.detail = "no support flow uses min-cut edge " + net.edge_label(e);
        break;
      }
    }
    if (cover.status == CheckStatus::Fail) break;
  }
  out.push_back(std::move(cover));
  return out;
}

struct CutReport {
  CutSet cut;
  std::vector<CutEdgeStat> stats;
  NamedCheck expected_flow;  // E[x_ij] = c_ij / p2
  NamedCheck disruption;     // P(disrupted) = 1 - alpha/p1 when attacks stay inside the cut
};

inline CutReport cut_report(const Network& net, const MixedFlowStrategy& s1, const MixedAttackStrategy& s2,
                            const CutSet& cut, const FlowAnalysis& a, const GameParams& g) {
  CutReport r;
  r.cut = cut;
  r.stats = cut_edge_statistics(net, s1, s2, cut);
  r.expected_flow = {"prop5_expected_flow", CheckStatus::Pass, ""};
  for (const auto& st : r.stats)
    if (st.expected_flow != st.capacity / g.p2) {
      r.expected_flow.status = CheckStatus::Fail;
      r.expected_flow.detail = "E[x] on " + net.edge_label(st.edge) + " is " + st.expected_flow.str() +
                               ", expected " + (st.capacity / g.p2).str();
      break;
    }
  r.disruption = {"prop5_disruption_probability", CheckStatus::Pass, ""};
  bool inside = std::all_of(s2.atoms().begin(), s2.atoms().end(),
                            [&](const auto& atom) { return atom.action.subset_of(cut.edges); });
  if (!inside) {
    r.disruption.status = CheckStatus::NotApplicable;
    r.disruption.detail = "some attack disrupts edges outside this cut";
  } else {
    const Rational target = Rational(1) - a.alpha / g.p1;
    for (const auto& st : r.stats)
      if (st.disruption_probability != target) {
        r.disruption.status = CheckStatus::Fail;
        r.disruption.detail = net.edge_label(st.edge) + " disrupted w.p. " + st.disruption_probability.str() +
                              ", expected " + target.str();
        break;
      }
  }
  return r;
}

struct Residual {
  std::string name;
  Rational measured;
  Rational expected;
  Rational residual;
};

struct VerificationReport {
  Rational u1;
  Rational u2;
  Rational br1_value;
  FlowAction br1_witness;
  Rational br2_value;
  Attack br2_witness;
  Rational gap1;
  Rational gap2;
  Rational eps;
  bool is_equilibrium = false;
  Region region;
  /// Filled when both gaps vanish in region III under assumption 1.
  std::vector<Residual> theorem1_residuals;
  std::optional<ProbabilityBoundsReport> probability_bounds;
  std::vector<NamedCheck> support_checks;
  std::vector<CutReport> cut_reports;

  [[nodiscard]] bool residuals_zero() const {
    return std::all_of(theorem1_residuals.begin(), theorem1_residuals.end(),
                       [](const Residual& r) { return r.residual.is_zero(); });
  }
};

struct VerifyOptions {
  std::size_t path_limit = kDefaultPathLimit;
  std::size_t edge_limit = kDefaultEdgeLimit;
  Rational eps;
  unsigned threads = 0;
};

inline std::vector<Residual> theorem1_residuals(const Network& net, const MixedFlowStrategy& s1,
                                                const MixedAttackStrategy& s2, const FlowAnalysis& a,
                                                const GameParams& g) {
  auto want = theorem1_quantities(a, g);
  auto got = measured_quantities(net, s1, s2, g);
  std::vector<Residual> out;
  auto add = [&](const char* name, const Rational& m, const Rational& e) { out.push_back({name, m, e, m - e}); };
  add("u1", got.u1, want.u1);
  add("u2", got.u2, want.u2);
  add("expected_flow", got.exp_flow, want.exp_flow);
  add("expected_transport", got.exp_transport, want.exp_transport);
  add("expected_attack_cost", got.exp_attack_cost, want.exp_attack_cost);
  add("expected_effective_flow", got.exp_effective, want.exp_effective);
  add("expected_loss", got.exp_loss, want.exp_loss);
  add("yield", got.yield, want.yield);
  return out;
}

/// Best-response gaps for both players; zero gaps certify a Nash equilibrium.
/// On a certified region-III equilibrium under assumption 1 the closed-form
/// residuals, probability bounds, support conditions and cut statistics are
/// evaluated as well.
inline VerificationReport verify_equilibrium(const Network& net, const MixedFlowStrategy& s1,
                                             const MixedAttackStrategy& s2, const GameParams& g,
                                             const FlowAnalysis& a, const VerifyOptions& opts = {}) {
  check_strategies(net, s1, s2);
  VerificationReport rep;
  auto pay = expected_payoffs(net, s1, s2, g);
  rep.u1 = pay.u1;
  rep.u2 = pay.u2;
  auto br1 = best_response_flow(net, s2, g, opts.path_limit);
  auto br2 = best_response_attack(net, s1, g, opts.edge_limit, opts.threads);
  rep.br1_value = br1.value;
  rep.br1_witness = br1.witness;
  rep.br2_value = br2.value;
  rep.br2_witness = br2.witness;
  rep.gap1 = br1.value - rep.u1;
  rep.gap2 = br2.value - rep.u2;
  rep.eps = opts.eps;
  rep.is_equilibrium = rep.gap1 <= opts.eps && rep.gap2 <= opts.eps;
  rep.region = classify_region(g, a.alpha);

  if (rep.is_equilibrium && rep.region.in_region_three() && a.assumption1) {
    rep.theorem1_residuals = theorem1_residuals(net, s1, s2, a, g);
    rep.probability_bounds = check_probability_bounds(s1, s2, a, g);
    rep.support_checks = check_support_conditions(net, s1, s2, a, g);
    std::vector<CutSet> cuts = a.all_min_cuts ? *a.all_min_cuts : std::vector<CutSet>{a.min_cut};
    for (const auto& cut : cuts) rep.cut_reports.push_back(cut_report(net, s1, s2, cut, a, g));
  }
  return rep;
}

struct Lemma4Report {
  std::size_t trials = 0;
  std::size_t violations = 0;          // loss > cost on random (x, mu)
  std::size_t effective_violations = 0;  // F(x^mu) outside [0, F(x)]
  std::size_t equality_cases = 0;
  std::size_t equality_violations = 0;  // x*, mu inside the min-cut: loss != cost
  std::string first_violation;

  [[nodiscard]] bool ok() const { return violations == 0 && effective_violations == 0 && equality_violations == 0; }
};

/// Random feasible path flow: random amounts on random simple paths, scaled
/// down uniformly until every edge is within capacity.
inline FlowAction random_feasible_flow(const Network& net, const std::vector<PathInfo>& paths, std::mt19937_64& rng) {
  FlowAction x;
  std::uniform_int_distribution<int> amount(0, 6);
  std::uniform_int_distribution<int> denom(1, 4);
  for (const auto& p : paths) {
    int k = amount(rng);
    if (k > 0 && rng() % 2 == 0) x.paths.push_back({p.edges, Rational(k, denom(rng))});
  }
  auto flows = edge_flows(net, x);
  std::optional<Rational> factor;
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    if (flows[e].sign() <= 0) continue;
    Rational r = net.edge(e).capacity / flows[e];
    if (!factor || r < *factor) factor = r;
  }
  if (factor && *factor < Rational(1)) x = x.scaled(*factor);
  return x.canonical();
}

inline Attack random_attack(const Network& net, std::mt19937_64& rng) {
  std::vector<EdgeId> edges;
  for (EdgeId e = 0; e < net.edge_count(); ++e)
    if (rng() % 2 == 0) edges.push_back(e);
  return Attack(std::move(edges));
}

/// Property check: loss never exceeds attack cost, and equals it for x*
/// against any attack inside the canonical min-cut.
inline Lemma4Report check_lemma4(const Network& net, const FlowAnalysis& a, std::size_t trials, std::uint64_t seed,
                                 std::size_t path_limit = kDefaultPathLimit) {
  Lemma4Report rep;
  rep.trials = trials;
  std::mt19937_64 rng(seed);
  auto paths = enumerate_paths(net, path_limit);
  for (std::size_t t = 0; t < trials; ++t) {
    FlowAction x = random_feasible_flow(net, paths, rng);
    Attack mu = random_attack(net, rng);
    Rational l = loss(x, mu);
    Rational c = attack_cost(mu, net);
    Rational eff = flow_value(effective_flow(x, mu));
    if (l > c) {
      ++rep.violations;
      if (rep.first_violation.empty()) rep.first_violation = "trial " + std::to_string(t) + ": loss " + l.str() + " > cost " + c.str();
    }
    if (eff.sign() < 0 || eff > flow_value(x)) ++rep.effective_violations;
  }
  const auto& cut = a.min_cut.edges;
  if (cut.size() < 20) {
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << cut.size()); ++m) {
      Attack mu(detail::mask_edges(m, cut));
      ++rep.equality_cases;
      if (loss(a.x_star, mu) != attack_cost(mu, net)) {
        ++rep.equality_violations;
        if (rep.first_violation.empty()) rep.first_violation = "x* against a cut subset: loss != cost";
      }
    }
  }
  return rep;
}

struct MinimaxReport {
  Rational min_attack_u1;       // min over attacks of U1(sigma1*, mu), exhaustive
  Rational neg_expected_transport;
  Rational u1_at_full_cut;      // U1(sigma1*, mu_min)
  Rational max_flow_u1;         // max over flows of U1(x, sigma2*)
  Rational maximin_u1_by_x0;    // min over attacks of U1(x^0, mu)
  Rational max_attack_u2;       // max over attacks of U2(sigma1*, mu)
  Rational maximin_u2_by_mu0;   // min over flows of U2(x, mu^0)
  Rational min_flow_u2_at_sigma2;  // min over flows of U2(x, sigma2*)
  bool ok = false;
};

/// Minimum over flows of U2(x, s2). Every path weight p2 P(path hit) is
/// non-negative, so x^0 attains it and the value is -E[C(mu)].
inline Rational min_over_flows_u2(const Network& net, const MixedAttackStrategy& s2) {
  return -expect(s2, [&](const Attack& mu) { return attack_cost(mu, net); });
}

inline MinimaxReport minimax_checks(const Network& net, const MixedFlowStrategy& s1, const MixedAttackStrategy& s2,
                                    const FlowAnalysis& a, const GameParams& g, const VerifyOptions& opts = {}) {
  detail::require_region_three(classify_region(g, a.alpha), "minimax checks");
  detail::check_edge_limit(net.edge_count(), opts.edge_limit);
  MinimaxReport r;
  const Rational exp_flow = expect(s1, [](const FlowAction& x) { return flow_value(x); });
  const Rational exp_transport = expect(s1, [&](const FlowAction& x) { return transport_cost(x, net); });
  auto universe = detail::all_edges(net);
  auto u1_of = [&](const Rational& lost, const Rational&) { return g.p1 * (exp_flow - lost) - exp_transport; };
  r.min_attack_u1 = detail::search_attacks(net, s1, universe, u1_of, false, opts.threads).value;
  r.neg_expected_transport = -exp_transport;
  r.u1_at_full_cut =
      expect(s1, [&](const FlowAction& x) { return payoff_u1(net, x, a.min_cut.as_attack(), g); });
  r.max_flow_u1 = best_response_flow(net, s2, g, opts.path_limit).value;
  auto x0 = MixedFlowStrategy::pure(FlowAction{});
  r.maximin_u1_by_x0 =
      detail::search_attacks(net, x0, universe, [&](const Rational&, const Rational&) { return Rational(0); }, false,
                             opts.threads)
          .value;
  r.max_attack_u2 = best_response_attack(net, s1, g, opts.edge_limit, opts.threads).value;
  r.maximin_u2_by_mu0 = min_over_flows_u2(net, MixedAttackStrategy::pure(Attack{}));
  r.min_flow_u2_at_sigma2 = min_over_flows_u2(net, s2);
  r.ok = r.min_attack_u1 == r.neg_expected_transport && r.u1_at_full_cut == r.neg_expected_transport &&
         r.max_flow_u1.is_zero() && r.maximin_u1_by_x0.is_zero() && r.max_attack_u2.is_zero() &&
         r.maximin_u2_by_mu0.is_zero();
  return r;
}

struct ZeroSumValue {
  Rational value;
  Rational target;
  Rational residual;
};

/// Expected zero-sum payoff against its equilibrium value (1/p2)(1 - alpha/p1) F^max.
inline ZeroSumValue zero_sum_value_check(const Network& net, const MixedFlowStrategy& s1,
                                         const MixedAttackStrategy& s2, const FlowAnalysis& a, const GameParams& g) {
  ZeroSumValue z;
  z.value = expected_zero_sum_payoff(net, s1, s2, g);
  z.target = (Rational(1) - a.alpha / g.p1) * a.f_max / g.p2;
  z.residual = z.value - z.target;
  return z;
}

}  // namespace flowgame
