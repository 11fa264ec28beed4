#pragma once

#include <flowgame/equilibria.hpp>
#include <flowgame/payoff.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

namespace flowgame {

/// SplitMix64 finalizer, used as a counter-based generator: the k-th draw of
/// trial i is mix(seed, i, k), independent of evaluation order.
constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct TrialStream {
  std::uint64_t seed;
  std::uint64_t trial;
  std::uint64_t counter = 0;

  std::uint64_t next() { return splitmix64(splitmix64(seed ^ splitmix64(trial)) + counter++); }
};

/// Atom selector: draw u uniform on [0, 2^64) and pick the first atom with
/// u < cum_k * 2^64. Each bound is an exact integer ceil, so the comparison
/// matches the rational probabilities exactly.
class AtomSampler {
 public:
  template <class Action>
  explicit AtomSampler(const MixedStrategy<Action>& s) {
    const mpz_class two64 = mpz_class(1) << 64;
    Rational cum;
    for (std::size_t k = 0; k + 1 < s.size(); ++k) {
      cum += s.atoms()[k].prob;
      mpz_class scaled = cum.numerator() * two64;
      mpz_class bound;
      mpz_cdiv_q(bound.get_mpz_t(), scaled.get_mpz_t(), cum.denominator().get_mpz_t());
      std::uint64_t b = 0;
      if (bound >= two64) {
        b = std::numeric_limits<std::uint64_t>::max();
        saturated_.push_back(true);
      } else {
        b = mpz_to_u64(bound);
        saturated_.push_back(false);
      }
      bounds_.push_back(b);
    }
  }

  [[nodiscard]] std::size_t pick(std::uint64_t u) const {
    for (std::size_t k = 0; k < bounds_.size(); ++k)
      if (saturated_[k] || u < bounds_[k]) return k;
    return bounds_.size();
  }

 private:
  static std::uint64_t mpz_to_u64(const mpz_class& v) {
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, v.get_mpz_t());
    return out;
  }

  std::vector<std::uint64_t> bounds_;
  std::vector<bool> saturated_;
};

struct Play {
  std::size_t flow_atom = 0;
  std::size_t attack_atom = 0;
  double u1 = 0;
  double u2 = 0;
  double flow = 0;
  double transport = 0;
  double attack_cost = 0;
  double effective_flow = 0;
  double loss = 0;
};

/// Exact outcome of every (flow atom, attack atom) pair, converted to double once.
class PlayTable {
 public:
  PlayTable(const Network& net, const MixedFlowStrategy& s1, const MixedAttackStrategy& s2, const GameParams& g)
      : sampler1_(s1), sampler2_(s2), cols_(s2.size()) {
    for (const auto& a1 : s1.atoms())
      for (const auto& a2 : s2.atoms()) {
        const FlowAction& x = a1.action;
        const Attack& mu = a2.action;
        Play p;
        p.u1 = payoff_u1(net, x, mu, g).to_double();
        p.u2 = payoff_u2(net, x, mu, g).to_double();
        p.flow = flow_value(x).to_double();
        p.transport = transport_cost(x, net).to_double();
        p.attack_cost = attack_cost(mu, net).to_double();
        p.effective_flow = flow_value(effective_flow(x, mu)).to_double();
        p.loss = p.flow - p.effective_flow;
        table_.push_back(p);
      }
  }

  [[nodiscard]] Play sample(TrialStream& rng) const {
    std::size_t i = sampler1_.pick(rng.next());
    std::size_t j = sampler2_.pick(rng.next());
    Play p = table_[i * cols_ + j];
    p.flow_atom = i;
    p.attack_atom = j;
    return p;
  }

 private:
  AtomSampler sampler1_;
  AtomSampler sampler2_;
  std::size_t cols_;
  std::vector<Play> table_;
};

/// One independent play of the two mixed strategies.
inline Play sample_play(const Network& net, const MixedFlowStrategy& s1, const MixedAttackStrategy& s2,
                        const GameParams& g, TrialStream& rng) {
  return PlayTable(net, s1, s2, g).sample(rng);
}

struct SimQuantity {
  std::string name;
  double mean = 0;
  double std_error = 0;
  double exact = 0;                  // exact expectation under the simulated strategies
  std::optional<double> target;      // closed-form equilibrium value, when known
  double z_score = 0;                // against target if present, else against exact

  friend bool operator==(const SimQuantity& a, const SimQuantity& b) {
    auto same = [](double x, double y) { return std::bit_cast<std::uint64_t>(x) == std::bit_cast<std::uint64_t>(y); };
    return a.name == b.name && same(a.mean, b.mean) && same(a.std_error, b.std_error) && same(a.exact, b.exact) &&
           a.target.has_value() == b.target.has_value() && (!a.target || same(*a.target, *b.target)) &&
           same(a.z_score, b.z_score);
  }
};

struct SimResult {
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<SimQuantity> quantities;

  [[nodiscard]] const SimQuantity& at(const std::string& name) const {
    for (const auto& q : quantities)
      if (q.name == name) return q;
    throw std::out_of_range("no simulated quantity named " + name);
  }

  [[nodiscard]] double max_abs_z() const {
    double m = 0;
    for (const auto& q : quantities) m = std::max(m, std::abs(q.z_score));
    return m;
  }

  friend bool operator==(const SimResult&, const SimResult&) = default;
};

namespace detail {

/// Kahan-compensated sum in index order.
inline double kahan_sum(const std::vector<double>& v) {
  double sum = 0;
  double c = 0;
  for (double x : v) {
    double y = x - c;
    double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  return sum;
}

inline std::pair<double, double> mean_and_se(const std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  const double mean = kahan_sum(v) / n;
  if (v.size() < 2) return {mean, 0.0};
  std::vector<double> sq(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) sq[i] = (v[i] - mean) * (v[i] - mean);
  return {mean, std::sqrt(kahan_sum(sq) / (n - 1) / n)};
}

inline double z_of(double mean, double se, double reference) {
  const double diff = mean - reference;
  if (se > 0) return diff / se;
  if (std::abs(diff) <= 1e-12 * std::max(1.0, std::abs(reference))) return 0.0;
  return diff > 0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
}

}  // namespace detail

struct SimOptions {
  unsigned threads = 0;
  /// When set, z-scores are taken against the closed-form equilibrium values.
  std::optional<TheoremOneQuantities> targets;
};

/// Seeded simulation: trial i draws from its own substream, per-trial values
/// are stored by index and reduced in order, so the result is bit-identical
/// for any thread count.
inline SimResult monte_carlo(const Network& net, const MixedFlowStrategy& s1, const MixedAttackStrategy& s2,
                             const GameParams& g, std::size_t trials, std::uint64_t seed,
                             const SimOptions& opts = {}) {
  if (trials == 0) throw Error(ErrorCode::InvalidStrategy, "simulation needs at least one trial");
  PlayTable table(net, s1, s2, g);
  constexpr std::size_t kFields = 7;
  std::vector<std::vector<double>> values(kFields, std::vector<double>(trials));

  auto run = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      TrialStream rng{seed, i};
      Play p = table.sample(rng);
      values[0][i] = p.u1;
      values[1][i] = p.u2;
      values[2][i] = p.flow;
      values[3][i] = p.transport;
      values[4][i] = p.attack_cost;
      values[5][i] = p.effective_flow;
      values[6][i] = p.loss;
    }
  };
  unsigned threads = opts.threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : opts.threads;
  if (threads == 1 || trials < 4096) {
    run(0, trials);
  } else {
    std::vector<std::thread> pool;
    for (unsigned c = 0; c < threads; ++c)
      pool.emplace_back(run, trials * c / threads, trials * (c + 1) / threads);
    for (auto& t : pool) t.join();
  }

  auto exact = measured_quantities(net, s1, s2, g);
  const Rational exact_loss = exact.exp_flow - exact.exp_effective;
  const char* names[kFields] = {"u1", "u2", "flow", "transport", "attack_cost", "effective_flow", "loss"};
  const Rational* exact_of[kFields] = {&exact.u1,        &exact.u2,           &exact.exp_flow, &exact.exp_transport,
                                       &exact.exp_attack_cost, &exact.exp_effective, &exact_loss};
  std::optional<Rational> target_of[kFields];
  if (opts.targets) {
    const auto& t = *opts.targets;
    target_of[0] = t.u1;
    target_of[1] = t.u2;
    target_of[2] = t.exp_flow;
    target_of[3] = t.exp_transport;
    target_of[4] = t.exp_attack_cost;
    target_of[5] = t.exp_effective;
    target_of[6] = t.exp_loss;
  }

  SimResult res;
  res.trials = trials;
  res.seed = seed;
  for (std::size_t f = 0; f < kFields; ++f) {
    SimQuantity q;
    q.name = names[f];
    std::tie(q.mean, q.std_error) = detail::mean_and_se(values[f]);
    q.exact = exact_of[f]->to_double();
    if (target_of[f]) q.target = target_of[f]->to_double();
    q.z_score = detail::z_of(q.mean, q.std_error, q.target.value_or(q.exact));
    res.quantities.push_back(std::move(q));
  }

  // yield = E[F(x^mu)] / E[F(x)], with a delta-method standard error
  SimQuantity y;
  y.name = "yield";
  const double mf = res.quantities[2].mean;
  const double me = res.quantities[5].mean;
  y.mean = mf > 0 ? me / mf : 0.0;
  if (mf > 0 && trials >= 2) {
    std::vector<double> resid(trials);
    for (std::size_t i = 0; i < trials; ++i) resid[i] = values[5][i] - y.mean * values[2][i];
    auto [rm, rse] = detail::mean_and_se(resid);
    (void)rm;
    y.std_error = rse / mf;
  }
  y.exact = exact.yield.to_double();
  if (opts.targets) y.target = opts.targets->yield.to_double();
  y.z_score = detail::z_of(y.mean, y.std_error, y.target.value_or(y.exact));
  res.quantities.push_back(std::move(y));
  return res;
}

}  // namespace flowgame
