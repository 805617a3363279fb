#pragma once

#include <algorithm>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "judgment/circumstance.hpp"
#include "judgment/evidence.hpp"
#include "judgment/implication.hpp"
#include "judgment/info.hpp"

namespace judgment {

/// A reported value: always as bits/real, plus the exact rational when there is one.
struct Quantity {
  std::string name;
  ExtendedReal value;
  std::optional<Rational> exact;

  static Quantity of(std::string name, const Rational& q) {
    return {std::move(name), ExtendedReal(q.get_d()), q};
  }
  static Quantity of(std::string name, ExtendedReal x) { return {std::move(name), x, std::nullopt}; }
};

struct ScenarioStep {
  std::string label;
  std::vector<Quantity> quantities;
  Circumstance circumstance;

  const Quantity* find(std::string_view name) const {
    auto it = std::find_if(quantities.begin(), quantities.end(), [&](const Quantity& q) { return q.name == name; });
    return it == quantities.end() ? nullptr : &*it;
  }
};

struct ScenarioReport {
  std::string title;
  std::vector<ScenarioStep> steps;
  Circumstance final_circumstance;

  const ScenarioStep* find(std::string_view label) const {
    auto it = std::find_if(steps.begin(), steps.end(), [&](const ScenarioStep& s) { return s.label == label; });
    return it == steps.end() ? nullptr : &*it;
  }
};

inline std::string quantity_text(const Quantity& q) {
  if (q.exact) return to_display_string(*q.exact);
  if (!q.value.is_finite()) return q.value.is_positive_infinity() ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", q.value.value());
  return buf;
}

/// Aligned text table: one row per (step, quantity).
inline std::string to_text(const ScenarioReport& report) {
  std::size_t label_width = 4;
  std::size_t name_width = 8;
  for (const auto& step : report.steps) {
    label_width = std::max(label_width, step.label.size());
    for (const auto& q : step.quantities) name_width = std::max(name_width, q.name.size());
  }
  std::ostringstream os;
  os << report.title << "\n";
  auto row = [&](const std::string& a, const std::string& b, const std::string& c) {
    os << a << std::string(label_width - a.size() + 2, ' ') << b << std::string(name_width - b.size() + 2, ' ')
       << c << "\n";
  };
  row("step", "quantity", "value");
  for (const auto& step : report.steps) {
    bool first = true;
    for (const auto& q : step.quantities) {
      row(first ? step.label : "", q.name, quantity_text(q));
      first = false;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Biased coin

enum class Toss { Heads, Tails };

struct CoinScenarioConfig {
  Rational bias{9, 10};
  Rational prior_heads_hypothesis{1, 2};
  double threshold_bits = 6.0;
  std::vector<Toss> toss_sequence;
};

inline void validate(const CoinScenarioConfig& config) {
  if (config.bias <= Rational(1, 2) || config.bias >= 1)
    fail(ErrorKind::ConfigInvalid, "bias must lie strictly between 1/2 and 1");
  if (config.prior_heads_hypothesis < 0 || config.prior_heads_hypothesis > 1)
    fail(ErrorKind::ConfigInvalid, "prior_heads_hypothesis must lie in [0, 1]");
  if (!(config.threshold_bits > 0)) fail(ErrorKind::ConfigInvalid, "threshold_bits must be positive");
  if (config.toss_sequence.size() + 2 > kMaxAtoms)
    fail(ErrorKind::ConfigInvalid, "at most " + std::to_string(kMaxAtoms - 2) + " tosses are supported");
}

/// Joint over H (bias favours heads) and toss_1..toss_n plus toss_next.
/// Given H each toss is heads with probability bias, given ~H with 1 - bias.
/// A prior of 0 or 1 puts the excluded hypothesis in tier 1.
inline Circumstance coin_circumstance(const Rational& bias, const Rational& prior, std::size_t tosses) {
  std::vector<std::string> atoms{"H"};
  for (std::size_t k = 1; k <= tosses; ++k) atoms.push_back("toss_" + std::to_string(k));
  atoms.push_back("toss_next");
  SpacePtr space = build_space(atoms);

  auto likelihood = [&](WorldIndex w, bool heads_hypothesis) {
    Rational p = 1;
    for (std::size_t k = 1; k < atoms.size(); ++k) {
      const bool heads = space->holds(w, k);
      const Rational p_heads = heads_hypothesis ? bias : Rational(1 - bias);
      p *= heads ? p_heads : Rational(1 - p_heads);
    }
    return p;
  };
  WeightMap given_h;
  WeightMap given_not_h;
  for (WorldIndex w = 0; w < space->world_count(); ++w) {
    if (space->holds(w, 0))
      given_h.emplace(w, likelihood(w, true));
    else
      given_not_h.emplace(w, likelihood(w, false));
  }
  if (prior == 0) return Circumstance::from_raw_tiers(space, {given_not_h, given_h});
  if (prior == 1) return Circumstance::from_raw_tiers(space, {given_h, given_not_h});
  WeightMap joint;
  for (auto& [w, p] : given_h) joint.emplace(w, p * prior);
  for (auto& [w, p] : given_not_h) joint.emplace(w, p * (1 - prior));
  return Circumstance::from_raw_tiers(space, {joint});
}

/// Observes the tosses one by one. Each is given (conditioned on) and adds
/// +/- log2(bias/(1-bias)) to the evidence ledger for H; when the ledger
/// reaches the threshold, H is judged true.
inline ScenarioReport run_coin(const CoinScenarioConfig& config) {
  validate(config);
  Circumstance c = coin_circumstance(config.bias, config.prior_heads_hypothesis, config.toss_sequence.size());
  const SpacePtr space = c.space();
  const Proposition h = Proposition::atom(space, "H");
  const Proposition next = Proposition::atom(space, "toss_next");
  const ExtendedReal per_head(log2_of(Rational(config.bias / (1 - config.bias))));
  EvidenceLedger ledger(h, config.threshold_bits);

  auto snapshot = [&](std::string label, std::vector<Quantity> extra = {}) {
    std::vector<Quantity> qs{Quantity::of("P(H)", prob(c, h)),
                             Quantity::of("log-odds(H)", log_ratio(prob(c, h), prob(c, ~h))),
                             Quantity::of("e_a(H)", ExtendedReal(ledger.accumulated())),
                             Quantity::of("P(toss_next)", prob(c, next))};
    qs.insert(qs.end(), extra.begin(), extra.end());
    return ScenarioStep{std::move(label), std::move(qs), c};
  };

  ScenarioReport report{"coin: bias " + to_display_string(config.bias) + ", prior P(H) " +
                            to_display_string(config.prior_heads_hypothesis),
                        {},
                        c};
  report.steps.push_back(snapshot("prior"));
  for (std::size_t k = 0; k < config.toss_sequence.size(); ++k) {
    const bool heads = config.toss_sequence[k] == Toss::Heads;
    const Proposition toss = Proposition::atom(space, "toss_" + std::to_string(k + 1));
    c = judge(c, heads ? toss : ~toss);
    const ExtendedReal contribution = heads ? per_head : -per_head;
    ledger = ledger_observe(ledger, contribution);
    report.steps.push_back(snapshot("toss " + std::to_string(k + 1) + (heads ? ": heads" : ": tails"),
                                    {Quantity::of("contribution", contribution)}));
    const LedgerOutcome outcome = ledger_maybe_judge(ledger, c);
    if (outcome.fired) {
      c = outcome.circumstance;
      ledger = outcome.ledger;
      report.steps.push_back(snapshot("judge H after toss " + std::to_string(k + 1)));
    }
  }
  report.final_circumstance = c;
  return report;
}

// ---------------------------------------------------------------------------
// Raven paradox

struct RavenScenarioConfig {
  int object_count = 2;
  Rational raven_prior{3, 10};
  Rational lawless_black_prior{1, 2};  // beta: chance an object is black when nothing forces it
  Rational law_prior{1, 2};
};

inline void validate(const RavenScenarioConfig& config) {
  if (config.object_count < 1) fail(ErrorKind::ConfigInvalid, "object_count must be at least 1");
  if (static_cast<std::size_t>(config.object_count) * 2 + 1 > kMaxAtoms)
    fail(ErrorKind::ConfigInvalid, "object_count too large to enumerate");
  auto strictly_inside = [](const Rational& p) { return sgn(p) > 0 && p < 1; };
  if (!strictly_inside(config.raven_prior)) fail(ErrorKind::ConfigInvalid, "raven_prior must lie in (0, 1)");
  if (!strictly_inside(config.lawless_black_prior))
    fail(ErrorKind::ConfigInvalid, "lawless_black_prior must lie in (0, 1)");
  if (config.law_prior < 0 || config.law_prior >= 1) fail(ErrorKind::ConfigInvalid, "law_prior must lie in [0, 1)");
}

/// Atoms raven_0, black_0, raven_1, black_1, ..., A. Objects are ravens
/// independently. Under A every raven is black; otherwise (and for
/// non-ravens under A) an object is black with probability beta. A prior of
/// 0 for A puts the A-worlds in tier 1.
inline Circumstance raven_circumstance(const RavenScenarioConfig& config) {
  std::vector<std::string> atoms;
  for (int x = 0; x < config.object_count; ++x) {
    atoms.push_back("raven_" + std::to_string(x));
    atoms.push_back("black_" + std::to_string(x));
  }
  atoms.push_back("A");
  SpacePtr space = build_space(atoms);
  const std::size_t law = atoms.size() - 1;
  const Rational& rho = config.raven_prior;
  const Rational& beta = config.lawless_black_prior;

  WeightMap lawful;
  WeightMap lawless;
  for (WorldIndex w = 0; w < space->world_count(); ++w) {
    const bool under_law = space->holds(w, law);
    Rational p = 1;
    for (int x = 0; x < config.object_count; ++x) {
      const bool raven = space->holds(w, 2 * x);
      const bool black = space->holds(w, 2 * x + 1);
      p *= raven ? rho : Rational(1 - rho);
      if (under_law && raven)
        p *= black ? 1 : 0;
      else
        p *= black ? beta : Rational(1 - beta);
    }
    (under_law ? lawful : lawless).emplace(w, p);
  }
  if (config.law_prior == 0) return Circumstance::from_raw_tiers(space, {lawless, lawful});
  WeightMap joint;
  for (auto& [w, p] : lawful) joint.emplace(w, p * config.law_prior);
  for (auto& [w, p] : lawless) joint.emplace(w, p * (1 - config.law_prior));
  return Circumstance::from_raw_tiers(space, {joint});
}

/// Evidence from a black raven for "all ravens are black" (A) versus for
/// "all non-black things are non-ravens" (N). N is judged as making
/// "not black" a sufficient condition of "not a raven" for object 0, and is
/// held as a probability-zero atom whose giving performs that judgment.
inline ScenarioReport run_raven(const RavenScenarioConfig& config) {
  validate(config);
  const Circumstance c = raven_circumstance(config);
  const SpacePtr space = c.space();
  const Proposition raven = Proposition::atom(space, "raven_0");
  const Proposition black = Proposition::atom(space, "black_0");
  const Proposition law = Proposition::atom(space, "A");

  ScenarioReport report{"raven: " + std::to_string(config.object_count) + " objects, beta " +
                            to_display_string(config.lawless_black_prior),
                        {},
                        c};
  report.steps.push_back({"prior",
                          {Quantity::of("P(A)", prob(c, law)), Quantity::of("P(R)", prob(c, raven)),
                           Quantity::of("P(B)", prob(c, black))},
                          c});

  // R given: the black-raven evidence for A.
  const Circumstance given_r = judge(c, raven);
  const Circumstance given_ra = judge(given_r, law);
  report.steps.push_back({"R given",
                          {Quantity::of("P(B)", prob(given_r, black)),
                           Quantity::of("P(B|A)", cond_prob(given_r, black, law)),
                           Quantity::of("P(B|~A)", cond_prob(given_r, black, ~law)),
                           Quantity::of("e(B->A|R)", evidence(given_r, black, law)),
                           Quantity::of("i(B|~A R)", cond_info(given_r, black, ~law & raven)),
                           Quantity::of("P(B) after A given", prob(given_ra, black))},
                          given_r});

  // N judged with R given.
  const Circumstance n_given_r = judge_sufficient_condition(given_r, ~black, ~raven);
  const Circumstance with_n_r = adjoin_counterfactual_atom(given_r, fresh_atom(*space, "N"), n_given_r);
  const Proposition n_r = Proposition::atom(with_n_r.space(), with_n_r.space()->atoms().back());
  const Proposition black_ext = lift(black, with_n_r.space());
  report.steps.push_back({"N judged, R given",
                          {Quantity::of("P(B) before", prob(given_r, black)),
                           Quantity::of("P(B) after", prob(n_given_r, black)),
                           Quantity::of("P(R) after", prob(n_given_r, raven)),
                           Quantity::of("i(~R|~B)", cond_info(given_r, ~raven, ~black)),
                           Quantity::of("i(N)", info(with_n_r, n_r)),
                           Quantity::of("e(B->N|R)", evidence(with_n_r, black_ext, n_r))},
                          with_n_r});

  // B given: N is counterfactual for object 0 and leaves P(R) alone.
  const Circumstance given_b = judge(c, black);
  const Circumstance n_given_b = counterfactual_sufficient(given_b, ~black, ~raven);
  const Circumstance with_n_b = adjoin_counterfactual_atom(given_b, fresh_atom(*space, "N"), n_given_b);
  const Proposition n_b = Proposition::atom(with_n_b.space(), with_n_b.space()->atoms().back());
  const Proposition raven_ext = lift(raven, with_n_b.space());
  report.steps.push_back({"N judged, B given",
                          {Quantity::of("P(R) before", prob(given_b, raven)),
                           Quantity::of("P(R) after", prob(n_given_b, raven)),
                           Quantity::of("P(B) after", prob(n_given_b, black)),
                           Quantity::of("i(N)", info(with_n_b, n_b)),
                           Quantity::of("e(R->N|B)", evidence(with_n_b, raven_ext, n_b))},
                          with_n_b});

  report.final_circumstance = given_r;
  return report;
}

}  // namespace judgment
