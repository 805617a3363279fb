#pragma once

// JSON forms. A circumstance is
//   {"atoms": ["a", "b"], "tiers": [{"weights": {"<world>": "num/den", ...}}, ...]}
// where <world> is the decimal world index (bit i = atom i) and every weight
// is a reduced fraction.

#include <json.hpp>

#include <string>
#include <vector>

#include "judgment/circumstance.hpp"
#include "judgment/scenarios.hpp"

namespace judgment {

using Json = nlohmann::json;

inline Rational rational_from_json(const Json& j, const std::string& where) {
  if (!j.is_string()) fail(ErrorKind::CorruptRationals, where + ": expected a \"num/den\" string");
  auto q = parse_rational(j.get<std::string>());
  if (!q) fail(ErrorKind::CorruptRationals, where + ": '" + j.get<std::string>() + "' is not a rational");
  return *q;
}

inline Json to_json(const Tier& tier) {
  Json weights = Json::object();
  for (const auto& [world, w] : tier.weights()) weights[std::to_string(world)] = to_fraction_string(w);
  return Json{{"weights", weights}};
}

inline Json to_json(const Circumstance& c) {
  Json tiers = Json::array();
  for (const auto& tier : c.tiers()) tiers.push_back(to_json(tier));
  return Json{{"atoms", c.space()->atoms()}, {"tiers", tiers}};
}

inline std::vector<Tier> tiers_from_json(const Json& j, const SpacePtr& space) {
  if (!j.is_array()) fail(ErrorKind::CorruptSession, "\"tiers\" must be an array");
  std::vector<Tier> tiers;
  for (const auto& t : j) {
    if (!t.is_object() || !t.contains("weights") || !t["weights"].is_object())
      fail(ErrorKind::CorruptSession, "each tier needs a \"weights\" object");
    WeightMap weights;
    for (const auto& [key, value] : t["weights"].items()) {
      WorldIndex world = 0;
      try {
        std::size_t used = 0;
        const unsigned long parsed = std::stoul(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
        world = static_cast<WorldIndex>(parsed);
      } catch (const std::exception&) {
        fail(ErrorKind::CorruptSession, "world key '" + key + "' is not a decimal index");
      }
      if (world >= space->world_count())
        fail(ErrorKind::UnknownWorld, "world " + key + " is outside the space");
      weights.emplace(world, rational_from_json(value, "weight of world " + key));
    }
    tiers.emplace_back(std::move(weights));
  }
  return tiers;
}

inline Circumstance circumstance_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("atoms") || !j.contains("tiers"))
    fail(ErrorKind::CorruptSession, "a circumstance needs \"atoms\" and \"tiers\"");
  if (!j["atoms"].is_array()) fail(ErrorKind::CorruptSession, "\"atoms\" must be an array");
  std::vector<std::string> atoms;
  for (const auto& a : j["atoms"]) {
    if (!a.is_string()) fail(ErrorKind::CorruptSession, "atom names must be strings");
    atoms.push_back(a.get<std::string>());
  }
  SpacePtr space = build_space(std::move(atoms));
  return Circumstance(space, tiers_from_json(j["tiers"], space));
}

// ---------------------------------------------------------------------------
// Scenario configs: fields as in the config structs; rationals may be given
// as "num/den" strings or as integers.

namespace detail {

inline Rational config_rational(const Json& j, const char* key, const Rational& fallback) {
  if (!j.contains(key)) return fallback;
  const Json& v = j[key];
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) {
    if (auto q = parse_rational(v.get<std::string>())) return *q;
  }
  fail(ErrorKind::ConfigInvalid, std::string(key) + " must be a rational such as \"9/10\"");
}

}  // namespace detail

inline CoinScenarioConfig coin_config_from_json(const Json& j) {
  if (!j.is_object()) fail(ErrorKind::ConfigInvalid, "coin config must be a JSON object");
  CoinScenarioConfig config;
  config.bias = detail::config_rational(j, "bias", config.bias);
  config.prior_heads_hypothesis = detail::config_rational(j, "prior_heads_hypothesis", config.prior_heads_hypothesis);
  if (j.contains("threshold_bits")) {
    if (!j["threshold_bits"].is_number()) fail(ErrorKind::ConfigInvalid, "threshold_bits must be a number");
    config.threshold_bits = j["threshold_bits"].get<double>();
  }
  if (j.contains("toss_sequence")) {
    const Json& seq = j["toss_sequence"];
    auto push = [&](const std::string& t) {
      if (t == "H" || t == "heads" || t == "Heads")
        config.toss_sequence.push_back(Toss::Heads);
      else if (t == "T" || t == "tails" || t == "Tails")
        config.toss_sequence.push_back(Toss::Tails);
      else
        fail(ErrorKind::ConfigInvalid, "unknown toss '" + t + "'");
    };
    if (seq.is_string()) {
      for (char ch : seq.get<std::string>()) push(std::string(1, ch));
    } else if (seq.is_array()) {
      for (const auto& t : seq) {
        if (!t.is_string()) fail(ErrorKind::ConfigInvalid, "tosses must be strings");
        push(t.get<std::string>());
      }
    } else {
      fail(ErrorKind::ConfigInvalid, "toss_sequence must be an array or a string like \"HHT\"");
    }
  }
  validate(config);
  return config;
}

inline RavenScenarioConfig raven_config_from_json(const Json& j) {
  if (!j.is_object()) fail(ErrorKind::ConfigInvalid, "raven config must be a JSON object");
  RavenScenarioConfig config;
  if (j.contains("object_count")) {
    if (!j["object_count"].is_number_integer()) fail(ErrorKind::ConfigInvalid, "object_count must be an integer");
    config.object_count = j["object_count"].get<int>();
  }
  config.raven_prior = detail::config_rational(j, "raven_prior", config.raven_prior);
  config.lawless_black_prior = detail::config_rational(j, "lawless_black_prior", config.lawless_black_prior);
  config.law_prior = detail::config_rational(j, "law_prior", config.law_prior);
  validate(config);
  return config;
}

inline Json to_json(const ScenarioReport& report) {
  Json steps = Json::array();
  for (const auto& step : report.steps) {
    Json quantities = Json::array();
    for (const auto& q : step.quantities) {
      Json item{{"name", q.name}};
      if (q.value.is_finite())
        item["value"] = q.value.value();
      else
        item["value"] = q.value.is_positive_infinity() ? "inf" : "-inf";
      if (q.exact) item["exact"] = to_fraction_string(*q.exact);
      quantities.push_back(std::move(item));
    }
    steps.push_back(Json{{"label", step.label}, {"quantities", std::move(quantities)}});
  }
  return Json{{"title", report.title}, {"steps", std::move(steps)},
              {"final_circumstance", to_json(report.final_circumstance)}};
}

}  // namespace judgment
