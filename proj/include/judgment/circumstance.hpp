#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "judgment/error.hpp"
#include "judgment/prop_space.hpp"
#include "judgment/rational.hpp"

namespace judgment {

using WeightMap = std::map<WorldIndex, Rational>;

/// One level of the lexicographic hierarchy: a distribution over the worlds
/// it supports. Weights are strictly positive and sum to exactly 1.
class Tier {
 public:
  /// Validates positivity and normalization.
  explicit Tier(WeightMap weights) : weights_(std::move(weights)) {
    if (weights_.empty()) fail(ErrorKind::InvalidTier, "a tier must support at least one world");
    Rational total = 0;
    for (auto& [world, w] : weights_) {
      w.canonicalize();
      if (sgn(w) <= 0)
        fail(ErrorKind::InvalidTier, "tier weight for world " + std::to_string(world) + " is not positive");
      total += w;
    }
    if (total != 1) fail(ErrorKind::InvalidTier, "tier weights sum to " + total.get_str() + ", not 1");
  }

  /// Scales positive weights to sum to 1. Zero weights are dropped; an
  /// all-zero map yields nullopt.
  static std::optional<Tier> normalized(const WeightMap& raw) {
    WeightMap kept;
    Rational total = 0;
    for (auto [world, w] : raw) {
      w.canonicalize();
      if (sgn(w) < 0) fail(ErrorKind::InvalidTier, "negative weight for world " + std::to_string(world));
      if (sgn(w) > 0) {
        kept.emplace(world, w);
        total += w;
      }
    }
    if (kept.empty()) return std::nullopt;
    for (auto& [world, w] : kept) w /= total;
    return Tier(std::move(kept));
  }

  const WeightMap& weights() const { return weights_; }

  bool supports(WorldIndex w) const { return weights_.contains(w); }

  Rational mass(const Proposition& p) const {
    Rational total = 0;
    for (const auto& [world, w] : weights_)
      if (p.contains(world)) total += w;
    return total;
  }

  /// The tier conditioned on p, or nullopt when p has no mass here.
  std::optional<Tier> restricted_to(const Proposition& p) const {
    WeightMap kept;
    for (const auto& [world, w] : weights_)
      if (p.contains(world)) kept.emplace(world, w);
    return normalized(kept);
  }

  friend bool operator==(const Tier&, const Tier&) = default;

 private:
  WeightMap weights_;
};

/// A state of belief: tier 0 gives every unconditional probability, deeper
/// tiers give the conditionals on propositions that tier 0 rules out. Worlds
/// in no tier are inconceivable.
class Circumstance {
 public:
  Circumstance(SpacePtr space, std::vector<Tier> tiers) : space_(std::move(space)), tiers_(std::move(tiers)) {
    if (tiers_.empty()) fail(ErrorKind::InvalidTier, "a circumstance needs at least one tier");
    std::vector<bool> seen(space_->world_count(), false);
    for (const auto& tier : tiers_) {
      for (const auto& [world, w] : tier.weights()) {
        if (world >= space_->world_count())
          fail(ErrorKind::UnknownWorld, "world " + std::to_string(world) + " is outside the space");
        if (seen[world])
          fail(ErrorKind::InvalidTier, "world " + std::to_string(world) + " appears in two tiers");
        seen[world] = true;
      }
    }
  }

  static Circumstance uniform(SpacePtr space) {
    WeightMap weights;
    const Rational each(1, space->world_count());
    for (WorldIndex w = 0; w < space->world_count(); ++w) weights.emplace(w, each);
    return Circumstance(std::move(space), {Tier(std::move(weights))});
  }

  /// Builds tiers from unnormalized weights; zero entries are dropped and
  /// tiers left empty are skipped.
  static Circumstance from_raw_tiers(SpacePtr space, const std::vector<WeightMap>& raw) {
    std::vector<Tier> tiers;
    for (const auto& weights : raw)
      if (auto tier = Tier::normalized(weights)) tiers.push_back(std::move(*tier));
    return Circumstance(std::move(space), std::move(tiers));
  }

  const SpacePtr& space() const { return space_; }
  const std::vector<Tier>& tiers() const { return tiers_; }

  Proposition conceivable() const {
    return Proposition::where(space_, [&](WorldIndex w) {
      for (const auto& tier : tiers_)
        if (tier.supports(w)) return true;
      return false;
    });
  }

  /// Index of the first tier giving p positive mass, if any.
  std::optional<std::size_t> first_tier_with(const Proposition& p) const {
    for (std::size_t k = 0; k < tiers_.size(); ++k)
      if (sgn(tiers_[k].mass(p)) > 0) return k;
    return std::nullopt;
  }

  friend bool operator==(const Circumstance& a, const Circumstance& b) {
    return same_space(a.space_, b.space_) && a.tiers_ == b.tiers_;
  }

 private:
  SpacePtr space_;
  std::vector<Tier> tiers_;
};

inline Rational prob(const Circumstance& c, const Proposition& p) {
  require_same_space(c.space(), p.space());
  return c.tiers().front().mass(p);
}

inline void require_conceivable(const Circumstance& c, const Proposition& a, std::size_t* tier_out = nullptr) {
  require_same_space(c.space(), a.space());
  auto k = c.first_tier_with(a);
  if (!k) fail(ErrorKind::Inconceivable, "conditioning proposition has no conceivable world");
  if (tier_out) *tier_out = *k;
}

/// P(b | a): computed in the first tier that gives a positive mass.
inline Rational cond_prob(const Circumstance& c, const Proposition& b, const Proposition& a) {
  require_same_space(c.space(), b.space());
  std::size_t k = 0;
  require_conceivable(c, a, &k);
  const Tier& tier = c.tiers()[k];
  return tier.mass(a & b) / tier.mass(a);
}

/// Gives a. Every tier is conditioned on a (kept in order), then the parts of
/// every tier lying in ~a follow in order, so excluded worlds are demoted
/// rather than forgotten.
inline Circumstance judge(const Circumstance& c, const Proposition& a) {
  require_conceivable(c, a);
  const Proposition not_a = ~a;
  std::vector<Tier> tiers;
  for (const auto& tier : c.tiers())
    if (auto part = tier.restricted_to(a)) tiers.push_back(std::move(*part));
  for (const auto& tier : c.tiers())
    if (auto part = tier.restricted_to(not_a)) tiers.push_back(std::move(*part));
  return Circumstance(c.space(), std::move(tiers));
}

/// Refines the space with one more atom. World w carries split(w) of its
/// weight into (w, atom) and the remainder into (w, ~atom), in every tier.
inline Circumstance extend(const Circumstance& c, const std::string& atom,
                           const std::function<Rational(WorldIndex)>& split) {
  std::vector<std::string> atoms = c.space()->atoms();
  atoms.push_back(atom);
  SpacePtr space = build_space(std::move(atoms));
  const WorldIndex high = c.space()->world_count();
  std::vector<Tier> tiers;
  for (const auto& tier : c.tiers()) {
    WeightMap weights;
    for (const auto& [world, w] : tier.weights()) {
      Rational s = split(world);
      s.canonicalize();
      if (s < 0 || s > 1)
        fail(ErrorKind::WeightOutOfRange,
             "split " + s.get_str() + " for world " + std::to_string(world) + " is outside [0,1]");
      if (sgn(s) > 0) weights.emplace(world | high, w * s);
      if (s < 1) weights.emplace(world, w * (1 - s));
    }
    tiers.emplace_back(std::move(weights));
  }
  return Circumstance(std::move(space), std::move(tiers));
}

inline Circumstance extend(const Circumstance& c, const std::string& atom, const Rational& split) {
  return extend(c, atom, [&](WorldIndex) { return split; });
}

/// Split given per world. Every conceivable world needs an entry; keys must
/// be worlds of the space.
inline Circumstance extend(const Circumstance& c, const std::string& atom, const WeightMap& split) {
  for (const auto& [world, s] : split)
    if (world >= c.space()->world_count())
      fail(ErrorKind::UnknownWorld, "split names world " + std::to_string(world) + " outside the space");
  return extend(c, atom, [&](WorldIndex w) -> Rational {
    auto it = split.find(w);
    if (it == split.end()) fail(ErrorKind::UnknownWorld, "no split given for world " + std::to_string(w));
    return it->second;
  });
}

/// Sums out the trailing atoms that `smaller` does not have, tier by tier.
inline Circumstance marginalize(const Circumstance& c, const SpacePtr& smaller) {
  if (!is_prefix_space(*smaller, *c.space()))
    fail(ErrorKind::SpaceMismatch, "cannot marginalize onto a space that is not a prefix");
  const WorldIndex mask = smaller->world_count() - 1;
  std::vector<WeightMap> raw;
  for (const auto& tier : c.tiers()) {
    WeightMap weights;
    for (const auto& [world, w] : tier.weights()) weights[world & mask] += w;
    raw.push_back(std::move(weights));
  }
  // Tiers of an extension stay disjoint after summing out only when each
  // base world lived in a single tier, which extend guarantees.
  return Circumstance::from_raw_tiers(smaller, raw);
}

/// Adds an atom that is certainly false now, and whose giving would produce
/// `given`: the current tiers sit on ~atom, then `given`'s tiers on atom.
inline Circumstance adjoin_counterfactual_atom(const Circumstance& c, const std::string& atom,
                                               const Circumstance& given) {
  require_same_space(c.space(), given.space());
  std::vector<std::string> atoms = c.space()->atoms();
  atoms.push_back(atom);
  SpacePtr space = build_space(std::move(atoms));
  const WorldIndex high = c.space()->world_count();
  std::vector<Tier> tiers = c.tiers();
  for (const auto& tier : given.tiers()) {
    WeightMap weights;
    for (const auto& [world, w] : tier.weights()) weights.emplace(world | high, w);
    tiers.emplace_back(std::move(weights));
  }
  return Circumstance(std::move(space), std::move(tiers));
}

}  // namespace judgment
