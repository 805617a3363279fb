#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "judgment/circumstance.hpp"
#include "judgment/info.hpp"

namespace judgment {

/// The ways of judging "if a then b".
///   Material      gives ~a | b outright; P(a) falls and P(b) rises.
///   Sufficient    makes a a new sufficient condition of b; P(a) is kept.
///   Necessary     makes b a new necessary condition of a; P(b) is kept.
///   Conservative  keeps both P(a) and P(b); needs P(b) >= P(a).
enum class ImplicationMode { Material, Sufficient, Necessary, Conservative };

inline constexpr std::array<ImplicationMode, 4> kAllModes = {
    ImplicationMode::Material, ImplicationMode::Sufficient, ImplicationMode::Necessary,
    ImplicationMode::Conservative};

constexpr std::string_view mode_name(ImplicationMode mode) {
  switch (mode) {
    case ImplicationMode::Material: return "material";
    case ImplicationMode::Sufficient: return "sufficient";
    case ImplicationMode::Necessary: return "necessary";
    case ImplicationMode::Conservative: return "conservative";
  }
  return "?";
}

inline std::optional<ImplicationMode> parse_mode(std::string_view text) {
  for (auto mode : kAllModes)
    if (mode_name(mode) == text) return mode;
  return std::nullopt;
}

/// Posterior masses of the four (a,b) cells. The a&~b cell is always emptied.
struct CellTransport {
  Rational ab;
  Rational a_not_b;
  Rational not_a_b;
  Rational not_a_not_b;

  friend bool operator==(const CellTransport&, const CellTransport&) = default;
};

namespace detail {

inline void check_implication_input(const Circumstance& c, const Proposition& a, const Proposition& b,
                                    ImplicationMode mode) {
  require_same_space(c.space(), a.space());
  require_same_space(c.space(), b.space());
  if (mode == ImplicationMode::Material) {
    if (sgn(prob(c, ~a | b)) == 0) fail(ErrorKind::DegenerateInput, "P(~a | b) is zero");
    return;
  }
  if (sgn(prob(c, a)) == 0)
    fail(ErrorKind::DegenerateInput, "P(a) is zero; use the counterfactual judgment instead");
  if (mode == ImplicationMode::Conservative && prob(c, b) < prob(c, a))
    fail(ErrorKind::PreconditionViolated, "conservative implication needs P(b) >= P(a)");
}

}  // namespace detail

inline CellTransport transport_for(const Circumstance& c, const Proposition& a, const Proposition& b,
                                   ImplicationMode mode) {
  detail::check_implication_input(c, a, b, mode);
  const Rational pa = prob(c, a);
  const Rational pb = prob(c, b);
  const Rational pab = prob(c, a & b);
  const Rational p_nab = prob(c, ~a & b);
  const Rational p_nanb = prob(c, ~a & ~b);
  switch (mode) {
    case ImplicationMode::Material: {
      const Rational keep = prob(c, ~a | b);
      return {pab / keep, 0, p_nab / keep, p_nanb / keep};
    }
    case ImplicationMode::Sufficient:
      return {pa, 0, p_nab, p_nanb};
    case ImplicationMode::Necessary:
      // The displaced a&~b mass lands on ~a&~b, not ~a&b.
      return {pab, 0, p_nab, 1 - pb};
    case ImplicationMode::Conservative:
      return {pa, 0, pb - pa, 1 - pb};
  }
  fail(ErrorKind::DegenerateInput, "unknown implication mode");
}

/// Redistributes tier-0 mass to the mode's cell masses. Inside each cell the
/// world-level shape is kept (taken from the first tier that reaches the
/// cell). Worlds that lose all mass are demoted: the remaining structure is
/// ordered like a judgment of ~a | b, so P(b|a) = 1 afterwards.
inline Circumstance apply_implication(const Circumstance& c, const Proposition& a, const Proposition& b,
                                      ImplicationMode mode) {
  const CellTransport m = transport_for(c, a, b, mode);
  const std::array<std::pair<Proposition, Rational>, 3> receiving = {
      std::pair{a & b, m.ab}, std::pair{~a & b, m.not_a_b}, std::pair{~a & ~b, m.not_a_not_b}};

  WeightMap top;
  for (const auto& [cell, mass] : receiving) {
    if (sgn(mass) == 0) continue;
    auto k = c.first_tier_with(cell);
    if (!k) fail(ErrorKind::DegenerateInput, "a cell that must receive mass has no conceivable world");
    const Tier& source = c.tiers()[*k];
    const Rational cell_mass = source.mass(cell);
    for (const auto& [world, w] : source.weights())
      if (cell.contains(world)) top[world] += mass * w / cell_mass;
  }

  const Proposition violating = a & ~b;
  std::vector<WeightMap> raw{top};
  std::vector<WeightMap> demoted;
  for (const auto& tier : c.tiers()) {
    WeightMap kept;
    WeightMap evacuated;
    for (const auto& [world, w] : tier.weights()) {
      if (top.contains(world)) continue;
      (violating.contains(world) ? evacuated : kept).emplace(world, w);
    }
    raw.push_back(std::move(kept));
    demoted.push_back(std::move(evacuated));
  }
  raw.insert(raw.end(), demoted.begin(), demoted.end());
  return Circumstance::from_raw_tiers(c.space(), raw);
}

/// Least information a judgment of this mode must convey, in bits.
inline ExtendedReal min_info_T(const Circumstance& c, const Proposition& a, const Proposition& b,
                               ImplicationMode mode) {
  auto need_positive = [&](const Proposition& p, const char* what) {
    if (sgn(prob(c, p)) == 0) fail(ErrorKind::DegenerateInput, std::string(what) + " has probability zero");
  };
  switch (mode) {
    case ImplicationMode::Material:
      need_positive(~a | b, "~a | b");
      return info(c, ~a | b);
    case ImplicationMode::Sufficient:
      need_positive(a, "a");
      return cond_info(c, b, a);
    case ImplicationMode::Necessary:
      need_positive(~b, "~b");
      return cond_info(c, ~a, ~b);
    case ImplicationMode::Conservative:
      need_positive(a, "a");
      need_positive(~b, "~b");
      return std::max(cond_info(c, b, a), cond_info(c, ~a, ~b));
  }
  fail(ErrorKind::DegenerateInput, "unknown implication mode");
}

namespace detail {

/// The largest P(T) the mode allows, i.e. 2^-min_info_T as an exact value.
inline Rational max_prob_T(const Circumstance& c, const Proposition& a, const Proposition& b,
                           ImplicationMode mode) {
  (void)min_info_T(c, a, b, mode);  // precondition checks
  switch (mode) {
    case ImplicationMode::Material: return prob(c, ~a | b);
    case ImplicationMode::Sufficient: return cond_prob(c, b, a);
    case ImplicationMode::Necessary: return cond_prob(c, ~a, ~b);
    case ImplicationMode::Conservative: return std::min(cond_prob(c, b, a), cond_prob(c, ~a, ~b));
  }
  fail(ErrorKind::DegenerateInput, "unknown implication mode");
}

}  // namespace detail

/// An extended circumstance holding an explicit proposition t whose giving
/// performs the implication judgment.
struct ConstructedT {
  Circumstance circumstance;
  Proposition a, b;
  Proposition t;
  Rational prob_t;
};

/// Realizes T with exact probability prob_t. Given T, tier 0 is the
/// implication posterior; given ~T, it is what remains; summing out T gives c.
inline ConstructedT construct_T_with_prob(const Circumstance& c, const Proposition& a, const Proposition& b,
                                          ImplicationMode mode, const Rational& prob_t,
                                          const std::string& name = "T") {
  detail::check_implication_input(c, a, b, mode);
  if (sgn(prob(c, a)) == 0)
    fail(ErrorKind::DegenerateInput, "P(a) is zero; use the counterfactual judgment instead");
  if (sgn(prob_t) <= 0 || prob_t > 1)
    fail(ErrorKind::DegenerateInput, "P(T) must lie in (0, 1]; i(T) must be finite");
  const Rational bound = detail::max_prob_T(c, a, b, mode);
  if (prob_t > bound)
    fail(ErrorKind::InsufficientInformation,
         "i(T) = " + surprisal(prob_t).to_bits_string() + " is below the bound " +
             surprisal(bound).to_bits_string());

  const Tier& original = c.tiers().front();
  const Tier posterior = apply_implication(c, a, b, mode).tiers().front();
  for (const auto& [world, w] : posterior.weights()) {
    auto it = original.weights().find(world);
    const Rational before = it == original.weights().end() ? Rational(0) : it->second;
    if (before < prob_t * w)
      fail(ErrorKind::Infeasible, "world " + std::to_string(world) + " would need negative mass given ~T");
  }

  const Proposition violating = a & ~b;
  const std::string atom = fresh_atom(*c.space(), name);
  Circumstance extended = extend(c, atom, [&](WorldIndex world) -> Rational {
    auto it = original.weights().find(world);
    if (it == original.weights().end()) return violating.contains(world) ? 0 : 1;
    auto jt = posterior.weights().find(world);
    if (jt == posterior.weights().end()) return 0;
    return prob_t * jt->second / it->second;
  });
  const SpacePtr& space = extended.space();
  return {extended, lift(a, space), lift(b, space), Proposition::atom(space, atom), prob_t};
}

/// As above, with P(T) = 2^-info_t. Values within 1e-9 of the bound are
/// taken as exactly the bound; others use the exact binary value of 2^-info_t.
inline ConstructedT construct_T(const Circumstance& c, const Proposition& a, const Proposition& b,
                                ImplicationMode mode, ExtendedReal info_t, const std::string& name = "T") {
  if (!info_t.is_finite()) fail(ErrorKind::DegenerateInput, "i(T) must be finite");
  detail::check_implication_input(c, a, b, mode);
  if (sgn(prob(c, a)) == 0)
    fail(ErrorKind::DegenerateInput, "P(a) is zero; use the counterfactual judgment instead");
  const ExtendedReal bound = min_info_T(c, a, b, mode);
  if (bound.is_finite() && std::abs(info_t.value() - bound.value()) <= 1e-9)
    return construct_T_with_prob(c, a, b, mode, detail::max_prob_T(c, a, b, mode), name);
  if (info_t < bound)
    fail(ErrorKind::InsufficientInformation,
         "i(T) = " + info_t.to_bits_string() + " is below the bound " + bound.to_bits_string());
  return construct_T_with_prob(c, a, b, mode, rational_from_double(std::exp2(-info_t.value())), name);
}

/// Judging "if a then b" when P(a) = 0: gives ~a | b, which has probability
/// one, so no unconditional probability moves but P(b|a) becomes 1.
inline Circumstance counterfactual_sufficient(const Circumstance& c, const Proposition& a,
                                              const Proposition& b) {
  require_same_space(c.space(), b.space());
  require_conceivable(c, a);
  if (sgn(prob(c, a)) != 0) fail(ErrorKind::NotCounterfactual, "P(a) is not zero");
  return judge(c, ~a | b);
}

/// A probability-one T whose giving is counterfactual_sufficient(c, a, b):
/// T fails exactly on the a&~b worlds. Then i(T|a) = i(b|a).
inline ConstructedT construct_counterfactual_T(const Circumstance& c, const Proposition& a,
                                               const Proposition& b, const std::string& name = "T") {
  require_same_space(c.space(), b.space());
  require_conceivable(c, a);
  if (sgn(prob(c, a)) != 0) fail(ErrorKind::NotCounterfactual, "P(a) is not zero");
  const Proposition violating = a & ~b;
  const std::string atom = fresh_atom(*c.space(), name);
  Circumstance extended =
      extend(c, atom, [&](WorldIndex w) { return violating.contains(w) ? Rational(0) : Rational(1); });
  const SpacePtr& space = extended.space();
  return {extended, lift(a, space), lift(b, space), Proposition::atom(space, atom), Rational(1)};
}

/// "If a then b" as a sufficient-condition judgment, whichever form applies:
/// the counterfactual one when P(a) = 0, the tier-0 transport otherwise.
inline Circumstance judge_sufficient_condition(const Circumstance& c, const Proposition& a,
                                               const Proposition& b) {
  if (sgn(prob(c, a)) == 0) return counterfactual_sufficient(c, a, b);
  return apply_implication(c, a, b, ImplicationMode::Sufficient);
}

}  // namespace judgment
