#pragma once

#include <array>
#include <string>
#include <vector>

#include "judgment/circumstance.hpp"
#include "judgment/extended_real.hpp"

namespace judgment {

/// -log2 of an exact probability; +inf at zero.
inline ExtendedReal surprisal(const Rational& p) {
  if (sgn(p) == 0) return ExtendedReal::positive_infinity();
  return ExtendedReal(-log2_of(p));
}

/// Information needed to believe a: -log2 P(a).
inline ExtendedReal info(const Circumstance& c, const Proposition& a) { return surprisal(prob(c, a)); }

/// i(a|b) = -log2 P(a|b); b must be conceivable.
inline ExtendedReal cond_info(const Circumstance& c, const Proposition& a, const Proposition& b) {
  return surprisal(cond_prob(c, a, b));
}

/// i(a;b) = i(a) + i(b) - i(ab) = log2 P(ab)/(P(a)P(b)). Negative when a and
/// b are anticorrelated, -inf when they exclude each other.
inline ExtendedReal common_info(const Circumstance& c, const Proposition& a, const Proposition& b) {
  const Rational pa = prob(c, a);
  const Rational pb = prob(c, b);
  if (sgn(pa) == 0 || sgn(pb) == 0)
    fail(ErrorKind::IndeterminateForm, "common information with a probability-zero argument is inf - inf");
  const Rational pab = prob(c, a & b);
  if (sgn(pab) == 0) return ExtendedReal::negative_infinity();
  return ExtendedReal(log2_of(Rational(pab / (pa * pb))));
}

/// The four common-information values of a pair and their negations.
struct SignPattern {
  ExtendedReal a_b;          // i(a;b)
  ExtendedReal not_a_b;      // i(~a;b)
  ExtendedReal a_not_b;      // i(a;~b)
  ExtendedReal not_a_not_b;  // i(~a;~b)

  std::array<ExtendedReal, 4> values() const { return {a_b, not_a_b, a_not_b, not_a_not_b}; }

  int negatives() const {
    int n = 0;
    for (auto v : values()) n += v < ExtendedReal(0.0) ? 1 : 0;
    return n;
  }
  int positives() const {
    int n = 0;
    for (auto v : values()) n += v > ExtendedReal(0.0) ? 1 : 0;
    return n;
  }
};

inline bool interior(const Rational& p) { return sgn(p) > 0 && p < 1; }

inline SignPattern sign_pattern(const Circumstance& c, const Proposition& a, const Proposition& b) {
  const Rational pa = prob(c, a);
  const Rational pb = prob(c, b);
  if (!interior(pa) || !interior(pb))
    fail(ErrorKind::DegenerateInput, "sign pattern needs 0 < P(a) < 1 and 0 < P(b) < 1");
  if (prob(c, a & b) == pa * pb) fail(ErrorKind::DegenerateInput, "a and b are independent");
  return {common_info(c, a, b), common_info(c, ~a, b), common_info(c, a, ~b), common_info(c, ~a, ~b)};
}

/// `base` if the space lacks it, otherwise base_1, base_2, ...
inline std::string fresh_atom(const WorldSpace& space, const std::string& base) {
  if (!space.index_of(base)) return base;
  for (int k = 1;; ++k) {
    std::string name = base + "_" + std::to_string(k);
    if (!space.index_of(name)) return name;
  }
}

namespace detail {

/// Adds names.size() atoms. Each world falls in one of several cells; within
/// cell k the new atoms take joint value j (bit i = atom i) with probability
/// combos[k][j]. Every tier uses the same conditional law, so conditionals
/// given the cell are untouched.
inline Circumstance extend_by_cells(const Circumstance& c, const std::vector<std::string>& names,
                                    const std::function<std::size_t(WorldIndex)>& cell_of,
                                    const std::vector<std::vector<Rational>>& combos) {
  const WorldIndex base_mask = c.space()->world_count() - 1;
  const std::size_t base_atoms = c.space()->atom_count();
  Circumstance out = c;
  for (std::size_t i = 0; i < names.size(); ++i) {
    out = extend(out, names[i], [&](WorldIndex w) -> Rational {
      const auto& law = combos[cell_of(w & base_mask)];
      const WorldIndex prefix = w >> base_atoms;  // values of atoms 0..i-1
      const WorldIndex prefix_mask = (WorldIndex{1} << i) - 1;
      Rational matching = 0;
      Rational with_atom = 0;
      for (std::size_t j = 0; j < law.size(); ++j) {
        if ((j & prefix_mask) != prefix) continue;
        matching += law[j];
        if ((j >> i) & 1U) with_atom += law[j];
      }
      return with_atom / matching;
    });
  }
  return out;
}

// Cells of an (a,b) pair.
enum Cell : std::size_t { kAB = 0, kANotB = 1, kNotAB = 2, kNotANotB = 3 };

inline std::function<std::size_t(WorldIndex)> cell_classifier(const Proposition& a, const Proposition& b) {
  return [a, b](WorldIndex w) -> std::size_t {
    const bool in_a = a.contains(w);
    const bool in_b = b.contains(w);
    if (in_a) return in_b ? kAB : kANotB;
    return in_b ? kNotAB : kNotANotB;
  };
}

}  // namespace detail

/// Result of splitting positively correlated a, b into independent C, D, E
/// with a <=> CD and b <=> DE. All propositions live in the extended space.
struct CommonDecomposition {
  Circumstance circumstance;
  Proposition a, b;
  Proposition c, d, e;
};

inline CommonDecomposition decompose_common(const Circumstance& c, const Proposition& a, const Proposition& b,
                                            const std::array<std::string, 3>& names = {"C", "D", "E"}) {
  const Rational pa = prob(c, a);
  const Rational pb = prob(c, b);
  if (!interior(pa) || !interior(pb))
    fail(ErrorKind::DegenerateInput, "decomposition needs 0 < P(a) < 1 and 0 < P(b) < 1");
  const Rational pab = prob(c, a & b);
  if (pab <= pa * pb) fail(ErrorKind::NotPositivelyCorrelated, "i(a;b) is not positive");

  const Rational p_c = pab / pb;  // P(a|b)
  const Rational p_d = pa * pb / pab;
  const Rational p_e = pab / pa;  // P(b|a)

  // Joint value index: bit 0 = C, bit 1 = D, bit 2 = E.
  auto product = [&](std::size_t j) {
    Rational m = 1;
    m *= (j & 1U) ? p_c : Rational(1 - p_c);
    m *= (j & 2U) ? p_d : Rational(1 - p_d);
    m *= (j & 4U) ? p_e : Rational(1 - p_e);
    return m;
  };
  auto point = [](std::size_t j) {
    std::vector<Rational> law(8, Rational(0));
    law[j] = 1;
    return law;
  };
  std::vector<std::vector<Rational>> combos(4);
  combos[detail::kAB] = point(0b111);
  combos[detail::kANotB] = point(0b011);
  combos[detail::kNotAB] = point(0b110);
  // Neither CD nor DE: 000, 001, 010, 100, 101.
  std::vector<Rational> rest(8, Rational(0));
  Rational rest_total = 0;
  for (std::size_t j : {0b000u, 0b001u, 0b010u, 0b100u, 0b101u}) {
    rest[j] = product(j);
    rest_total += rest[j];
  }
  if (sgn(rest_total) == 0)  // ~a~b has no mass; any law over the cell will do
    for (std::size_t j : {0b000u, 0b001u, 0b010u, 0b100u, 0b101u}) rest[j] = 1;
  combos[detail::kNotANotB] = rest;

  std::vector<std::string> atoms;
  SpacePtr probe = c.space();
  for (const auto& base : names) {
    std::string name = fresh_atom(*probe, base);
    std::vector<std::string> grown = probe->atoms();
    grown.push_back(name);
    probe = build_space(std::move(grown));
    atoms.push_back(std::move(name));
  }

  Circumstance extended = detail::extend_by_cells(c, atoms, detail::cell_classifier(a, b), combos);
  const SpacePtr& space = extended.space();
  return {extended,
          lift(a, space),
          lift(b, space),
          Proposition::atom(space, atoms[0]),
          Proposition::atom(space, atoms[1]),
          Proposition::atom(space, atoms[2])};
}

/// A proposition implied by ab but independent of a and of b separately.
struct IndependentConsequence {
  Circumstance circumstance;
  Proposition a, b;
  Proposition consequence;
};

inline IndependentConsequence independent_consequence(const Circumstance& c, const Proposition& a,
                                                      const Proposition& b, const std::string& name = "C") {
  const Rational pa = prob(c, a);
  const Rational pb = prob(c, b);
  if (sgn(pa) == 0 || sgn(pb) == 0)
    fail(ErrorKind::IndeterminateForm, "common information with a probability-zero argument is inf - inf");
  const Rational pab = prob(c, a & b);
  if (pab >= pa * pb) fail(ErrorKind::NotNegativelyCorrelated, "i(a;b) is not negative");
  if (pa + pb > 1) fail(ErrorKind::ProbabilitySumExceedsOne, "P(a) + P(b) exceeds 1");

  const Rational p_c = pab / (pa * pb);
  const std::array<Rational, 4> cell_total = {pab, pa - pab, pb - pab, 1 - pa - pb + pab};
  const std::array<Rational, 4> cell_with_c = {
      pab, pa * p_c - pab, pb * p_c - pab, pab * (1 - pa) * (1 - pb) / (pa * pb)};
  static constexpr std::array<const char*, 4> kCellNames = {"a&b", "a&~b", "~a&b", "~a&~b"};

  std::array<Rational, 4> ratio;
  for (std::size_t k = 0; k < 4; ++k) {
    if (sgn(cell_with_c[k]) < 0 || cell_with_c[k] > cell_total[k])
      fail(ErrorKind::Infeasible, std::string("cell ") + kCellNames[k] + " would need mass " +
                                      cell_with_c[k].get_str() + " of its " + cell_total[k].get_str());
    ratio[k] = sgn(cell_total[k]) > 0 ? Rational(cell_with_c[k] / cell_total[k]) : p_c;
  }
  ratio[detail::kAB] = 1;  // ab entails the consequence in every tier

  const std::string atom = fresh_atom(*c.space(), name);
  auto cell_of = detail::cell_classifier(a, b);
  Circumstance extended = extend(c, atom, [&](WorldIndex w) { return ratio[cell_of(w)]; });
  const SpacePtr& space = extended.space();
  return {extended, lift(a, space), lift(b, space), Proposition::atom(space, atom)};
}

}  // namespace judgment
