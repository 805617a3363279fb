#pragma once

#include "judgment/circumstance.hpp"

namespace judgment::testing {

// World index: bit 0 = a, bit 1 = b.
inline constexpr WorldIndex kNotANotB = 0;
inline constexpr WorldIndex kANotB = 1;
inline constexpr WorldIndex kNotAB = 2;
inline constexpr WorldIndex kAB = 3;

inline SpacePtr ab_space() {
  static const SpacePtr space = build_space({"a", "b"});
  return space;
}

/// One tier: ab 1/10, a~b 2/5, ~ab 3/10, ~a~b 1/5.
inline Circumstance e1() {
  return Circumstance(ab_space(), {Tier({{kAB, Rational(1, 10)},
                                         {kANotB, Rational(2, 5)},
                                         {kNotAB, Rational(3, 10)},
                                         {kNotANotB, Rational(1, 5)}})});
}

/// P(a) = 0: tier 0 holds ~ab and ~a~b at 1/2 each; tier 1 holds ab 3/4, a~b 1/4.
inline Circumstance e2() {
  return Circumstance(ab_space(), {Tier({{kNotAB, Rational(1, 2)}, {kNotANotB, Rational(1, 2)}}),
                                   Tier({{kAB, Rational(3, 4)}, {kANotB, Rational(1, 4)}})});
}

inline Proposition atom(const Circumstance& c, const char* name) { return Proposition::atom(c.space(), name); }

/// Single-tier circumstance over {a,b} from the four cell masses.
inline Circumstance ab_cells(const Rational& ab, const Rational& a_nb, const Rational& na_b, const Rational& na_nb) {
  return Circumstance::from_raw_tiers(ab_space(), {{{kAB, ab}, {kANotB, a_nb}, {kNotAB, na_b}, {kNotANotB, na_nb}}});
}

}  // namespace judgment::testing
