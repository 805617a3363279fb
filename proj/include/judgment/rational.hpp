#pragma once

#include <gmpxx.h>

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

namespace judgment {

/// Exact arbitrary-precision probability weight.
using Rational = mpq_class;

/// Reduced "num/den" text, with integers written as "n/1".
inline std::string to_fraction_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Shortest exact text: "3/5", "1", "0".
inline std::string to_display_string(const Rational& q) { return q.get_str(); }

/// Accepts "n", "-n", "n/d". Rejects zero denominators and stray characters.
inline std::optional<Rational> parse_rational(std::string_view text) {
  auto is_int = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char ch : s)
      if (ch < '0' || ch > '9') return false;
    return true;
  };
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1")
                                                         : text.substr(slash + 1);
  if (!is_int(num) || !is_int(den) || den.front() == '-' || den.front() == '+')
    return std::nullopt;
  std::string n(num);
  if (n.front() == '+') n.erase(0, 1);
  mpz_class numerator(n, 10);
  mpz_class denominator(std::string(den), 10);
  if (denominator == 0) return std::nullopt;
  Rational q(numerator, denominator);
  q.canonicalize();
  return q;
}

inline double log2_of(const mpz_class& z) {
  // z = mantissa * 2^exp with mantissa in [0.5, 1)
  long exp = 0;
  const double mantissa = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log2(mantissa) + static_cast<double>(exp);
}

/// log2 of a non-negative rational; -inf for zero. Safe for huge numerators
/// and denominators that would overflow a double.
inline double log2_of(const Rational& q) {
  if (sgn(q) == 0) return -std::numeric_limits<double>::infinity();
  return log2_of(mpz_class(q.get_num())) - log2_of(mpz_class(q.get_den()));
}

inline Rational rational_from_double(double x) { return Rational(x); }

}  // namespace judgment
