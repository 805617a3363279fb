#pragma once

#include <cmath>
#include <compare>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>

#include "judgment/error.hpp"

namespace judgment {

/// An information or evidence value in bits: a finite real or +/- infinity.
/// Arithmetic is total except for inf - inf, which raises IndeterminateForm.
class ExtendedReal {
 public:
  constexpr ExtendedReal() = default;
  constexpr ExtendedReal(double bits) : value_(bits) {}  // NOLINT(implicit)

  static constexpr ExtendedReal positive_infinity() {
    return ExtendedReal(std::numeric_limits<double>::infinity());
  }
  static constexpr ExtendedReal negative_infinity() {
    return ExtendedReal(-std::numeric_limits<double>::infinity());
  }

  bool is_finite() const { return std::isfinite(value_); }
  bool is_positive_infinity() const { return std::isinf(value_) && value_ > 0; }
  bool is_negative_infinity() const { return std::isinf(value_) && value_ < 0; }
  double value() const { return value_; }

  ExtendedReal operator-() const { return ExtendedReal(-value_); }

  friend ExtendedReal operator+(ExtendedReal lhs, ExtendedReal rhs) {
    if (std::isinf(lhs.value_) && std::isinf(rhs.value_) &&
        (lhs.value_ > 0) != (rhs.value_ > 0))
      fail(ErrorKind::IndeterminateForm, "inf - inf is undefined");
    return ExtendedReal(lhs.value_ + rhs.value_);
  }
  friend ExtendedReal operator-(ExtendedReal lhs, ExtendedReal rhs) { return lhs + (-rhs); }

  friend bool operator==(ExtendedReal lhs, ExtendedReal rhs) { return lhs.value_ == rhs.value_; }
  friend auto operator<=>(ExtendedReal lhs, ExtendedReal rhs) {
    return lhs.value_ <=> rhs.value_;
  }

  /// "2.3219 bits", "inf bits", "-inf bits".
  std::string to_bits_string(int decimals = 4) const {
    if (is_positive_infinity()) return "inf bits";
    if (is_negative_infinity()) return "-inf bits";
    char buf[64];
    double shown = value_ == 0.0 ? 0.0 : value_;  // no "-0.0000"
    std::snprintf(buf, sizeof buf, "%.*f bits", decimals, shown);
    std::string text(buf);
    if (text.rfind("-0.", 0) == 0 && text.find_first_not_of("-0. bits") == std::string::npos)
      text.erase(0, 1);
    return text;
  }

 private:
  double value_ = 0.0;
};

inline std::ostream& operator<<(std::ostream& os, ExtendedReal x) {
  return os << x.to_bits_string();
}

/// True when both are the same infinity or both finite and within tol.
inline bool near(ExtendedReal a, ExtendedReal b, double tol = 1e-9) {
  if (!a.is_finite() || !b.is_finite()) return a == b;
  return std::abs(a.value() - b.value()) <= tol;
}

}  // namespace judgment
