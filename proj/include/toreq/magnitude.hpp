#pragma once

// Positive reals far outside double range. A value is held exactly as a
// rational while it fits in kExactBits, as a double while its binary exponent
// fits, and otherwise as 2^(+-L) with L itself a Magnitude. Exactness is
// tracked: once a value leaves the exact form it never returns.

#include <memory>
#include <optional>
#include <string>

#include "toreq/rational.hpp"

namespace toreq {

class Magnitude {
 public:
  static constexpr long kExactBits = 1 << 16;

  Magnitude() : Magnitude(Rational(1)) {}
  /// Throws std::invalid_argument unless q > 0.
  Magnitude(const Rational& q);  // NOLINT(google-explicit-constructor)
  static Magnitude from_int(long v) { return Magnitude(Rational(v)); }
  /// Approximate positive double.
  static Magnitude approx(double v);
  /// 2^(sign * L); sign is +1 or -1.
  static Magnitude power_of_two(int sign, const Magnitude& L);

  bool is_exact() const { return kind_ == Kind::Exact; }
  /// Exact value when held exactly.
  std::optional<Rational> exact() const;

  /// log2 of the value as (sign, |log2|); sign 0 means the value is 1.
  std::pair<int, Magnitude> log2() const;
  /// log2 as a double; +-inf when it overflows.
  double log2_double() const;
  /// log2 log2 of the value (values above 1 only), as a double.
  double log2_log2_double() const;
  /// Nearest double (0 or inf outside range).
  double to_double() const;

  friend Magnitude operator*(const Magnitude& a, const Magnitude& b);
  friend Magnitude operator/(const Magnitude& a, const Magnitude& b);
  friend Magnitude operator+(const Magnitude& a, const Magnitude& b);
  /// a - b for a > b; throws when the difference is lost to rounding.
  friend Magnitude operator-(const Magnitude& a, const Magnitude& b);
  Magnitude reciprocal() const;
  Magnitude pow(const Rational& r) const;
  /// base^exponent for an exact base > 0.
  static Magnitude pow(const Rational& base, const Magnitude& exponent);

  /// Three-way comparison; exact when both sides are exact.
  friend int compare(const Magnitude& a, const Magnitude& b);
  friend bool operator<(const Magnitude& a, const Magnitude& b) { return compare(a, b) < 0; }
  friend bool operator<=(const Magnitude& a, const Magnitude& b) { return compare(a, b) <= 0; }
  friend bool operator>(const Magnitude& a, const Magnitude& b) { return compare(a, b) > 0; }
  friend bool operator==(const Magnitude& a, const Magnitude& b) { return compare(a, b) == 0; }

  /// "p/q" when exact, "~1.23e-45" for doubles, "2^(...)" / "2^-(...)" for towers.
  std::string to_string() const;

 private:
  enum class Kind { Exact, Approx, Tower };
  Kind kind_ = Kind::Exact;
  Rational exact_;
  double approx_ = 1.0;
  int sign_ = 1;
  std::shared_ptr<const Magnitude> log_;

  // Signed sum of two logs, each as (sign, |value|).
  static std::pair<int, Magnitude> signed_add(int sa, const Magnitude& a, int sb, const Magnitude& b);
};

Magnitude min(const Magnitude& a, const Magnitude& b);
Magnitude max(const Magnitude& a, const Magnitude& b);

}  // namespace toreq
