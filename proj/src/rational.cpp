#include "toreq/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace toreq {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

Integer parse_integer(std::string_view s) {
  if (!is_integer_literal(s)) throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  if (s.front() == '+') s.remove_prefix(1);
  return Integer(std::string(s));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer p = parse_integer(trim(s.substr(0, slash)));
    Integer q = parse_integer(trim(s.substr(slash + 1)));
    if (q == 0) throw std::invalid_argument("zero denominator in '" + std::string(s) + "'");
    return Rational(p, q);
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view digits = s.substr(dot + 1);
    bool negative = !whole.empty() && whole.front() == '-';
    if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) whole.remove_prefix(1);
    if (whole.empty()) whole = "0";
    if (digits.empty() || !is_integer_literal(whole) || !is_integer_literal(digits) ||
        digits.front() == '-' || digits.front() == '+')
      throw std::invalid_argument("malformed decimal: '" + std::string(s) + "'");
    Integer scale = 1;
    for (std::size_t i = 0; i < digits.size(); ++i) scale *= 10;
    Rational r(Integer(std::string(whole)) * scale + Integer(std::string(digits)), scale);
    return negative ? Rational(-r) : r;
  }
  return Rational(parse_integer(s));
}

std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

std::string to_string(const Integer& z) { return z.str(); }

Integer numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
Integer denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

Integer floor(const Rational& q) {
  Integer p = numerator(q), d = denominator(q);
  Integer f = p / d;  // truncates toward zero
  if (p < 0 && f * d != p) f -= 1;
  return f;
}

Rational frac(const Rational& q) { return q - Rational(floor(q)); }

double to_double(const Rational& q) { return q.convert_to<double>(); }

Rational exact_rational(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite double");
  int exponent = 0;
  double mantissa = std::frexp(x, &exponent);
  // 53 bits of mantissa are exact in an int64.
  auto scaled = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
  exponent -= 53;
  Rational r{Integer(scaled)};
  Integer two_pow = 1;
  two_pow <<= static_cast<unsigned>(exponent < 0 ? -exponent : exponent);
  return exponent < 0 ? Rational(r / Rational(two_pow)) : Rational(r * Rational(two_pow));
}

Integer gcd(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }
Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::lcm(a, b);
}
Integer abs(const Integer& z) { return z < 0 ? Integer(-z) : z; }
Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

std::vector<Rational> parse_rational_list(std::string_view s) {
  std::vector<Rational> out;
  while (true) {
    auto comma = s.find(',');
    out.push_back(parse_rational(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

RVec to_rational(const std::vector<Rational>& v) {
  RVec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i];
  return out;
}

bool lex_less(const RVec& a, const RVec& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return false;
}

}  // namespace toreq
