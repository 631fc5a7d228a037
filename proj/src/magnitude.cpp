#include "toreq/magnitude.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace toreq {

namespace {

constexpr double kApproxLog2Limit = 1000.0;  // approx values stay within 2^(+-1000)

long bits(const Integer& z) { return z == 0 ? 0 : static_cast<long>(msb(abs(z))) + 1; }

double log2_integer(const Integer& z) {
  const long b = bits(z);
  if (b <= 53) return std::log2(z.convert_to<double>());
  const Integer top = z >> static_cast<unsigned>(b - 53);
  return static_cast<double>(b - 53) + std::log2(top.convert_to<double>());
}

double log2_rational(const Rational& q) { return log2_integer(numerator(q)) - log2_integer(denominator(q)); }

bool in_range(double x) { return x > 0 && std::isfinite(x) && std::isnormal(x); }

bool fits(const Rational& q) { return bits(numerator(q)) + bits(denominator(q)) <= Magnitude::kExactBits; }

}  // namespace

Magnitude::Magnitude(const Rational& q) {
  if (q <= 0) throw std::invalid_argument("Magnitude needs a positive value");
  if (fits(q)) {
    kind_ = Kind::Exact;
    exact_ = q;
  } else {
    const double l = log2_rational(q);
    *this = power_of_two(l > 0 ? 1 : -1, approx(std::abs(l)));
  }
}

Magnitude Magnitude::approx(double v) {
  if (!(v > 0) || !std::isfinite(v)) throw std::invalid_argument("Magnitude::approx needs a finite positive value");
  Magnitude m;
  m.kind_ = Kind::Approx;
  m.approx_ = v;
  return m;
}

Magnitude Magnitude::power_of_two(int sign, const Magnitude& L) {
  if (sign == 0) return Magnitude(Rational(1));
  // Small exact integer exponents stay exact.
  if (auto e = L.exact(); e && denominator(*e) == 1 && *e <= kExactBits / 2) {
    Integer p = Integer(1) << e->convert_to<unsigned>();
    return Magnitude(sign > 0 ? Rational(p) : Rational(Integer(1), p));
  }
  const double l = L.to_double();
  if (l < kApproxLog2Limit) return approx(std::exp2(sign * l));
  Magnitude m;
  m.kind_ = Kind::Tower;
  m.sign_ = sign > 0 ? 1 : -1;
  m.log_ = std::make_shared<const Magnitude>(L);
  return m;
}

std::optional<Rational> Magnitude::exact() const {
  if (kind_ == Kind::Exact) return exact_;
  return std::nullopt;
}

std::pair<int, Magnitude> Magnitude::log2() const {
  switch (kind_) {
    case Kind::Exact: {
      if (exact_ == 1) return {0, Magnitude(Rational(1))};
      // Exact powers of two keep an exact log.
      const Integer n = numerator(exact_), d = denominator(exact_);
      if (n == 1 && (d & (d - 1)) == 0) return {-1, Magnitude(Rational(static_cast<long>(msb(d))))};
      if (d == 1 && (n & (n - 1)) == 0) return {1, Magnitude(Rational(static_cast<long>(msb(n))))};
      const double l = log2_rational(exact_);
      return {l > 0 ? 1 : -1, approx(std::abs(l))};
    }
    case Kind::Approx: {
      const double l = std::log2(approx_);
      if (l == 0) return {0, Magnitude(Rational(1))};
      return {l > 0 ? 1 : -1, approx(std::abs(l))};
    }
    case Kind::Tower:
      return {sign_, *log_};
  }
  return {0, Magnitude()};
}

double Magnitude::log2_double() const {
  auto [s, L] = log2();
  return s == 0 ? 0.0 : s * L.to_double();
}

double Magnitude::log2_log2_double() const {
  auto [s, L] = log2();
  if (s <= 0) throw std::domain_error("log2 log2 needs a value above 1");
  return L.log2_double();
}

double Magnitude::to_double() const {
  switch (kind_) {
    case Kind::Exact: return toreq::to_double(exact_);
    case Kind::Approx: return approx_;
    case Kind::Tower: return sign_ > 0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  return 0.0;
}

std::pair<int, Magnitude> Magnitude::signed_add(int sa, const Magnitude& a, int sb, const Magnitude& b) {
  if (sa == 0) return {sb, b};
  if (sb == 0) return {sa, a};
  if (sa == sb) return {sa, a + b};
  const int c = compare(a, b);
  if (c == 0) return {0, Magnitude()};
  return c > 0 ? std::pair{sa, a - b} : std::pair{sb, b - a};
}

Magnitude operator*(const Magnitude& a, const Magnitude& b) {
  if (a.is_exact() && b.is_exact()) return Magnitude(a.exact_ * b.exact_);
  auto [sa, la] = a.log2();
  auto [sb, lb] = b.log2();
  auto [s, l] = Magnitude::signed_add(sa, la, sb, lb);
  return Magnitude::power_of_two(s, l);
}

Magnitude Magnitude::reciprocal() const {
  switch (kind_) {
    case Kind::Exact: return Magnitude(1 / exact_);
    case Kind::Approx: return approx(1.0 / approx_);
    case Kind::Tower: return power_of_two(-sign_, *log_);
  }
  return *this;
}

Magnitude operator/(const Magnitude& a, const Magnitude& b) { return a * b.reciprocal(); }

Magnitude operator+(const Magnitude& a, const Magnitude& b) {
  if (a.is_exact() && b.is_exact()) return Magnitude(a.exact_ + b.exact_);
  if (a.kind_ != Magnitude::Kind::Tower && b.kind_ != Magnitude::Kind::Tower && in_range(a.to_double()) &&
      in_range(b.to_double()))
    return Magnitude::approx(a.to_double() + b.to_double());
  const Magnitude& big = compare(a, b) >= 0 ? a : b;
  const Magnitude& small = compare(a, b) >= 0 ? b : a;
  // big * (1 + small / big); the correction only matters when it is visible.
  const double r = (small / big).to_double();
  if (r < 1e-300) return big;
  auto [s, l] = big.log2();
  auto [s2, l2] = Magnitude::signed_add(s, l, 1, Magnitude::approx(std::log1p(r) / std::log(2.0)));
  return Magnitude::power_of_two(s2, l2);
}

Magnitude operator-(const Magnitude& a, const Magnitude& b) {
  if (a.is_exact() && b.is_exact()) return Magnitude(a.exact_ - b.exact_);
  if (compare(a, b) <= 0) throw std::domain_error("Magnitude subtraction needs a > b");
  if (a.kind_ != Magnitude::Kind::Tower && b.kind_ != Magnitude::Kind::Tower && in_range(a.to_double()) &&
      in_range(b.to_double()) && b.to_double() < a.to_double() * (1.0 - 1e-12))
    return Magnitude::approx(a.to_double() - b.to_double());
  const double r = (b / a).to_double();
  if (r > 1.0 - 1e-12) throw std::domain_error("Magnitude subtraction lost to rounding");
  if (r < 1e-300) return a;
  auto [s, l] = a.log2();
  const double corr = -std::log1p(-r) / std::log(2.0);  // log2 a - log2(a - b)
  auto [s2, l2] = Magnitude::signed_add(s, l, -1, Magnitude::approx(corr));
  return Magnitude::power_of_two(s2, l2);
}

Magnitude Magnitude::pow(const Rational& r) const {
  if (r == 0) return Magnitude();
  if (r < 0) return pow(-r).reciprocal();
  if (is_exact() && denominator(r) == 1) {
    const Integer e = numerator(r);
    const long est = (bits(numerator(exact_)) + bits(denominator(exact_))) * (e > 1000000 ? 1000000 : e.convert_to<long>());
    if (est <= kExactBits) {
      Rational out = 1;
      for (long i = 0, n = e.convert_to<long>(); i < n; ++i) out *= exact_;
      return Magnitude(out);
    }
  }
  auto [s, l] = log2();
  if (s == 0) return Magnitude();
  return power_of_two(s, l * Magnitude(r));
}

Magnitude Magnitude::pow(const Rational& base, const Magnitude& exponent) {
  if (base <= 0) throw std::invalid_argument("Magnitude::pow needs a positive base");
  if (auto e = exponent.exact()) {
    if (denominator(*e) == 1 && *e < 4096) return Magnitude(base).pow(*e);
  }
  auto [s, l] = Magnitude(base).log2();
  if (s == 0) return Magnitude();
  return power_of_two(s, l * exponent);
}

int compare(const Magnitude& a, const Magnitude& b) {
  if (a.is_exact() && b.is_exact()) return a.exact_ < b.exact_ ? -1 : (a.exact_ > b.exact_ ? 1 : 0);
  if (a.kind_ != Magnitude::Kind::Tower && b.kind_ != Magnitude::Kind::Tower) {
    const double x = a.to_double(), y = b.to_double();
    if (in_range(x) && in_range(y)) return x < y ? -1 : (x > y ? 1 : 0);
  }
  auto [sa, la] = a.log2();
  auto [sb, lb] = b.log2();
  if (sa != sb) return sa < sb ? -1 : 1;
  if (sa == 0) return 0;
  const int c = compare(la, lb);
  return sa > 0 ? c : -c;
}

Magnitude min(const Magnitude& a, const Magnitude& b) { return compare(b, a) < 0 ? b : a; }
Magnitude max(const Magnitude& a, const Magnitude& b) { return compare(b, a) > 0 ? b : a; }

std::string Magnitude::to_string() const {
  switch (kind_) {
    case Kind::Exact: return toreq::to_string(exact_);
    case Kind::Approx: {
      std::ostringstream os;
      os.precision(17);
      os << "~" << approx_;
      return os.str();
    }
    case Kind::Tower: return std::string(sign_ > 0 ? "2^(" : "2^-(") + log_->to_string() + ")";
  }
  return {};
}

}  // namespace toreq
