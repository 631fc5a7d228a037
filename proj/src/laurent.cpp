#include "toreq/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace toreq {

namespace {

struct ExponentLess {
  bool operator()(const IVec& a, const IVec& b) const {
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
  }
};

GaussianRational mul(const GaussianRational& a, const GaussianRational& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

// exp(2 pi i t) for a phase already reduced to [0, 1).
std::complex<double> phase(double t) {
  const double angle = 2.0 * std::numbers::pi * t;
  return {std::cos(angle), std::sin(angle)};
}

std::complex<double> compensated_sum(const std::vector<std::complex<double>>& parts) {
  CompensatedSum re, im;
  for (const auto& z : parts) {
    re.add(z.real());
    im.add(z.imag());
  }
  return {re.value(), im.value()};
}

}  // namespace

LaurentPolynomial::LaurentPolynomial(Eigen::Index d, std::vector<LaurentTerm> terms) : d_(d) {
  if (d < 1) throw std::invalid_argument("Laurent polynomial needs d >= 1");
  std::map<IVec, GaussianRational, ExponentLess> merged;
  for (auto& t : terms) {
    if (t.exponent.size() != d) throw std::invalid_argument("exponent dimension mismatch");
    auto [it, fresh] = merged.emplace(t.exponent, t.coefficient);
    if (!fresh) {
      it->second.re += t.coefficient.re;
      it->second.im += t.coefficient.im;
    }
  }
  for (auto& [e, c] : merged)
    if (!c.is_zero()) terms_.push_back({e, c});
}

LaurentPolynomial LaurentPolynomial::constant(Eigen::Index d, const Rational& c) {
  return LaurentPolynomial(d, {{IVec::Zero(d), {c, 0}}});
}

LaurentPolynomial LaurentPolynomial::parse(Eigen::Index d, std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw std::invalid_argument("empty polynomial");

  // Split into signed terms at '+'/'-' not following '^' or '(' .
  std::vector<std::string> pieces;
  std::string cur;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char ch = s[i];
    if ((ch == '+' || ch == '-') && i > 0 && s[i - 1] != '^' && s[i - 1] != '(' && s[i - 1] != '*') {
      pieces.push_back(cur);
      cur.clear();
    }
    cur += ch;
  }
  pieces.push_back(cur);

  std::vector<LaurentTerm> terms;
  for (std::string piece : pieces) {
    GaussianRational coef{1, 0};
    if (!piece.empty() && (piece[0] == '+' || piece[0] == '-')) {
      if (piece[0] == '-') coef.re = -1;
      piece.erase(0, 1);
    }
    if (piece.empty()) throw std::invalid_argument("dangling sign in polynomial '" + std::string(text) + "'");
    IVec e = IVec::Zero(d);
    std::stringstream ss(piece);
    std::string factor;
    while (std::getline(ss, factor, '*')) {
      if (factor.empty()) throw std::invalid_argument("empty factor in polynomial");
      if (factor[0] == 'T' || factor[0] == 'x') {
        std::size_t pos = 1;
        while (pos < factor.size() && std::isdigit(static_cast<unsigned char>(factor[pos]))) ++pos;
        if (pos == 1) throw std::invalid_argument("variable needs an index: " + factor);
        const long var = std::stol(factor.substr(1, pos - 1));
        if (var < 1 || var > d) throw std::invalid_argument("variable index out of range: " + factor);
        long power = 1;
        if (pos < factor.size()) {
          if (factor[pos] != '^') throw std::invalid_argument("bad factor: " + factor);
          std::string ex = factor.substr(pos + 1);
          if (ex.size() >= 2 && ex.front() == '(' && ex.back() == ')') ex = ex.substr(1, ex.size() - 2);
          std::size_t used = 0;
          power = std::stol(ex, &used);
          if (used != ex.size()) throw std::invalid_argument("bad exponent: " + factor);
        }
        e[var - 1] += power;
      } else if (factor == "i" || factor == "I") {
        coef = mul(coef, {0, 1});
      } else {
        coef = mul(coef, {parse_rational(factor), 0});
      }
    }
    terms.push_back({e, coef});
  }
  return LaurentPolynomial(d, std::move(terms));
}

double LaurentPolynomial::coefficient_norm() const {
  double best = 0.0;
  for (const auto& t : terms_) best = std::max(best, std::abs(t.coefficient.to_complex()));
  return best;
}

LaurentPolynomial LaurentPolynomial::shifted(const IVec& a) const {
  auto terms = terms_;
  for (auto& t : terms) t.exponent += a;
  return LaurentPolynomial(d_, std::move(terms));
}

LaurentPolynomial LaurentPolynomial::scaled(const Rational& c) const {
  auto terms = terms_;
  for (auto& t : terms) t.coefficient = mul(t.coefficient, {c, 0});
  return LaurentPolynomial(d_, std::move(terms));
}

std::string LaurentPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& t : terms_) {
    std::string coef;
    const auto& c = t.coefficient;
    if (c.im == 0)
      coef = toreq::to_string(c.re);
    else
      coef = "(" + toreq::to_string(c.re) + (c.im < 0 ? "-" : "+") + toreq::to_string(abs(c.im)) + "*i)";
    std::string mono;
    for (Eigen::Index j = 0; j < d_; ++j) {
      if (t.exponent[j] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "T" + std::to_string(j + 1);
      if (t.exponent[j] != 1) mono += "^" + std::to_string(t.exponent[j]);
    }
    std::string term;
    if (mono.empty())
      term = coef;
    else if (coef == "1")
      term = mono;
    else if (coef == "-1")
      term = "-" + mono;
    else
      term = coef + "*" + mono;
    if (!out.empty()) out += term[0] == '-' ? " - " + term.substr(1) : " + " + term;
    else out = term;
  }
  return out;
}

std::complex<double> evaluate(const LaurentPolynomial& p, const std::vector<std::complex<double>>& z) {
  if (static_cast<Eigen::Index>(z.size()) != p.dim()) throw std::invalid_argument("evaluate: dimension mismatch");
  std::vector<std::complex<double>> parts;
  for (const auto& t : p.terms()) {
    std::complex<double> v = t.coefficient.to_complex();
    for (Eigen::Index j = 0; j < p.dim(); ++j) {
      const auto e = t.exponent[j];
      if (e < 0 && z[static_cast<std::size_t>(j)] == 0.0)
        throw std::domain_error("evaluate: zero coordinate with negative exponent");
      v *= std::pow(z[static_cast<std::size_t>(j)], static_cast<int>(e));
    }
    parts.push_back(v);
  }
  return compensated_sum(parts);
}

std::complex<double> evaluate_angles(const LaurentPolynomial& p, const Vec<double>& x) {
  if (x.size() != p.dim()) throw std::invalid_argument("evaluate_angles: dimension mismatch");
  std::vector<std::complex<double>> parts;
  for (const auto& t : p.terms()) {
    long double ph = 0.0L;
    for (Eigen::Index j = 0; j < p.dim(); ++j) ph += static_cast<long double>(t.exponent[j]) * x[j];
    ph -= std::floor(ph);
    parts.push_back(t.coefficient.to_complex() * phase(static_cast<double>(ph)));
  }
  return compensated_sum(parts);
}

std::complex<double> evaluate_angles(const LaurentPolynomial& p, const RVec& x) {
  if (x.size() != p.dim()) throw std::invalid_argument("evaluate_angles: dimension mismatch");
  std::vector<std::complex<double>> parts;
  for (const auto& t : p.terms()) {
    Rational ph = 0;
    for (Eigen::Index j = 0; j < p.dim(); ++j) ph += Rational(static_cast<long long>(t.exponent[j])) * x[j];
    ph = frac(ph);
    std::complex<double> z;
    if (denominator(ph) < Integer(std::numeric_limits<std::int64_t>::max()))
      z = unit_root(numerator(ph).convert_to<std::int64_t>(), denominator(ph).convert_to<std::int64_t>());
    else
      z = phase(to_double(ph));
    parts.push_back(t.coefficient.to_complex() * z);
  }
  return compensated_sum(parts);
}

double log_r(double r, double v) {
  if (!(r > 0)) throw std::invalid_argument("log_r needs r > 0");
  return std::log(std::max(r, v));
}

Atorality binomial_atoral(const LaurentPolynomial& p) {
  if (p.term_count() == 1 && p.terms()[0].exponent.isZero()) return Atorality::True;
  if (p.dim() >= 2 && p.term_count() == 2 &&
      p.terms()[0].coefficient.norm_squared() == p.terms()[1].coefficient.norm_squared())
    return Atorality::True;
  return Atorality::Unknown;
}

std::optional<bool> exact_zero_on_orbit(const LaurentPolynomial& p, const TorsionPoint& omega) {
  if (p.dim() != omega.dim()) throw std::invalid_argument("exact_zero_on_orbit: dimension mismatch");
  if (p.term_count() == 1) return false;  // monomials never vanish on the torus
  if (p.term_count() != 2) return std::nullopt;
  const auto& [m, c1] = p.terms()[0];
  const auto& [n, c2neg] = p.terms()[1];
  // P = c1 T^m - c2 T^n vanishes at e(x) iff e(<m - n, x>) = c2 / c1.
  const GaussianRational c2{-c2neg.re, -c2neg.im};
  const Rational den = c1.norm_squared();
  const GaussianRational ratio{(c2.re * c1.re + c2.im * c1.im) / den, (c2.im * c1.re - c2.re * c1.im) / den};
  Rational target;
  if (ratio == GaussianRational{1, 0})
    target = 0;
  else if (ratio == GaussianRational{0, 1})
    target = Rational(1, 4);
  else if (ratio == GaussianRational{-1, 0})
    target = Rational(1, 2);
  else if (ratio == GaussianRational{0, -1})
    target = Rational(3, 4);
  else
    return false;  // not a root of unity, so never equal to e(anything rational)
  const std::int64_t N = omega.order();
  // <m - n, q> = s / N with s an integer.
  __int128 s = 0;
  for (Eigen::Index j = 0; j < p.dim(); ++j)
    s += static_cast<__int128>(m[j] - n[j]) * omega.scaled_angles()[static_cast<std::size_t>(j)];
  s %= N;
  if (s < 0) s += N;
  const auto s64 = static_cast<std::int64_t>(s);
  for (std::int64_t k = 1; k <= N; ++k) {
    if (gcd64(k, N) != 1) continue;
    const auto ks = static_cast<std::int64_t>((static_cast<__int128>(k) * s64) % N);
    if (Rational(ks, N) == target) return true;
  }
  return false;
}

OrbitZeroCheck zero_on_orbit(const LaurentPolynomial& p, const TorsionPoint& omega, double floor) {
  OrbitZeroCheck out;
  out.min_modulus = std::numeric_limits<double>::infinity();
  for (const auto& w : galois_orbit(omega))
    out.min_modulus = std::min(out.min_modulus, std::abs(evaluate_angles(p, w.angles())));
  if (auto exact = exact_zero_on_orbit(p, omega)) {
    out.zero = *exact;
    out.exact = true;
  } else {
    out.zero = out.min_modulus < floor;
  }
  return out;
}

namespace {

QuadratureReport constant_report(double value) {
  QuadratureReport r;
  r.estimate = value;
  r.converged = true;
  return r;
}

}  // namespace

QuadratureReport mahler_measure(const LaurentPolynomial& p, const QmcConfig& config) {
  if (p.is_zero()) throw std::invalid_argument("Mahler measure of the zero polynomial");
  if (p.term_count() == 1) return constant_report(std::log(std::abs(p.terms()[0].coefficient.to_complex())));
  return log_ladder_integral({}, [&](const Vec<double>& x) { return std::abs(evaluate_angles(p, x)); },
                             p.dim(), config);
}

QuadratureReport polytope_log_integral(const LaurentPolynomial& p, const Polytope& region,
                                       const QmcConfig& config) {
  if (p.is_zero()) throw std::invalid_argument("log integral of the zero polynomial");
  if (region.ambient_dim() != p.dim() || !region.is_full_dimensional())
    throw std::invalid_argument("polytope_log_integral needs a full-dimensional polytope in the torus dimension");
  if (p.term_count() == 1)
    return constant_report(std::log(std::abs(p.terms()[0].coefficient.to_complex())) * to_double(volume(region)));
  return log_ladder_integral(simplices_of(region),
                             [&](const Vec<double>& x) { return std::abs(evaluate_angles(p, x)); }, p.dim(),
                             config);
}

}  // namespace toreq
