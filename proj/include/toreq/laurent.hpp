#pragma once

// Laurent polynomials with Gaussian-rational coefficients, evaluated on the
// unit torus through angle vectors: P(e(x)) = sum_a c_a exp(2 pi i <a, x>).

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "toreq/polytope.hpp"
#include "toreq/quadrature.hpp"
#include "toreq/rational.hpp"
#include "toreq/torus.hpp"

namespace toreq {

struct GaussianRational {
  Rational re;
  Rational im;

  bool is_zero() const { return re == 0 && im == 0; }
  Rational norm_squared() const { return re * re + im * im; }
  std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }
  friend bool operator==(const GaussianRational&, const GaussianRational&) = default;
};

struct LaurentTerm {
  IVec exponent;
  GaussianRational coefficient;
};

class LaurentPolynomial {
 public:
  LaurentPolynomial() = default;
  /// Merges equal exponents, drops zero coefficients and sorts terms
  /// lexicographically by exponent.
  LaurentPolynomial(Eigen::Index d, std::vector<LaurentTerm> terms);

  static LaurentPolynomial constant(Eigen::Index d, const Rational& c);
  /// Parses sums of terms such as "T1 - 1", "T1 - T2", "2", "3/2*T1^-1*T2^2".
  /// Variables are T1..Td (x1..xd also accepted); coefficients are real rationals.
  static LaurentPolynomial parse(Eigen::Index d, std::string_view text);

  Eigen::Index dim() const { return d_; }
  const std::vector<LaurentTerm>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  /// Max-norm of the coefficient vector, as a double.
  double coefficient_norm() const;

  /// Product with the monomial T^a.
  LaurentPolynomial shifted(const IVec& a) const;
  /// Product with a real rational scalar.
  LaurentPolynomial scaled(const Rational& c) const;

  std::string to_string() const;

 private:
  Eigen::Index d_ = 0;
  std::vector<LaurentTerm> terms_;
};

/// Sum of c_a z^a with compensated summation. Throws std::domain_error when
/// z_i = 0 meets a negative exponent.
std::complex<double> evaluate(const LaurentPolynomial& p, const std::vector<std::complex<double>>& z);
/// P(e(x)) for a floating angle vector.
std::complex<double> evaluate_angles(const LaurentPolynomial& p, const Vec<double>& x);
/// P(e(x)) for a rational angle vector; each phase <a, x> is reduced mod 1 exactly.
std::complex<double> evaluate_angles(const LaurentPolynomial& p, const RVec& x);

/// log max(r, v).
double log_r(double r, double v);

enum class Atorality { True, Unknown };
/// True for nonzero constants and, when d >= 2, for binomials
/// c1 T^m - c2 T^n with m != n and |c1| = |c2|; Unknown otherwise.
Atorality binomial_atoral(const LaurentPolynomial& p);

/// Exact test whether P vanishes at some Galois conjugate of omega, for
/// binomials only (nullopt otherwise). Since c2/c1 is Gaussian rational, it
/// can equal a root of unity only when it is one of 1, i, -1, -i.
std::optional<bool> exact_zero_on_orbit(const LaurentPolynomial& p, const TorsionPoint& omega);

struct OrbitZeroCheck {
  bool zero = false;
  bool exact = false;  ///< decided by exact_zero_on_orbit
  double min_modulus = 0.0;
};
/// Exact test for binomials, otherwise min |P| over the orbit against `floor`.
OrbitZeroCheck zero_on_orbit(const LaurentPolynomial& p, const TorsionPoint& omega,
                             double floor = 1e-12);

/// Quasi-Monte-Carlo Mahler measure with the log_r truncation ladder.
QuadratureReport mahler_measure(const LaurentPolynomial& p, const QmcConfig& config = {});

/// Integral of log |P(e(x))| over a full-dimensional polytope.
QuadratureReport polytope_log_integral(const LaurentPolynomial& p, const Polytope& region,
                                       const QmcConfig& config = {});

}  // namespace toreq
