#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

namespace toreq {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using RVec = Vec<Rational>;
using RMat = Mat<Rational>;
using IVec = Vec<std::int64_t>;
using ZMat = Mat<Integer>;

/// Parses "p/q", "p" or a finite decimal such as "0.125" into an exact rational.
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form; integers print without a denominator.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

Integer numerator(const Rational& q);
Integer denominator(const Rational& q);

Integer floor(const Rational& q);
/// q - floor(q), always in [0, 1).
Rational frac(const Rational& q);

double to_double(const Rational& q);
/// Exact rational value of a finite double.
Rational exact_rational(double x);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);
Integer abs(const Integer& z);
Rational abs(const Rational& q);

std::vector<Rational> parse_rational_list(std::string_view comma_separated);

template <typename Derived>
typename Derived::Scalar max_norm(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  Scalar best(0);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      Scalar v = m(i, j) < Scalar(0) ? Scalar(-m(i, j)) : Scalar(m(i, j));
      if (v > best) best = v;
    }
  return best;
}

template <typename Derived>
Vec<double> to_double(const Eigen::MatrixBase<Derived>& v) {
  Vec<double> out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = to_double(Rational(v[i]));
  return out;
}

RVec to_rational(const std::vector<Rational>& v);

/// Lexicographic order on equal-length vectors.
bool lex_less(const RVec& a, const RVec& b);

}  // namespace toreq
