#include "toreq/lattice.hpp"

#include <stdexcept>

#include "toreq/linalg.hpp"

namespace toreq {

namespace {

RMat to_rational_matrix(const ZMat& m) {
  RMat r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

ZMat to_integer_matrix(const RMat& m) {
  ZMat z(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (denominator(m(i, j)) != 1) throw std::logic_error("expected an integer matrix");
      z(i, j) = numerator(m(i, j));
    }
  return z;
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

}  // namespace

UnimodularMatrix::UnimodularMatrix(ZMat entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0)
    throw std::invalid_argument("unimodular matrix must be square and nonempty");
  const Rational det = exact_determinant(to_rational_matrix(entries_));
  if (det == 1)
    det_ = 1;
  else if (det == -1)
    det_ = -1;
  else
    throw std::invalid_argument("matrix is not unimodular (det = " + to_string(det) + ")");
}

UnimodularMatrix UnimodularMatrix::inverse() const {
  auto inv = exact_inverse(to_rational_matrix(entries_));
  return UnimodularMatrix(to_integer_matrix(*inv));
}

InverseNormCheck inverse_norm_check(const UnimodularMatrix& a) {
  InverseNormCheck out;
  const long d = static_cast<long>(a.dim());
  out.exact_norm = a.inverse().norm();
  out.bound = 1;
  for (long i = 0; i < 2 * d - 2; ++i) out.bound *= d;
  const Integer an = a.norm();
  for (long i = 0; i < d - 1; ++i) out.bound *= an;
  out.ok = out.exact_norm <= out.bound;
  return out;
}

ZMat hermite_normal_form(const ZMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("hermite_normal_form needs a square matrix");
  ZMat t = m;
  const Eigen::Index d = t.rows();
  for (Eigen::Index j = 0; j < d; ++j) {
    // Euclid on rows j..d-1 of column j until one nonzero entry remains.
    while (true) {
      Eigen::Index piv = -1;
      for (Eigen::Index i = j; i < d; ++i)
        if (t(i, j) != 0 && (piv < 0 || abs(t(i, j)) < abs(t(piv, j)))) piv = i;
      if (piv < 0) throw std::invalid_argument("hermite_normal_form needs a nonsingular matrix");
      t.row(j).swap(t.row(piv));
      bool done = true;
      for (Eigen::Index i = j + 1; i < d; ++i) {
        if (t(i, j) == 0) continue;
        const Integer q = floor_div(t(i, j), t(j, j));
        t.row(i) -= q * t.row(j);
        if (t(i, j) != 0) done = false;
      }
      if (done) break;
    }
    if (t(j, j) < 0) t.row(j) *= Integer(-1);
    for (Eigen::Index i = 0; i < j; ++i) {
      const Integer q = floor_div(t(i, j), t(j, j));
      if (q != 0) t.row(i) -= q * t.row(j);
    }
  }
  return t;
}

UnimodularMatrix complete_primitive(const Vec<Integer>& a) {
  const Eigen::Index d = a.size();
  if (d == 0) throw std::invalid_argument("complete_primitive needs a nonempty vector");
  Integer g = 0;
  for (Eigen::Index i = 0; i < d; ++i) g = gcd(g, a[i]);
  if (g == 0) throw std::invalid_argument("complete_primitive needs a nonzero vector");
  if (g != 1) throw std::invalid_argument("complete_primitive needs a primitive vector");

  Eigen::Index p = 0;
  while (a[p] == 0) ++p;
  ZMat m = ZMat::Zero(d, d);
  m.col(0) = a;
  for (Eigen::Index j = 0, c = 1; j < d; ++j)
    if (j != p) m(j, c++) = 1;
  // U m = T with U unimodular, so m T^{-1} = U^{-1}; its first column is
  // a / T(0,0) = a because T(0,0) = gcd(a) = 1.
  const ZMat t = hermite_normal_form(m);
  const RMat b = to_rational_matrix(m) * *exact_inverse(to_rational_matrix(t));
  return UnimodularMatrix(to_integer_matrix(b));
}

}  // namespace toreq
