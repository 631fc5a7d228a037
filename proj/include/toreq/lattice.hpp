#pragma once

// Unimodular integer matrices and primitive-vector completion.

#include "toreq/rational.hpp"

namespace toreq {

class UnimodularMatrix {
 public:
  /// Throws std::invalid_argument unless the matrix is square with det = +-1.
  explicit UnimodularMatrix(ZMat entries);

  const ZMat& entries() const { return entries_; }
  Eigen::Index dim() const { return entries_.rows(); }
  int determinant() const { return det_; }
  /// Max-norm of the entries.
  Integer norm() const { return max_norm(entries_); }
  /// Exact inverse, again unimodular.
  UnimodularMatrix inverse() const;

 private:
  ZMat entries_;
  int det_ = 1;
};

struct InverseNormCheck {
  Integer exact_norm;  ///< |A^{-1}|
  Integer bound;       ///< d^{2d-2} |A|^{d-1}
  bool ok = false;
};

InverseNormCheck inverse_norm_check(const UnimodularMatrix& a);

/// Unimodular A with first column a and |A| <= 2^{max(0, d-2)} |a|, built
/// from the Hermite normal form of [a, e_j (j != p)] for a pivot a_p != 0.
/// Throws std::invalid_argument for zero or non-primitive a.
UnimodularMatrix complete_primitive(const Vec<Integer>& a);

/// Row-style Hermite normal form: returns T = U * m, upper triangular with
/// positive diagonal and 0 <= T(i, j) < T(j, j) above the diagonal. The
/// input must be square and nonsingular.
ZMat hermite_normal_form(const ZMat& m);

}  // namespace toreq
