#pragma once

// Exact dense elimination for field scalars (Rational). Eigen's decompositions
// pivot on magnitude thresholds, which is meaningless for exact arithmetic.

#include <optional>
#include <utility>

#include "toreq/rational.hpp"

namespace toreq {

/// Row-reduces `m` in place to reduced row echelon form; returns pivot columns.
template <typename Scalar>
std::vector<Eigen::Index> row_reduce(Mat<Scalar>& m) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index p = row;
    while (p < m.rows() && m(p, col) == Scalar(0)) ++p;
    if (p == m.rows()) continue;
    m.row(p).swap(m.row(row));
    Scalar inv = Scalar(1) / m(row, col);
    for (Eigen::Index j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == Scalar(0)) continue;
      Scalar f = m(i, col);
      for (Eigen::Index j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <typename Derived>
Eigen::Index exact_rank(const Eigen::MatrixBase<Derived>& m) {
  Mat<typename Derived::Scalar> work = m;
  return static_cast<Eigen::Index>(row_reduce(work).size());
}

template <typename Derived>
typename Derived::Scalar exact_determinant(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  Mat<Scalar> a = m;
  const Eigen::Index n = a.rows();
  Scalar det(1);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index p = col;
    while (p < n && a(p, col) == Scalar(0)) ++p;
    if (p == n) return Scalar(0);
    if (p != col) {
      a.row(p).swap(a.row(col));
      det = -det;
    }
    det *= a(col, col);
    for (Eigen::Index i = col + 1; i < n; ++i) {
      if (a(i, col) == Scalar(0)) continue;
      Scalar f = a(i, col) / a(col, col);
      for (Eigen::Index j = col; j < n; ++j) a(i, j) -= f * a(col, j);
    }
  }
  return det;
}

/// Exact inverse, or nullopt when singular.
template <typename Derived>
std::optional<Mat<typename Derived::Scalar>> exact_inverse(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = m.rows();
  Mat<Scalar> aug(n, 2 * n);
  aug.leftCols(n) = m;
  aug.rightCols(n).setZero();
  for (Eigen::Index i = 0; i < n; ++i) aug(i, n + i) = Scalar(1);
  auto pivots = row_reduce(aug);
  if (static_cast<Eigen::Index>(pivots.size()) < n || pivots.back() >= n) return std::nullopt;
  return Mat<Scalar>(aug.rightCols(n));
}

/// Basis of the right null space {x : m x = 0}, one vector per column.
template <typename Derived>
Mat<typename Derived::Scalar> null_space(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  Mat<Scalar> r = m;
  auto pivots = row_reduce(r);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (auto c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<Eigen::Index> free_cols;
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    if (!is_pivot[static_cast<std::size_t>(c)]) free_cols.push_back(c);
  Mat<Scalar> basis(m.cols(), static_cast<Eigen::Index>(free_cols.size()));
  basis.setZero();
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    auto kk = static_cast<Eigen::Index>(k);
    basis(free_cols[k], kk) = Scalar(1);
    for (std::size_t p = 0; p < pivots.size(); ++p)
      basis(pivots[p], kk) = -r(static_cast<Eigen::Index>(p), free_cols[k]);
  }
  return basis;
}

}  // namespace toreq
