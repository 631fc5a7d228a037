#include "toreq/lp.hpp"

#include <algorithm>
#include <stdexcept>

namespace toreq {

namespace {

// Dictionary form: x_{basic[i]} = rhs[i] - sum_j a(i,j) x_{nonbasic[j]},
// objective z = value + sum_j obj[j] x_{nonbasic[j]}.
struct Dictionary {
  RMat a;
  RVec rhs;
  RVec obj;
  Rational value{0};
  std::vector<int> basic;
  std::vector<int> nonbasic;

  void pivot(Eigen::Index leave, Eigen::Index enter) {
    const Rational piv = a(leave, enter);
    const Eigen::Index m = a.rows(), n = a.cols();
    // Solve row `leave` for the entering variable.
    rhs[leave] /= piv;
    for (Eigen::Index j = 0; j < n; ++j)
      if (j != enter) a(leave, j) /= piv;
    a(leave, enter) = Rational(1) / piv;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (i == leave || a(i, enter) == 0) continue;
      const Rational f = a(i, enter);
      rhs[i] -= f * rhs[leave];
      for (Eigen::Index j = 0; j < n; ++j)
        if (j != enter) a(i, j) -= f * a(leave, j);
      a(i, enter) = -f * a(leave, enter);
    }
    if (obj[enter] != 0) {
      const Rational f = obj[enter];
      value += f * rhs[leave];
      for (Eigen::Index j = 0; j < n; ++j)
        if (j != enter) obj[j] -= f * a(leave, j);
      obj[enter] = -f * a(leave, enter);
    }
    std::swap(basic[static_cast<std::size_t>(leave)], nonbasic[static_cast<std::size_t>(enter)]);
  }

  // Returns false when unbounded.
  bool optimize() {
    while (true) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < obj.size(); ++j)
        if (obj[j] > 0 && (enter < 0 || nonbasic[static_cast<std::size_t>(j)] <
                                            nonbasic[static_cast<std::size_t>(enter)]))
          enter = j;
      if (enter < 0) return true;
      Eigen::Index leave = -1;
      Rational best;
      for (Eigen::Index i = 0; i < a.rows(); ++i) {
        if (a(i, enter) <= 0) continue;
        Rational ratio = rhs[i] / a(i, enter);
        if (leave < 0 || ratio < best ||
            (ratio == best &&
             basic[static_cast<std::size_t>(i)] < basic[static_cast<std::size_t>(leave)])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpResult simplex_maximize(const RMat& A, const RVec& b, const RVec& c) {
  const Eigen::Index m = A.rows(), n = A.cols();
  if (b.size() != m || c.size() != n) throw std::invalid_argument("LP dimension mismatch");

  Dictionary dict;
  dict.basic.resize(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) dict.basic[static_cast<std::size_t>(i)] = static_cast<int>(n + i);

  Eigen::Index min_row = -1;
  for (Eigen::Index i = 0; i < m; ++i)
    if (b[i] < 0 && (min_row < 0 || b[i] < b[min_row])) min_row = i;

  if (min_row < 0) {
    dict.a = A;
    dict.rhs = b;
    dict.obj = c;
    for (Eigen::Index j = 0; j < n; ++j) dict.nonbasic.push_back(static_cast<int>(j));
  } else {
    // Phase one: auxiliary variable x_aux (index n + m) with column -1.
    const int aux = static_cast<int>(n + m);
    dict.a.resize(m, n + 1);
    dict.a.leftCols(n) = A;
    for (Eigen::Index i = 0; i < m; ++i) dict.a(i, n) = Rational(-1);
    dict.rhs = b;
    dict.obj = RVec::Zero(n + 1);
    dict.obj[n] = Rational(-1);
    for (Eigen::Index j = 0; j < n; ++j) dict.nonbasic.push_back(static_cast<int>(j));
    dict.nonbasic.push_back(aux);
    dict.pivot(min_row, n);
    dict.optimize();
    if (dict.value < 0) return {LpResult::Status::infeasible, Rational(0), RVec()};

    auto basic_pos = std::find(dict.basic.begin(), dict.basic.end(), aux);
    if (basic_pos != dict.basic.end()) {
      Eigen::Index row = basic_pos - dict.basic.begin();
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < dict.a.cols(); ++j)
        if (dict.a(row, j) != 0 && (enter < 0 || dict.nonbasic[static_cast<std::size_t>(j)] <
                                                     dict.nonbasic[static_cast<std::size_t>(enter)]))
          enter = j;
      dict.pivot(row, enter);
    }
    // Drop the auxiliary column and restore the true objective.
    Eigen::Index aux_col = std::find(dict.nonbasic.begin(), dict.nonbasic.end(), aux) -
                           dict.nonbasic.begin();
    RMat reduced(m, n);
    std::vector<int> nonbasic;
    for (Eigen::Index j = 0, k = 0; j < dict.a.cols(); ++j) {
      if (j == aux_col) continue;
      reduced.col(k++) = dict.a.col(j);
      nonbasic.push_back(dict.nonbasic[static_cast<std::size_t>(j)]);
    }
    dict.a = reduced;
    dict.nonbasic = nonbasic;
    dict.value = 0;
    dict.obj = RVec::Zero(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      if (c[j] == 0) continue;
      auto nb = std::find(dict.nonbasic.begin(), dict.nonbasic.end(), static_cast<int>(j));
      if (nb != dict.nonbasic.end()) {
        dict.obj[nb - dict.nonbasic.begin()] += c[j];
        continue;
      }
      Eigen::Index row = std::find(dict.basic.begin(), dict.basic.end(), static_cast<int>(j)) -
                         dict.basic.begin();
      dict.value += c[j] * dict.rhs[row];
      for (Eigen::Index k = 0; k < n; ++k) dict.obj[k] -= c[j] * dict.a(row, k);
    }
  }

  if (!dict.optimize()) return {LpResult::Status::unbounded, Rational(0), RVec()};

  LpResult result;
  result.status = LpResult::Status::optimal;
  result.value = dict.value;
  result.x = RVec::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i) {
    int var = dict.basic[static_cast<std::size_t>(i)];
    if (var < n) result.x[var] = dict.rhs[i];
  }
  return result;
}

}  // namespace toreq
