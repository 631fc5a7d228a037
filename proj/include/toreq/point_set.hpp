#pragma once

#include <vector>

#include "toreq/rational.hpp"

namespace toreq {

/// Finite ordered list of points in [0,1)^d. Points are exact rationals when
/// they come from torsion orbits, otherwise doubles; `is_exact()` tells which.
class PointSet {
 public:
  PointSet() = default;

  /// Throws std::invalid_argument when a coordinate lies outside [0,1) or the
  /// dimensions disagree.
  static PointSet exact(Eigen::Index dim, std::vector<RVec> points);
  static PointSet floating(Eigen::Index dim, std::vector<Vec<double>> points);

  /// {i/n : i = 0..n-1}^1, used as a fixture throughout the test suite.
  static PointSet equispaced(std::int64_t n);

  Eigen::Index dim() const { return dim_; }
  std::size_t size() const { return exact_ ? rational_.size() : floating_.size(); }
  bool empty() const { return size() == 0; }
  bool is_exact() const { return exact_; }

  const std::vector<RVec>& rational_points() const;
  /// Double coordinates (converted on the fly for exact sets).
  std::vector<Vec<double>> double_points() const;

  /// Every point repeated `times` times, order preserved per copy.
  PointSet repeated(int times) const;

 private:
  Eigen::Index dim_ = 0;
  bool exact_ = true;
  std::vector<RVec> rational_;
  std::vector<Vec<double>> floating_;
};

}  // namespace toreq
