#include "toreq/point_set.hpp"

#include <stdexcept>

namespace toreq {

PointSet PointSet::exact(Eigen::Index dim, std::vector<RVec> points) {
  for (const auto& p : points) {
    if (p.size() != dim) throw std::invalid_argument("point dimension mismatch");
    for (Eigen::Index i = 0; i < dim; ++i)
      if (p[i] < 0 || p[i] >= 1) throw std::invalid_argument("coordinate outside [0,1)");
  }
  PointSet s;
  s.dim_ = dim;
  s.exact_ = true;
  s.rational_ = std::move(points);
  return s;
}

PointSet PointSet::floating(Eigen::Index dim, std::vector<Vec<double>> points) {
  for (const auto& p : points) {
    if (p.size() != dim) throw std::invalid_argument("point dimension mismatch");
    for (Eigen::Index i = 0; i < dim; ++i)
      if (!(p[i] >= 0.0 && p[i] < 1.0)) throw std::invalid_argument("coordinate outside [0,1)");
  }
  PointSet s;
  s.dim_ = dim;
  s.exact_ = false;
  s.floating_ = std::move(points);
  return s;
}

PointSet PointSet::equispaced(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("equispaced set needs n >= 1");
  std::vector<RVec> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    RVec p(1);
    p[0] = Rational(i, n);
    pts.push_back(std::move(p));
  }
  return exact(1, std::move(pts));
}

const std::vector<RVec>& PointSet::rational_points() const {
  if (!exact_) throw std::logic_error("point set carries floating coordinates");
  return rational_;
}

std::vector<Vec<double>> PointSet::double_points() const {
  if (!exact_) return floating_;
  std::vector<Vec<double>> out;
  out.reserve(rational_.size());
  for (const auto& p : rational_) out.push_back(to_double(p));
  return out;
}

PointSet PointSet::repeated(int times) const {
  PointSet s = *this;
  for (int t = 1; t < times; ++t) {
    if (exact_)
      s.rational_.insert(s.rational_.end(), rational_.begin(), rational_.end());
    else
      s.floating_.insert(s.floating_.end(), floating_.begin(), floating_.end());
  }
  return s;
}

}  // namespace toreq
