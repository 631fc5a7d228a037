#pragma once

// Exact rational polytopes in R^d (d <= 4). Vertices and facets are both kept;
// halfspaces use outward primitive integer normals: <normal, x> <= offset.

#include <cstddef>
#include <optional>
#include <vector>

#include "toreq/rational.hpp"

namespace toreq {

inline constexpr Eigen::Index kMaxPolytopeDim = 4;

struct Halfspace {
  RVec normal;
  Rational offset;

  Rational slack(const RVec& x) const { return offset - normal.dot(x); }
};

using Simplex = std::vector<std::size_t>;  ///< indices into Polytope::vertices()

class Polytope {
 public:
  /// Convex hull of `points`. Throws std::invalid_argument on empty input,
  /// mixed dimensions, or ambient dimension above kMaxPolytopeDim.
  static Polytope from_vertices(std::vector<RVec> points);

  Eigen::Index ambient_dim() const { return ambient_dim_; }
  /// Affine dimension of the hull.
  Eigen::Index dimension() const { return dimension_; }
  bool is_full_dimensional() const { return dimension_ == ambient_dim_; }

  const std::vector<RVec>& vertices() const { return vertices_; }
  /// Facets for full-dimensional polytopes; otherwise the facets inside the
  /// affine hull plus one pair of opposite halfspaces per defining equation.
  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
  /// Vertex indices on each facet (full-dimensional case only).
  const std::vector<std::vector<std::size_t>>& facet_vertices() const { return facet_vertices_; }
  std::size_t facet_count() const { return facet_vertices_.size(); }

  bool in_unit_box() const;

  /// Closed membership.
  bool contains(const RVec& x) const;
  /// Membership in the interior (always false for lower-dimensional hulls).
  bool contains_strict(const RVec& x) const;
  bool on_boundary(const RVec& x) const { return contains(x) && !contains_strict(x); }
  /// Closed membership for floating points (used by samplers only).
  bool contains(const Vec<double>& x, double slack = 0.0) const;

  /// Full-dimensional simplices covering the polytope with disjoint interiors.
  std::vector<Simplex> triangulation() const;
  /// Simplices of dimension d-1 covering facet `f`.
  std::vector<Simplex> facet_triangulation(std::size_t f) const;

 private:
  Eigen::Index ambient_dim_ = 0;
  Eigen::Index dimension_ = 0;
  std::vector<RVec> vertices_;
  std::vector<Halfspace> halfspaces_;
  std::vector<std::vector<std::size_t>> facet_vertices_;

  std::vector<Simplex> triangulate_face(const std::vector<std::size_t>& face, Eigen::Index k) const;
  Eigen::Index affine_rank(const std::vector<std::size_t>& ids) const;
};

/// Exact Lebesgue d-volume; zero for lower-dimensional hulls.
Rational volume(const Polytope& p);

/// Max-norm diameter, attained at a pair of vertices.
Rational diameter(const Polytope& p);

/// Two-sided rational enclosure of a real quantity.
struct Enclosure {
  Rational lower;
  Rational upper;
  double estimate = 0.0;
};

/// Sum of the (d-1)-volumes of the facets. Each facet contributes
/// R * sqrt(|u|_2^2) with R rational, so only the square roots are enclosed.
Enclosure surface_area(const Polytope& p);

/// Enclosure of q * sqrt(n) for rational q >= 0 and integer n >= 0.
Enclosure sqrt_enclosure(const Rational& q, const Integer& n);

struct Inball {
  Rational radius;
  RVec center;
};

/// Largest max-norm cube [c - r, c + r]^d inside the polytope, via the exact
/// LP  max r  s.t.  <u_j, c> + r |u_j|_1 <= c_j. Among all optimal centers the
/// lexicographically smallest is returned.
Inball inradius_and_center(const Polytope& p);

struct ShrinkResult {
  RVec center;
  Rational epsilon;
  Polytope inner;
  /// One truncated pyramid conv(F_i u phi(F_i)) per facet F_i, same order as the facets.
  std::vector<Polytope> shell_pieces;
};

/// phi_eps(x) = x_c + (1 - eps)(x - x_c) applied to the polytope.
RVec shrink_point(const RVec& x, const RVec& center, const Rational& epsilon);
ShrinkResult shrink(const Polytope& p, const Rational& epsilon);

struct ShellVolumeBound {
  Rational exact;      ///< vol(P) - vol(P_eps)
  Enclosure bound;     ///< eps * S(P) * diam(P) / sqrt(d)
  bool holds = false;  ///< exact <= bound.lower, decided exactly
};

ShellVolumeBound shell_volume_bound(const Polytope& p, const Rational& epsilon);

/// Continuous approximation of the indicator of P: 1 on P_eps, 0 outside P,
/// affine on every shell piece.
class ContinuousCharacteristic {
 public:
  ContinuousCharacteristic(const Polytope& p, const Rational& epsilon);

  Rational operator()(const RVec& y) const;
  double operator()(const Vec<double>& y) const;

  /// Index of the shell piece (= facet) whose cone contains y, if y lies in
  /// P but outside the interior of P_eps.
  std::optional<std::size_t> shell_piece(const RVec& y) const;

  const Polytope& polytope() const { return polytope_; }
  const ShrinkResult& shrunk() const { return shrink_; }
  const Rational& epsilon() const { return epsilon_; }

 private:
  Polytope polytope_;
  Rational epsilon_;
  ShrinkResult shrink_;
  std::vector<Rational> center_slack_;  ///< offset_j - <u_j, x_c>

  // Smallest lambda with x_c + lambda (y - x_c) on the boundary, and its facet.
  std::pair<Rational, std::size_t> exit_parameter(const RVec& y) const;
};

Rational continuous_characteristic(const Polytope& p, const Rational& epsilon, const RVec& y);

}  // namespace toreq
