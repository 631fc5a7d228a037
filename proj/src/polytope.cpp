#include "toreq/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "toreq/linalg.hpp"
#include "toreq/lp.hpp"

namespace toreq {

namespace {

// Calls visit(indices) for every k-subset of {0..n-1} in lexicographic order.
template <typename Visitor>
void for_each_subset(std::size_t n, std::size_t k, Visitor&& visit) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    visit(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Scales a rational vector to the primitive integer vector on the same ray.
RVec primitive(const RVec& v) {
  Integer l = 1;
  for (Eigen::Index i = 0; i < v.size(); ++i) l = lcm(l, denominator(v[i]));
  Integer g = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) g = gcd(g, numerator(v[i] * Rational(l)));
  if (g == 0) return v;
  RVec out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = v[i] * Rational(l) / Rational(g);
  return out;
}

Integer factorial(Eigen::Index n) {
  Integer f = 1;
  for (Eigen::Index i = 2; i <= n; ++i) f *= static_cast<unsigned>(i);
  return f;
}

RMat difference_rows(const std::vector<RVec>& pts, const std::vector<std::size_t>& ids) {
  const Eigen::Index d = pts[ids[0]].size();
  RMat m(static_cast<Eigen::Index>(ids.size()) - 1, d);
  for (std::size_t i = 1; i < ids.size(); ++i)
    m.row(static_cast<Eigen::Index>(i) - 1) = (pts[ids[i]] - pts[ids[0]]).transpose();
  return m;
}

struct FullHull {
  std::vector<Halfspace> facets;
  std::vector<std::vector<std::size_t>> facet_points;  // indices into the input
};

// Facets of the hull of full-dimensional `pts` by testing every affinely
// independent d-subset as a supporting hyperplane.
FullHull full_dimensional_hull(const std::vector<RVec>& pts) {
  const Eigen::Index d = pts[0].size();
  FullHull hull;
  std::set<std::vector<std::size_t>> seen;
  for_each_subset(pts.size(), static_cast<std::size_t>(d), [&](const std::vector<std::size_t>& ids) {
    RVec normal;
    if (d == 1) {
      normal = RVec::Ones(1);
    } else {
      RMat ns = null_space(difference_rows(pts, ids));
      if (ns.cols() != 1) return;
      normal = ns.col(0);
    }
    const Rational offset = normal.dot(pts[ids[0]]);
    bool any_pos = false, any_neg = false;
    std::vector<std::size_t> on;
    for (std::size_t j = 0; j < pts.size(); ++j) {
      Rational s = normal.dot(pts[j]) - offset;
      if (s > 0) any_pos = true;
      else if (s < 0) any_neg = true;
      else on.push_back(j);
    }
    if (any_pos && any_neg) return;
    if (!seen.insert(on).second) return;
    if (any_pos) normal = -normal;
    normal = primitive(normal);
    hull.facets.push_back({normal, normal.dot(pts[ids[0]])});
    hull.facet_points.push_back(std::move(on));
  });
  return hull;
}

std::vector<RVec> dedupe(std::vector<RVec> points) {
  std::vector<RVec> out;
  for (auto& p : points) {
    bool dup = false;
    for (const auto& q : out)
      if (q == p) { dup = true; break; }
    if (!dup) out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

Polytope Polytope::from_vertices(std::vector<RVec> points) {
  if (points.empty()) throw std::invalid_argument("polytope needs at least one point");
  const Eigen::Index d = points[0].size();
  if (d < 1 || d > kMaxPolytopeDim)
    throw std::invalid_argument("polytope ambient dimension must be in [1, 4]");
  for (const auto& p : points)
    if (p.size() != d) throw std::invalid_argument("polytope points have mixed dimensions");

  std::vector<RVec> pts = dedupe(std::move(points));
  Polytope poly;
  poly.ambient_dim_ = d;

  std::vector<std::size_t> all(pts.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  RMat diffs = pts.size() > 1 ? difference_rows(pts, all) : RMat(0, d);
  RMat reduced = diffs;
  auto pivots = row_reduce(reduced);
  poly.dimension_ = static_cast<Eigen::Index>(pivots.size());

  if (poly.dimension_ == d) {
    FullHull hull = full_dimensional_hull(pts);
    // A point is a vertex iff the normals of the facets through it span R^d.
    std::vector<std::size_t> new_index(pts.size(), static_cast<std::size_t>(-1));
    for (std::size_t j = 0; j < pts.size(); ++j) {
      std::vector<RVec> normals;
      for (std::size_t f = 0; f < hull.facets.size(); ++f)
        if (std::find(hull.facet_points[f].begin(), hull.facet_points[f].end(), j) !=
            hull.facet_points[f].end())
          normals.push_back(hull.facets[f].normal);
      if (static_cast<Eigen::Index>(normals.size()) < d) continue;
      RMat n(static_cast<Eigen::Index>(normals.size()), d);
      for (std::size_t r = 0; r < normals.size(); ++r) n.row(static_cast<Eigen::Index>(r)) = normals[r].transpose();
      if (exact_rank(n) < d) continue;
      new_index[j] = poly.vertices_.size();
      poly.vertices_.push_back(pts[j]);
    }
    for (std::size_t f = 0; f < hull.facets.size(); ++f) {
      std::vector<std::size_t> fv;
      for (auto j : hull.facet_points[f])
        if (new_index[j] != static_cast<std::size_t>(-1)) fv.push_back(new_index[j]);
      std::sort(fv.begin(), fv.end());
      poly.facet_vertices_.push_back(std::move(fv));
      poly.halfspaces_.push_back(hull.facets[f]);
    }
    return poly;
  }

  // Lower-dimensional: hull in an injective coordinate projection, then lift.
  const Eigen::Index r = poly.dimension_;
  std::vector<RVec> projected;
  if (r == 0) {
    poly.vertices_.push_back(pts[0]);
  } else {
    for (const auto& p : pts) {
      RVec q(r);
      for (Eigen::Index i = 0; i < r; ++i) q[i] = p[pivots[static_cast<std::size_t>(i)]];
      projected.push_back(q);
    }
    Polytope low = from_vertices(projected);
    for (const auto& v : low.vertices())
      for (std::size_t j = 0; j < projected.size(); ++j)
        if (projected[j] == v) { poly.vertices_.push_back(pts[j]); break; }
    for (const auto& h : low.halfspaces()) {
      RVec normal = RVec::Zero(d);
      for (Eigen::Index i = 0; i < r; ++i) normal[pivots[static_cast<std::size_t>(i)]] = h.normal[i];
      poly.halfspaces_.push_back({normal, h.offset});
    }
  }
  // Equations <w, x> = <w, p0> cutting out the affine hull.
  RMat eq = diffs.rows() > 0 ? null_space(diffs) : RMat(RMat::Identity(d, d));
  for (Eigen::Index k = 0; k < eq.cols(); ++k) {
    RVec w = primitive(eq.col(k));
    Rational c = w.dot(pts[0]);
    poly.halfspaces_.push_back({w, c});
    poly.halfspaces_.push_back({RVec(-w), Rational(-c)});
  }
  return poly;
}

bool Polytope::in_unit_box() const {
  for (const auto& v : vertices_)
    for (Eigen::Index i = 0; i < v.size(); ++i)
      if (v[i] < 0 || v[i] > 1) return false;
  return true;
}

bool Polytope::contains(const RVec& x) const {
  if (x.size() != ambient_dim_) throw std::invalid_argument("point dimension mismatch");
  for (const auto& h : halfspaces_)
    if (h.slack(x) < 0) return false;
  return true;
}

bool Polytope::contains_strict(const RVec& x) const {
  if (!is_full_dimensional()) return false;
  if (x.size() != ambient_dim_) throw std::invalid_argument("point dimension mismatch");
  for (const auto& h : halfspaces_)
    if (h.slack(x) <= 0) return false;
  return true;
}

bool Polytope::contains(const Vec<double>& x, double slack) const {
  for (const auto& h : halfspaces_) {
    double s = to_double(h.offset);
    for (Eigen::Index i = 0; i < x.size(); ++i) s -= to_double(h.normal[i]) * x[i];
    if (s < -slack) return false;
  }
  return true;
}

Eigen::Index Polytope::affine_rank(const std::vector<std::size_t>& ids) const {
  if (ids.size() <= 1) return 0;
  return exact_rank(difference_rows(vertices_, ids));
}

std::vector<Simplex> Polytope::triangulate_face(const std::vector<std::size_t>& face,
                                                Eigen::Index k) const {
  if (k == 0) return {Simplex{face[0]}};
  const std::size_t apex = face[0];
  std::set<std::vector<std::size_t>> subfacets;
  for (const auto& fv : facet_vertices_) {
    std::vector<std::size_t> meet;
    std::set_intersection(face.begin(), face.end(), fv.begin(), fv.end(), std::back_inserter(meet));
    if (meet.size() < static_cast<std::size_t>(k) || meet == face) continue;
    if (std::binary_search(meet.begin(), meet.end(), apex)) continue;
    if (affine_rank(meet) != k - 1) continue;
    subfacets.insert(meet);
  }
  std::vector<Simplex> out;
  for (const auto& g : subfacets)
    for (auto s : triangulate_face(g, k - 1)) {
      s.push_back(apex);
      out.push_back(std::move(s));
    }
  return out;
}

std::vector<Simplex> Polytope::triangulation() const {
  if (!is_full_dimensional()) throw std::domain_error("triangulation needs a full-dimensional polytope");
  std::vector<std::size_t> all(vertices_.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  if (ambient_dim_ == 1) return {Simplex{0, 1}};
  // The whole polytope is not a facet, so triangulate_face's facet scan works
  // unchanged at the top level.
  return triangulate_face(all, ambient_dim_);
}

std::vector<Simplex> Polytope::facet_triangulation(std::size_t f) const {
  return triangulate_face(facet_vertices_.at(f), ambient_dim_ - 1);
}

Rational volume(const Polytope& p) {
  if (!p.is_full_dimensional()) return Rational(0);
  const Eigen::Index d = p.ambient_dim();
  Rational total = 0;
  for (const auto& s : p.triangulation()) {
    RMat m(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      m.row(i) = (p.vertices()[s[static_cast<std::size_t>(i) + 1]] - p.vertices()[s[0]]).transpose();
    total += abs(exact_determinant(m));
  }
  return total / Rational(factorial(d));
}

Rational diameter(const Polytope& p) {
  Rational best = 0;
  const auto& v = p.vertices();
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) best = std::max(best, max_norm(v[i] - v[j]));
  return best;
}

Enclosure sqrt_enclosure(const Rational& q, const Integer& n) {
  if (q < 0 || n < 0) throw std::invalid_argument("sqrt_enclosure needs nonnegative inputs");
  const Rational nn(n);
  double s = std::sqrt(n.convert_to<double>());
  double lo = s, hi = s;
  while (lo > 0 && exact_rational(lo) * exact_rational(lo) > nn) lo = std::nextafter(lo, 0.0);
  while (exact_rational(hi) * exact_rational(hi) < nn) hi = std::nextafter(hi, HUGE_VAL);
  return {q * exact_rational(lo), q * exact_rational(hi), to_double(q) * s};
}

Enclosure surface_area(const Polytope& p) {
  if (!p.is_full_dimensional()) throw std::domain_error("surface area needs a full-dimensional polytope");
  const Eigen::Index d = p.ambient_dim();
  Enclosure total{Rational(0), Rational(0), 0.0};
  for (std::size_t f = 0; f < p.facet_count(); ++f) {
    const RVec& u = p.halfspaces()[f].normal;
    Eigen::Index drop = 0;
    for (Eigen::Index i = 1; i < d; ++i)
      if (abs(u[i]) > abs(u[drop])) drop = i;
    // (d-1)-volume of the projection that forgets coordinate `drop`.
    Rational projected = 0;
    for (const auto& s : p.facet_triangulation(f)) {
      RMat m(d - 1, d - 1);
      for (Eigen::Index r = 0; r + 1 < d; ++r) {
        RVec diff = p.vertices()[s[static_cast<std::size_t>(r) + 1]] - p.vertices()[s[0]];
        for (Eigen::Index c = 0, k = 0; c < d; ++c)
          if (c != drop) m(r, k++) = diff[c];
      }
      projected += d == 1 ? Rational(1) : abs(exact_determinant(m));
    }
    projected /= Rational(factorial(d - 1));
    Integer norm2 = 0;
    for (Eigen::Index i = 0; i < d; ++i) norm2 += numerator(u[i] * u[i]);
    Enclosure e = sqrt_enclosure(projected / abs(u[drop]), norm2);
    total.lower += e.lower;
    total.upper += e.upper;
    total.estimate += e.estimate;
  }
  return total;
}

Inball inradius_and_center(const Polytope& p) {
  if (!p.is_full_dimensional()) throw std::domain_error("inradius needs a full-dimensional polytope");
  const Eigen::Index d = p.ambient_dim();
  const auto& hs = p.halfspaces();
  const Eigen::Index m = static_cast<Eigen::Index>(hs.size());

  // Shift x = lb + z so that all LP variables are nonnegative.
  RVec lb = p.vertices()[0];
  for (const auto& v : p.vertices())
    for (Eigen::Index i = 0; i < d; ++i) lb[i] = std::min(lb[i], v[i]);

  // Variables (z_1..z_d, r).
  RMat a(m, d + 1);
  RVec b(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const auto& h = hs[static_cast<std::size_t>(j)];
    Rational l1 = 0;
    for (Eigen::Index i = 0; i < d; ++i) {
      a(j, i) = h.normal[i];
      l1 += abs(h.normal[i]);
    }
    a(j, d) = l1;
    b[j] = h.offset - h.normal.dot(lb);
  }
  RVec objective = RVec::Zero(d + 1);
  objective[d] = 1;
  LpResult best = simplex_maximize(a, b, objective);
  if (best.status != LpResult::Status::optimal) throw std::logic_error("inradius LP did not reach an optimum");
  const Rational radius = best.value;

  // Lexicographic tie-break: minimize z_1, then z_2, ... at the optimal radius.
  RMat fixed_a = a;
  RVec fixed_b = b;
  auto append_row = [&](const RVec& row, const Rational& rhs) {
    fixed_a.conservativeResize(fixed_a.rows() + 1, Eigen::NoChange);
    fixed_a.row(fixed_a.rows() - 1) = row.transpose();
    fixed_b.conservativeResize(fixed_b.size() + 1);
    fixed_b[fixed_b.size() - 1] = rhs;
  };
  RVec neg_r = RVec::Zero(d + 1);
  neg_r[d] = -1;
  append_row(neg_r, -radius);
  RVec center(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    RVec obj = RVec::Zero(d + 1);
    obj[i] = -1;
    LpResult lex = simplex_maximize(fixed_a, fixed_b, obj);
    if (lex.status != LpResult::Status::optimal) throw std::logic_error("center LP did not reach an optimum");
    const Rational zi = -lex.value;
    RVec row = RVec::Zero(d + 1);
    row[i] = 1;
    append_row(row, zi);
    row[i] = -1;
    append_row(row, -zi);
    center[i] = lb[i] + zi;
  }
  return {radius, center};
}

RVec shrink_point(const RVec& x, const RVec& center, const Rational& epsilon) {
  return center + (Rational(1) - epsilon) * (x - center);
}

ShrinkResult shrink(const Polytope& p, const Rational& epsilon) {
  if (!(epsilon > 0 && epsilon < 1)) throw std::invalid_argument("shrink needs 0 < epsilon < 1");
  if (!p.is_full_dimensional()) throw std::domain_error("shrink needs a full-dimensional polytope");
  const Inball ball = inradius_and_center(p);
  std::vector<RVec> inner_pts;
  for (const auto& v : p.vertices()) inner_pts.push_back(shrink_point(v, ball.center, epsilon));
  Polytope inner = Polytope::from_vertices(inner_pts);

  std::vector<Polytope> pieces;
  for (std::size_t f = 0; f < p.facet_count(); ++f) {
    std::vector<RVec> pts;
    for (auto i : p.facet_vertices()[f]) pts.push_back(p.vertices()[i]);
    for (auto i : p.facet_vertices()[f]) pts.push_back(inner_pts[i]);
    // phi_eps(F) lies in a hyperplane parallel to F.
    const Halfspace& h = p.halfspaces()[f];
    const Rational level = h.normal.dot(inner_pts[p.facet_vertices()[f][0]]);
    for (auto i : p.facet_vertices()[f])
      if (h.normal.dot(inner_pts[i]) != level) throw std::logic_error("shrunk facet is not parallel");
    pieces.push_back(Polytope::from_vertices(std::move(pts)));
  }
  return {ball.center, epsilon, std::move(inner), std::move(pieces)};
}

ShellVolumeBound shell_volume_bound(const Polytope& p, const Rational& epsilon) {
  ShrinkResult s = shrink(p, epsilon);
  ShellVolumeBound out;
  out.exact = volume(p) - volume(s.inner);
  const Enclosure area = surface_area(p);
  const Rational scale = epsilon * diameter(p);
  // Divide by sqrt(d): multiply the enclosure by the enclosure of 1/sqrt(d) = sqrt(d)/d.
  const Enclosure inv_sqrt_d = sqrt_enclosure(Rational(1, static_cast<long>(p.ambient_dim())),
                                              Integer(p.ambient_dim()));
  out.bound.lower = scale * area.lower * inv_sqrt_d.lower;
  out.bound.upper = scale * area.upper * inv_sqrt_d.upper;
  out.bound.estimate = to_double(scale) * area.estimate / std::sqrt(static_cast<double>(p.ambient_dim()));
  out.holds = out.exact <= out.bound.lower;
  return out;
}

ContinuousCharacteristic::ContinuousCharacteristic(const Polytope& p, const Rational& epsilon)
    : polytope_(p), epsilon_(epsilon), shrink_(shrink(p, epsilon)) {
  for (const auto& h : polytope_.halfspaces()) center_slack_.push_back(h.slack(shrink_.center));
}

std::pair<Rational, std::size_t> ContinuousCharacteristic::exit_parameter(const RVec& y) const {
  const RVec dir = y - shrink_.center;
  std::optional<Rational> best;
  std::size_t arg = 0;
  const auto& hs = polytope_.halfspaces();
  for (std::size_t j = 0; j < hs.size(); ++j) {
    Rational t = hs[j].normal.dot(dir);
    if (t <= 0) continue;
    Rational lambda = center_slack_[j] / t;
    if (!best || lambda < *best) {
      best = lambda;
      arg = j;
    }
  }
  if (!best) throw std::logic_error("ray from the center does not leave the polytope");
  return {*best, arg};
}

Rational ContinuousCharacteristic::operator()(const RVec& y) const {
  if (!polytope_.contains(y)) return Rational(0);
  if (shrink_.inner.contains(y)) return Rational(1);
  const Rational lambda = exit_parameter(y).first;
  const Rational delta = Rational(1) - Rational(1) / lambda;
  return delta / epsilon_;
}

double ContinuousCharacteristic::operator()(const Vec<double>& y) const {
  RVec q(y.size());
  for (Eigen::Index i = 0; i < y.size(); ++i) q[i] = exact_rational(y[i]);
  return to_double((*this)(q));
}

std::optional<std::size_t> ContinuousCharacteristic::shell_piece(const RVec& y) const {
  if (!polytope_.contains(y) || shrink_.inner.contains_strict(y)) return std::nullopt;
  return exit_parameter(y).second;
}

Rational continuous_characteristic(const Polytope& p, const Rational& epsilon, const RVec& y) {
  return ContinuousCharacteristic(p, epsilon)(y);
}

}  // namespace toreq
