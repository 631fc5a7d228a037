#include "toreq/torus.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace toreq {

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

TorsionPoint::TorsionPoint(const RVec& angles) : angles_(angles.size()) {
  Integer order = 1;
  for (Eigen::Index i = 0; i < angles.size(); ++i) {
    angles_[i] = frac(angles[i]);
    order = lcm(order, denominator(angles_[i]));
  }
  if (order > Integer(std::numeric_limits<std::int64_t>::max() / 4))
    throw std::overflow_error("torsion order exceeds 62 bits");
  order_ = order.convert_to<std::int64_t>();
  scaled_.resize(static_cast<std::size_t>(angles_.size()));
  for (Eigen::Index i = 0; i < angles_.size(); ++i)
    scaled_[static_cast<std::size_t>(i)] =
        (numerator(angles_[i]) * (order / denominator(angles_[i]))).convert_to<std::int64_t>();
}

TorsionPoint TorsionPoint::power(std::int64_t k) const {
  RVec q(angles_.size());
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    // (k * c_i mod ord) / ord, kept in 128 bits to avoid overflow.
    __int128 c = static_cast<__int128>(k) * scaled_[static_cast<std::size_t>(i)];
    __int128 r = c % order_;
    if (r < 0) r += order_;
    q[i] = Rational(static_cast<std::int64_t>(r), order_);
  }
  return TorsionPoint(q);
}

TorsionPoint make_torsion(const std::vector<Rational>& angles) {
  if (angles.empty()) throw std::invalid_argument("torsion point needs at least one angle");
  return TorsionPoint(to_rational(angles));
}

bool subgroup_member(const TorsionPoint& omega, const LatticeVector& a) {
  if (a.size() != omega.dim()) throw std::invalid_argument("lattice vector dimension mismatch");
  const auto& c = omega.scaled_angles();
  __int128 acc = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    acc += static_cast<__int128>(a[i]) * c[static_cast<std::size_t>(i)];
    acc %= omega.order();
  }
  return acc == 0;
}

namespace {

// Visits every a in [-r, r]^d with |a|_inf = r in lexicographic order; stops
// when the visitor returns true.
template <typename Visitor>
bool visit_shell(Eigen::Index d, std::int64_t r, Visitor&& visit) {
  LatticeVector a = LatticeVector::Constant(d, -r);
  while (true) {
    bool on_shell = false;
    for (Eigen::Index i = 0; i < d; ++i)
      if (a[i] == r || a[i] == -r) on_shell = true;
    if (on_shell && visit(a)) return true;
    Eigen::Index i = d - 1;
    while (i >= 0 && a[i] == r) {
      a[i] = -r;
      --i;
    }
    if (i < 0) return false;
    ++a[i];
  }
}

}  // namespace

StrictnessResult strictness(const TorsionPoint& omega) {
  const Eigen::Index d = omega.dim();
  for (std::int64_t r = 1;; ++r) {
    StrictnessResult result;
    bool found = visit_shell(d, r, [&](const LatticeVector& a) {
      if (!subgroup_member(omega, a)) return false;
      result.degree = r;
      result.witness = a;
      return true;
    });
    if (found) return result;
    // (order, 0, ..., 0) always qualifies, so r never passes the order.
    if (r > omega.order()) throw std::logic_error("strictness scan overran the order");
  }
}

std::int64_t strictness_degree(const TorsionPoint& omega) { return strictness(omega).degree; }

std::int64_t euler_phi(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("euler_phi needs n >= 1");
  std::int64_t result = n;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

std::vector<TorsionPoint> galois_orbit(const TorsionPoint& omega) {
  std::vector<TorsionPoint> orbit;
  const std::int64_t n = omega.order();
  orbit.reserve(static_cast<std::size_t>(euler_phi(n)));
  for (std::int64_t k = 1; k <= n; ++k)
    if (gcd64(k, n) == 1) orbit.push_back(omega.power(k));
  return orbit;
}

PointSet orbit_angles(const TorsionPoint& omega) {
  std::vector<RVec> pts;
  for (const auto& w : galois_orbit(omega)) pts.push_back(w.angles());
  return PointSet::exact(omega.dim(), std::move(pts));
}

std::vector<std::complex<double>> embed(const Vec<double>& x) {
  std::vector<std::complex<double>> z;
  z.reserve(static_cast<std::size_t>(x.size()));
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    double t = 2.0 * std::numbers::pi * x[i];
    z.emplace_back(std::cos(t), std::sin(t));
  }
  return z;
}

std::complex<double> unit_root(std::int64_t p, std::int64_t q) {
  if (q <= 0) throw std::invalid_argument("unit_root needs q > 0");
  p %= q;
  if (p < 0) p += q;
  // Reduce to an angle in [-1/2, 1/2] turns so sin/cos arguments stay small.
  long double turns = static_cast<long double>(p) / static_cast<long double>(q);
  if (2 * p > q) turns -= 1.0L;
  long double t = 2.0L * std::numbers::pi_v<long double> * turns;
  return {static_cast<double>(std::cos(t)), static_cast<double>(std::sin(t))};
}

}  // namespace toreq
