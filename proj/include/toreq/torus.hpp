#pragma once

// Torsion points of the split torus, encoded by their rational angle vectors:
// the point e(q) = (exp(2 pi i q_1), ..., exp(2 pi i q_d)) with q in [0,1)^d.

#include <complex>
#include <cstdint>
#include <vector>

#include "toreq/point_set.hpp"
#include "toreq/rational.hpp"

namespace toreq {

/// Integer exponent vector a, acting on torsion points by omega^a.
using LatticeVector = IVec;

class TorsionPoint {
 public:
  /// Reduces every angle mod 1 and computes the order (lcm of denominators).
  explicit TorsionPoint(const RVec& angles);

  Eigen::Index dim() const { return angles_.size(); }
  const RVec& angles() const { return angles_; }
  std::int64_t order() const { return order_; }
  bool is_identity() const { return order_ == 1; }

  /// omega^k, i.e. the angle vector k*q mod 1.
  TorsionPoint power(std::int64_t k) const;

  /// Angles scaled by the order: integers c_i with q_i = c_i / order.
  const std::vector<std::int64_t>& scaled_angles() const { return scaled_; }

  Vec<double> angles_double() const { return to_double(angles_); }

  friend bool operator==(const TorsionPoint& a, const TorsionPoint& b) {
    return a.angles_ == b.angles_;
  }

 private:
  RVec angles_;
  std::int64_t order_ = 1;
  std::vector<std::int64_t> scaled_;
};

TorsionPoint make_torsion(const std::vector<Rational>& angles);

/// True iff omega^a = 1, i.e. <a, q> is an integer.
bool subgroup_member(const TorsionPoint& omega, const LatticeVector& a);

struct StrictnessResult {
  std::int64_t degree = 0;
  LatticeVector witness;  ///< lexicographically smallest minimizer in its shell
};

/// Minimal max-norm of a nonzero a with omega^a = 1, found by scanning the
/// boundaries of the cubes [-r, r]^d for r = 1, 2, ...
StrictnessResult strictness(const TorsionPoint& omega);
std::int64_t strictness_degree(const TorsionPoint& omega);

std::int64_t euler_phi(std::int64_t n);
std::int64_t gcd64(std::int64_t a, std::int64_t b);

/// {omega^k : gcd(k, ord) = 1}, ascending in k.
std::vector<TorsionPoint> galois_orbit(const TorsionPoint& omega);

/// Angle vectors of the Galois orbit, same order as galois_orbit().
PointSet orbit_angles(const TorsionPoint& omega);

/// Componentwise exp(2 pi i x_j).
std::vector<std::complex<double>> embed(const Vec<double>& x);

/// exp(2 pi i p/q) computed from the reduced fraction, accurate for large q.
std::complex<double> unit_root(std::int64_t p, std::int64_t q);

}  // namespace toreq
