#pragma once

// Heights of the intersection point of the line x + y + z = 0 with its
// translate x + w1^{-1} y + w2^{-1} z = 0 by a torsion point w of the plane
// torus, and the twelve-triangle partition of the unit square on which
// log max(|w2 - w1|, |w2 - 1|, |w1 - 1|) is log |P| for a fixed binomial P.

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "toreq/laurent.hpp"
#include "toreq/polytope.hpp"
#include "toreq/torus.hpp"

namespace toreq {

/// Limit of the heights, 2 zeta(3) / (3 zeta(2)).
double height_limit();
/// zeta(3) by direct summation with an integral tail correction (error < 1e-12).
double zeta3();

/// (w2^{-1} - w1^{-1}, 1 - w2^{-1}, w1^{-1} - 1). Throws std::invalid_argument
/// for the identity or d != 2.
std::array<std::complex<double>, 3> intersection_point(const TorsionPoint& omega);

/// Average over the Galois orbit of log max(|w2^k - w1^k|, |w2^k - 1|, |w1^k - 1|).
double archimedean_height(const TorsionPoint& omega);

/// -log p / (p^{e-1} (p - 1)) when the order is p^e, else 0.
double nonarchimedean_height(std::int64_t order);

struct HeightReport {
  std::int64_t order = 0;
  std::int64_t delta = 0;
  double h_arch = 0.0;
  double h_nonarch = 0.0;
  double h_total = 0.0;
  double target_gap = 0.0;
};

HeightReport total_height(const TorsionPoint& omega);

struct PartitionTriangle {
  std::string label;   ///< Omega_ij as in the reference figure, e.g. "11"
  Polytope triangle;
  int binomial = 0;    ///< 1: T1 - 1, 2: T2 - 1, 3: T1 - T2
};

/// Binomial number b in {1, 2, 3} as a Laurent polynomial.
LaurentPolynomial partition_binomial(int b);

/// The twelve closed triangles, vertices on the (1/6)-grid.
const std::vector<PartitionTriangle>& triangle_partition();

/// Index of the distance attaining the max at angle x (1, 2 or 3), with
/// `margin` as the relative gap to the runner-up.
int dominant_binomial(const Vec<double>& x, double* margin = nullptr);

struct HeightDecomposition {
  std::array<double, 12> per_triangle{};  ///< (1/n) sum of log|P_assigned| over orbit angles in each triangle
  double sum = 0.0;
  std::size_t boundary_hits = 0;   ///< orbit angles on some triangle boundary
  bool clean = true;               ///< no boundary hits, so the split is exact
};

/// Splits h_arch over the partition using exact membership of the rational angles.
HeightDecomposition height_decomposition(const TorsionPoint& omega);

struct HeightRow {
  HeightReport report;
  HeightDecomposition split;
  double kappa_shape = 1.0;  ///< delta^{-1/(2^61 5^5)}, indistinguishable from 1
};

/// Rows for a sequence with strictly increasing delta (std::invalid_argument otherwise).
std::vector<HeightRow> height_convergence_experiment(const std::vector<TorsionPoint>& sequence);

/// (1/p, round(ratio p)/p) for primes p in [lo, hi], ascending in p.
std::vector<TorsionPoint> golden_sweep(std::int64_t lo, std::int64_t hi, double ratio);

/// Keeps the points whose delta exceeds every earlier delta (a strict subsequence).
std::vector<TorsionPoint> strict_records(const std::vector<TorsionPoint>& points);

std::vector<std::int64_t> primes_between(std::int64_t lo, std::int64_t hi);

std::string height_csv(const std::vector<HeightRow>& rows, int precision = 12);

}  // namespace toreq
