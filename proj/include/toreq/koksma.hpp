#pragma once

// Koksma-type error bounds for averages over the points of a set that fall in
// a polytope, and the equidistribution error of log|P| on Galois orbits.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "toreq/errors.hpp"
#include "toreq/laurent.hpp"
#include "toreq/point_set.hpp"
#include "toreq/polytope.hpp"
#include "toreq/quadrature.hpp"
#include "toreq/torus.hpp"

namespace toreq {

using RealFunction = std::function<double(const Vec<double>&)>;

struct ModulusEstimate {
  double value = 0.0;
  /// Always true: sampling can only under-estimate the supremum.
  bool lower_bound = true;
  std::size_t pairs = 0;
};

/// Sup of |f(x) - f(y)| over seeded pairs in [0,1]^d with |x - y|_max <= t.
/// Half the pairs sit at the extreme displacement t * (+-1, ..., +-1).
ModulusEstimate modulus_estimate(const RealFunction& f, Eigen::Index d, double t, std::size_t pairs = 20000,
                                 std::uint64_t seed = 7);

/// (1 + 2^{d+1}) * rho_at.
double hypercube_koksma_bound(double rho_at, Eigen::Index d);

/// Geometric inputs of the polytope bound. The surface area is the upper end
/// of its enclosure, so the bound stays conservative.
struct PolytopeStats {
  Eigen::Index d = 0;
  double inradius = 0.0;
  std::size_t facets = 0;
  double diameter = 0.0;
  double surface_area = 0.0;
};

PolytopeStats polytope_stats(const Polytope& p);

struct KoksmaBoundReport {
  double rho_term = 0.0;
  double inradius_term = 0.0;
  double isotropic_term = 0.0;
  double shell_term = 0.0;
  double total = 0.0;
  double D = 0.0;
  double M = 0.0;
  double rho_at = 0.0;
  bool analytic_modulus = true;  ///< false when rho_at came from sampling
  PolytopeStats stats;
};

/// total = (1 + 2^{d+1}) rho_at + M [ (1 + 2^{d+1}) D^{1/(2d+2)} / inradius
///         + (4d sqrt d + 1) D^{1/d} facets + 2 diam S D^{1/(2d+2)} / sqrt d ].
/// rho_at is the modulus of continuity of f at D^{1/(d+1)}.
/// Throws std::invalid_argument for D outside [0, 1] or negative M, rho_at.
KoksmaBoundReport polytope_koksma_bound(const PolytopeStats& stats, double D, double M, double rho_at,
                                        bool analytic_modulus = true);
KoksmaBoundReport polytope_koksma_bound(const Polytope& p, double D, double M, double rho_at,
                                        bool analytic_modulus = true);

/// (1/n) * sum of f over the points lying in the closed polytope.
double polytope_average(const PointSet& points, const Polytope& p, const RealFunction& f);

/// sum_j a_j cos(2 pi <k_j, x>) + b_j sin(2 pi <k_j, x>).
struct TrigPolynomial {
  std::vector<IVec> frequencies;
  std::vector<double> cos_coeffs;
  std::vector<double> sin_coeffs;

  double operator()(const Vec<double>& x) const;
  /// sup |f| <= sum |a_j| + |b_j|.
  double sup_bound() const;
  /// Max-norm Lipschitz constant 2 pi sum (|a_j| + |b_j|) |k_j|_1.
  double lipschitz() const;
  static TrigPolynomial random(Eigen::Index d, int terms, int max_frequency, std::uint64_t seed);
};

enum class BoundaryPolicy {
  Error,   ///< reject orbit angles on the polytope boundary
  Closed,  ///< count them as inside (closed membership)
};

struct EquidistResult {
  double error = 0.0;
  double lhs_sum = 0.0;
  double integral = 0.0;
  QuadratureReport integral_report;
  std::size_t n = 0;
  std::size_t count_in_polytope = 0;
  std::size_t boundary_hits = 0;
  OrbitZeroCheck zero_check;
};

/// |(1/n) sum_{x_i in Delta} log|P(e(x_i))| - integral over Delta of log|P(e(x))||.
/// Throws ComputationError when P vanishes on the orbit, or when an angle lies
/// on the boundary under BoundaryPolicy::Error.
EquidistResult equidist_error(const LaurentPolynomial& p, const Polytope& region, const TorsionPoint& omega,
                              const QmcConfig& config = {}, BoundaryPolicy policy = BoundaryPolicy::Error);

/// Same, with a precomputed integral (used by experiments over many omega).
EquidistResult equidist_error(const LaurentPolynomial& p, const Polytope& region, const TorsionPoint& omega,
                              const QuadratureReport& integral, BoundaryPolicy policy = BoundaryPolicy::Error);

struct ConvergenceRow {
  std::int64_t order = 0;
  std::int64_t delta = 0;
  std::size_t n = 0;
  std::size_t count_in_polytope = 0;
  double lhs_sum = 0.0;
  double integral = 0.0;
  double error = 0.0;
  double D = 0.0;
  bool D_exact = true;
  double koksma_total = 0.0;
  double kappa_shape = 0.0;
};

struct ConvergenceOptions {
  QmcConfig quadrature;
  BoundaryPolicy policy = BoundaryPolicy::Error;
  double epsilon0 = 0.5;
  /// Truncation level of log_r|P| for the Koksma diagnostic column.
  double koksma_r = 1.0 / 16;
};

/// One row per omega. The Koksma column bounds the log_r|P| average for the
/// fixed r in the options (a diagnostic, not a bound on the error column);
/// kappa_shape is delta^{-kappa}. Throws std::invalid_argument unless delta
/// increases strictly along the sequence.
std::vector<ConvergenceRow> convergence_experiment(const LaurentPolynomial& p, const Polytope& region,
                                                   const std::vector<TorsionPoint>& sequence,
                                                   const ConvergenceOptions& options = {});

std::string convergence_csv(const std::vector<ConvergenceRow>& rows, int precision = 12);

}  // namespace toreq
