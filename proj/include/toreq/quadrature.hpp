#pragma once

// Cubature on simplices and polytopes. Unit-cube samples are pushed onto a
// simplex by the collapsed (Duffy) map, whose Jacobian becomes a weight.

#include <cstdint>
#include <functional>
#include <vector>

#include "toreq/polytope.hpp"
#include "toreq/rational.hpp"

namespace toreq {

struct QmcConfig {
  /// Requested points per shift; d = 2 rounds up to a Fibonacci number.
  std::size_t points = 1 << 13;
  /// Independent Cranley-Patterson shifts; the spread gives the error bar.
  int shifts = 8;
  std::uint64_t seed = 20240601;
  double tolerance = 1e-3;
  /// Truncation ladder r_j = 2^{-j}, j = ladder_first..ladder_last.
  int ladder_first = 4;
  int ladder_last = 20;
};

/// Base rule in [0,1)^d before shifting: equispaced for d = 1, a Fibonacci
/// lattice for d = 2, Halton for d >= 3.
std::vector<Vec<double>> qmc_base_points(Eigen::Index d, std::size_t n);

/// Cranley-Patterson shifts drawn from the config seed.
std::vector<Vec<double>> qmc_shifts(Eigen::Index d, const QmcConfig& config);

/// Map from the unit cube onto the simplex with the given vertices; `weight`
/// receives d! * Jacobian so that the cube mean of weight * f equals the
/// simplex mean of f.
Vec<double> collapse_to_simplex(const std::vector<Vec<double>>& vertices, const Vec<double>& u,
                                double& weight);

/// Simplex with volume, in floating and exact form.
struct WeightedSimplex {
  std::vector<Vec<double>> vertices;
  Rational volume;
};

std::vector<WeightedSimplex> simplices_of(const Polytope& p);

struct LadderStep {
  double r = 0.0;
  double estimate = 0.0;
};

struct QuadratureReport {
  double estimate = 0.0;
  /// Standard error across shifts.
  double sampling_error = 0.0;
  /// |last - previous| on the truncation ladder.
  double truncation_change = 0.0;
  std::vector<LadderStep> ladder;
  bool converged = false;
  std::size_t samples = 0;

  /// Combined error bar: 3 standard errors plus the last ladder change.
  double error_bar() const { return 3.0 * sampling_error + truncation_change; }
};

/// Integral over `region` of log max(r, g(x)) for the ladder of r, where g
/// is a nonnegative function (a modulus). The estimate is the ladder value
/// at which two consecutive steps agree within tolerance / 2. An empty
/// region means the unit cube, sampled directly without the collapsed map.
QuadratureReport log_ladder_integral(const std::vector<WeightedSimplex>& region,
                                     const std::function<double(const Vec<double>&)>& modulus,
                                     Eigen::Index d, const QmcConfig& config);

/// Tensor Gauss-Legendre rule of `order` nodes per axis on a simplex,
/// pulled back by the collapsed map. Exact for polynomials of total degree
/// up to 2 * order - 1 - (d - 1).
double gauss_simplex(const std::function<double(const Vec<double>&)>& f,
                     const std::vector<Vec<double>>& vertices, int order);

struct GaussReport {
  double estimate = 0.0;
  /// |rule(order) - rule(2 * order)|, used as an error bar.
  double error = 0.0;
};

/// Integral of a smooth f over a polytope via gauss_simplex on every simplex.
GaussReport gauss_polytope(const std::function<double(const Vec<double>&)>& f, const Polytope& p,
                           int order = 12);

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace toreq
