#pragma once

// Box discrepancy of finite point sets in [0,1)^d.
//
// The supremum over half-open boxes [a, b) is not attained in general. It is
// the maximum of two limits over boxes whose faces sit on point coordinates
// (or on 0 and 1):
//   closed boxes [a, b]   ->  count/n - vol   (b approached from above)
//   open boxes   (a, b)   ->  vol - count/n   (a approached from above)
// A single point therefore has D = 1.

#include <cstdint>
#include <optional>

#include "toreq/point_set.hpp"
#include "toreq/rational.hpp"

namespace toreq {

enum class DiscrepancyMode {
  Auto,      ///< exact within the size limits, otherwise estimate
  Exact,     ///< exact or std::length_error
  Estimate,  ///< always sample
};

struct DiscrepancyOptions {
  DiscrepancyMode mode = DiscrepancyMode::Auto;
  /// Largest n handled exactly, per dimension (index 1..3).
  std::size_t exact_limit_d1 = 1'000'000;
  std::size_t exact_limit_d2 = 2000;
  std::size_t exact_limit_d3 = 60;
  /// Random boxes tried in estimate mode.
  std::size_t estimate_samples = 200'000;
  /// Random convex sets tried for the isotropic lower bound.
  std::size_t isotropic_trials = 200;
  std::uint64_t seed = 0x5eed;
};

struct WitnessBox {
  Vec<double> lower;
  Vec<double> upper;
  bool closed = true;  ///< closed [a,b] (excess of points) or open (a,b) (deficit)
};

struct DiscrepancyReport {
  double D = 0.0;
  std::optional<Rational> D_exact;  ///< present for rational point sets in exact mode
  bool exact = true;                ///< false: estimate mode, D is only a lower bound
  WitnessBox witness;
  double J_lower = 0.0;
  double J_upper = 0.0;
};

/// Exact supremum over anchored boxes when n and d are within the exact-mode
/// limits, otherwise a sampled lower bound flagged with exact = false.
/// J_lower / J_upper are left at D and (4d sqrt d + 1) D^{1/d}; call
/// isotropic_bounds for the randomized lower bound.
DiscrepancyReport box_discrepancy(const PointSet& points, const DiscrepancyOptions& options = {});

struct IsotropicBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Sandwich for the isotropic discrepancy J: the lower bound is the best
/// deviation over D and a seeded family of convex hulls (subsets of the
/// points and random polytopes); the upper bound is (4d sqrt d + 1) D^{1/d}.
IsotropicBounds isotropic_bounds(const PointSet& points, const DiscrepancyReport& report,
                                 const DiscrepancyOptions& options = {});
IsotropicBounds isotropic_bounds(const PointSet& points, const DiscrepancyOptions& options = {});

double isotropic_upper(double D, Eigen::Index d);

/// (log 2 delta)^{d-1} log log (3 delta) / delta^{1/2}. The implied constant
/// of the orbit discrepancy estimate is unknown, so this is a trend shape only.
double orbit_discrepancy_shape(std::int64_t delta, Eigen::Index d);

}  // namespace toreq
