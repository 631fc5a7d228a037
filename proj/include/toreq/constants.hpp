#pragma once

// Exact replay of the recursive construction of the decay exponent gamma(d,k)
// and the threshold constant C(d,k), plus kappa = min(gamma, 1/(64k(d+1))).

#include <string>
#include <vector>

#include "toreq/magnitude.hpp"
#include "toreq/rational.hpp"

namespace toreq {

/// How the lists defining C, C1 and C2 are resolved. The constraints these
/// constants must satisfy bound C from below, so Max is the default; Min is
/// the literal reading and is replayed alongside for auditability.
enum class CReading { Max, Min };

struct Candidate {
  std::string label;
  Magnitude value;
};

struct TraceEntry {
  long n = 0;             ///< dimension of the entry
  long m = 0;             ///< gamma(n, k^{2^m}); the final step has m = 0
  Integer k_power;        ///< k^{2^m}
  std::vector<Rational> v;  ///< v_1..v_n
  std::vector<Candidate> epsilon_candidates;
  Magnitude epsilon;
  Magnitude gamma;
  std::vector<Candidate> C_candidates;  ///< C1 and C2 already resolved
  Magnitude C;          ///< resolved by the chosen reading
  Magnitude C_min;      ///< min of C_candidates
  Magnitude C_max;      ///< max of C_candidates
};

struct ConstantsResult {
  long d = 0;
  long k = 0;
  Rational eps0;
  CReading reading = CReading::Max;
  Magnitude gamma;
  Magnitude C;
  Magnitude epsilon;
  std::vector<Rational> v;  ///< v_1..v_d of the final step
  /// Inner-loop entries in execution order, then the final step.
  std::vector<TraceEntry> trace;
  long inner_iterations = 0;
};

inline constexpr long kMaxConstantsDim = 5;

/// Throws std::invalid_argument unless 2 <= d <= kMaxConstantsDim, k >= 2
/// and 0 < eps0 < 1.
ConstantsResult gamma_C(long d, long k, const Rational& eps0, CReading reading = CReading::Max);

/// min(gamma(d,k), 1/(64k(d+1))).
Magnitude kappa(long d, long k, const Rational& eps0);
Magnitude kappa(const ConstantsResult& r);

struct EpsilonCheck {
  std::string label;
  bool holds = false;
};

/// Re-verifies epsilon <= every entry of the final minimum list.
std::vector<EpsilonCheck> verify_epsilon(const ConstantsResult& r);

/// C * max(c, deg)^C, the strictness threshold above which the convergence
/// estimate applies. Returned as a Magnitude; print its log2.
Magnitude strictness_threshold(const ConstantsResult& r, const Rational& c, const Rational& degree);

}  // namespace toreq
