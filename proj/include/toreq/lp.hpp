#pragma once

#include "toreq/rational.hpp"

namespace toreq {

struct LpResult {
  enum class Status { optimal, infeasible, unbounded };
  Status status = Status::infeasible;
  Rational value;
  RVec x;
};

/// Exact two-phase simplex: maximize c.x subject to A x <= b, x >= 0.
/// Bland's rule on both entering and leaving choices, so it cannot cycle.
LpResult simplex_maximize(const RMat& A, const RVec& b, const RVec& c);

}  // namespace toreq
