#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "toreq/point_set.hpp"

namespace toreq::test {

/// Naive sup over half-open boxes, used as an oracle. Coordinates are k/den.
/// Each box endpoint sits on a candidate value and is either exact or
/// perturbed upward by an infinitesimal, giving the four one-sided limits
/// per axis. Returns the numerator of D over n * den^d.
inline std::int64_t naive_discrepancy_scaled(const std::vector<std::vector<std::int64_t>>& pts,
                                             std::int64_t den, int d) {
  const auto n = static_cast<std::int64_t>(pts.size());
  std::vector<std::vector<std::int64_t>> cand(d);
  for (int i = 0; i < d; ++i) {
    cand[i].push_back(0);
    cand[i].push_back(den);
    for (const auto& p : pts) cand[i].push_back(p[i]);
    std::sort(cand[i].begin(), cand[i].end());
    cand[i].erase(std::unique(cand[i].begin(), cand[i].end()), cand[i].end());
  }
  std::int64_t vol_scale = 1;
  for (int i = 0; i < d; ++i) vol_scale *= den;
  std::int64_t best = 0;
  // Box per axis: lower value/flag, upper value/flag; flag 1 = nudged up.
  std::vector<std::int64_t> lo(d), hi(d);
  std::vector<int> lof(d), hif(d);
  auto evaluate = [&] {
    std::int64_t vol = 1;
    for (int i = 0; i < d; ++i) {
      if (hi[i] < lo[i] || (hi[i] == lo[i] && hif[i] <= lof[i])) return;
      vol *= hi[i] - lo[i];
    }
    std::int64_t count = 0;
    for (const auto& p : pts) {
      bool in = true;
      for (int i = 0; i < d && in; ++i) {
        const bool above_lo = lof[i] ? p[i] > lo[i] : p[i] >= lo[i];
        const bool below_hi = hif[i] ? p[i] <= hi[i] : p[i] < hi[i];
        in = above_lo && below_hi;
      }
      count += in;
    }
    const std::int64_t dev = count * vol_scale - n * vol;
    best = std::max(best, dev < 0 ? -dev : dev);
  };
  auto rec = [&](auto&& self, int axis) -> void {
    if (axis == d) return evaluate();
    for (auto a : cand[axis])
      for (auto b : cand[axis])
        for (int fa = 0; fa < 2; ++fa)
          for (int fb = 0; fb < 2; ++fb) {
            if (fb && b == den) continue;  // boxes stay inside the cube
            lo[axis] = a;
            hi[axis] = b;
            lof[axis] = fa;
            hif[axis] = fb;
            self(self, axis + 1);
          }
  };
  rec(rec, 0);
  return best;
}

}  // namespace toreq::test
