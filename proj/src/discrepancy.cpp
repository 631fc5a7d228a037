#include "toreq/discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "toreq/polytope.hpp"

namespace toreq {

namespace {

using Wide = __int128;

// Coordinates mapped to ranks on each axis. `Coord` is either int64 (rational
// points scaled by the common denominator L, axis length L) or double (axis
// length 1); `Acc` carries products of n, widths and counts.
template <typename Coord, typename Acc>
struct Scanner {
  Eigen::Index d = 0;
  std::int64_t n = 0;
  Coord axis_length{};
  Acc scale{};  // axis_length^d
  std::vector<std::vector<Coord>> candidates;           // per axis, sorted, includes 0 and axis_length
  std::vector<std::vector<std::size_t>> rank;           // rank[point][axis]

  Acc best{};
  bool have_best = false;
  std::vector<std::size_t> best_lo, best_hi;
  bool best_closed = true;

  // Scratch for the innermost axis.
  std::vector<std::int64_t> closed_count, open_count;

  Scanner(const std::vector<std::vector<Coord>>& pts, Coord length) : axis_length(length) {
    n = static_cast<std::int64_t>(pts.size());
    d = static_cast<Eigen::Index>(pts[0].size());
    scale = Acc(1);
    for (Eigen::Index i = 0; i < d; ++i) scale *= Acc(axis_length);
    candidates.resize(static_cast<std::size_t>(d));
    for (std::size_t ax = 0; ax < candidates.size(); ++ax) {
      auto& c = candidates[ax];
      c.push_back(Coord(0));
      c.push_back(axis_length);
      for (const auto& p : pts) c.push_back(p[ax]);
      std::sort(c.begin(), c.end());
      c.erase(std::unique(c.begin(), c.end()), c.end());
    }
    rank.resize(pts.size(), std::vector<std::size_t>(static_cast<std::size_t>(d)));
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t ax = 0; ax < static_cast<std::size_t>(d); ++ax)
        rank[i][ax] = static_cast<std::size_t>(
            std::lower_bound(candidates[ax].begin(), candidates[ax].end(), pts[i][ax]) -
            candidates[ax].begin());
    const std::size_t m_last = candidates.back().size();
    closed_count.assign(m_last, 0);
    open_count.assign(m_last, 0);
  }

  void offer(Acc value, const std::vector<std::size_t>& lo, const std::vector<std::size_t>& hi,
             bool closed) {
    if (!have_best || value > best) {
      best = value;
      have_best = true;
      best_lo = lo;
      best_hi = hi;
      best_closed = closed;
    }
  }

  // Scans the last axis given per-rank counts of the closed and open strips
  // and the strip width product (in axis units).
  void scan_last_axis(Acc width, std::vector<std::size_t> lo, std::vector<std::size_t> hi) {
    const auto& ys = candidates.back();
    const std::size_t m = ys.size();
    const Acc nw = Acc(n) * width;
    lo.push_back(0);
    hi.push_back(0);

    // Closed boxes: max over i <= j of A_j - B_i.
    Acc cum = 0;
    Acc min_b{}, best_val{};
    std::size_t min_i = 0, bi = 0, bj = 0;
    for (std::size_t j = 0; j < m; ++j) {
      const Acc y = nw * Acc(ys[j]);
      const Acc b = cum * scale - y;
      if (j == 0 || b < min_b) {
        min_b = b;
        min_i = j;
      }
      cum += Acc(closed_count[j]);
      const Acc v = cum * scale - y - min_b;
      if (j == 0 || v > best_val) {
        best_val = v;
        bi = min_i;
        bj = j;
      }
    }
    lo.back() = bi;
    hi.back() = bj;
    offer(best_val, lo, hi, true);

    // Open boxes: max over i < j of A'_j - B'_i.
    cum = 0;
    bool any = false;
    for (std::size_t j = 0; j < m; ++j) {
      const Acc y = nw * Acc(ys[j]);
      if (j > 0) {
        const Acc v = y - cum * scale - min_b;
        if (!any || v > best_val) {
          best_val = v;
          bi = min_i;
          bj = j;
          any = true;
        }
      }
      cum += Acc(open_count[j]);
      const Acc b = y - cum * scale;
      if (j == 0 || b < min_b) {
        min_b = b;
        min_i = j;
      }
    }
    if (any) {
      lo.back() = bi;
      hi.back() = bj;
      offer(best_val, lo, hi, false);
    }
  }

  void run() {
    const std::size_t strip_dims = static_cast<std::size_t>(d) - 1;
    if (strip_dims == 0) {
      std::fill(closed_count.begin(), closed_count.end(), 0);
      for (const auto& r : rank) ++closed_count[r[0]];
      open_count = closed_count;
      scan_last_axis(Acc(1), {}, {});
      return;
    }
    if (strip_dims == 1) {
      run_two_dimensional();
      return;
    }
    std::vector<std::size_t> lo(strip_dims), hi(strip_dims);
    recurse(0, lo, hi);
  }

  // d = 2: grow the x-strip one column at a time.
  void run_two_dimensional() {
    const auto& xs = candidates[0];
    const std::size_t mx = xs.size(), my = candidates[1].size();
    std::vector<std::vector<std::size_t>> column(mx);
    for (const auto& r : rank) column[r[0]].push_back(r[1]);
    std::vector<std::int64_t> at_a(my, 0);
    for (std::size_t ia = 0; ia < mx; ++ia) {
      std::fill(closed_count.begin(), closed_count.end(), 0);
      std::fill(at_a.begin(), at_a.end(), 0);
      for (auto y : column[ia]) ++at_a[y];
      for (std::size_t ib = ia; ib < mx; ++ib) {
        for (auto y : column[ib]) ++closed_count[y];
        for (std::size_t y = 0; y < my; ++y) open_count[y] = closed_count[y] - at_a[y];
        if (ib != ia)
          for (auto y : column[ib]) --open_count[y];
        else
          std::fill(open_count.begin(), open_count.end(), 0);
        scan_last_axis(Acc(xs[ib] - xs[ia]), {ia}, {ib});
      }
    }
  }

  // General case: enumerate intervals on the strip axes, then count.
  void recurse(std::size_t axis, std::vector<std::size_t>& lo, std::vector<std::size_t>& hi) {
    if (axis + 1 == static_cast<std::size_t>(d)) {
      std::fill(closed_count.begin(), closed_count.end(), 0);
      std::fill(open_count.begin(), open_count.end(), 0);
      Acc width = 1;
      for (std::size_t a = 0; a < axis; ++a) width *= Acc(candidates[a][hi[a]] - candidates[a][lo[a]]);
      for (const auto& r : rank) {
        bool in_closed = true, in_open = true;
        for (std::size_t a = 0; a < axis; ++a) {
          if (r[a] < lo[a] || r[a] > hi[a]) in_closed = in_open = false;
          if (r[a] <= lo[a] || r[a] >= hi[a]) in_open = false;
        }
        if (in_closed) ++closed_count[r[axis]];
        if (in_open) ++open_count[r[axis]];
      }
      scan_last_axis(width, lo, hi);
      return;
    }
    const std::size_t m = candidates[axis].size();
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i; j < m; ++j) {
        lo[axis] = i;
        hi[axis] = j;
        recurse(axis + 1, lo, hi);
      }
  }

  WitnessBox witness(double unit) const {
    WitnessBox w;
    w.lower.resize(d);
    w.upper.resize(d);
    for (Eigen::Index a = 0; a < d; ++a) {
      w.lower[a] = static_cast<double>(candidates[static_cast<std::size_t>(a)][best_lo[static_cast<std::size_t>(a)]]) / unit;
      w.upper[a] = static_cast<double>(candidates[static_cast<std::size_t>(a)][best_hi[static_cast<std::size_t>(a)]]) / unit;
    }
    w.closed = best_closed;
    return w;
  }
};

std::size_t exact_limit(const DiscrepancyOptions& o, Eigen::Index d) {
  switch (d) {
    case 1: return o.exact_limit_d1;
    case 2: return o.exact_limit_d2;
    case 3: return o.exact_limit_d3;
    default: return 0;
  }
}

DiscrepancyReport finish(DiscrepancyReport r, Eigen::Index d) {
  r.J_lower = r.D;
  r.J_upper = isotropic_upper(r.D, d);
  return r;
}

// Sampled lower bound over random half-open boxes.
DiscrepancyReport estimate(const PointSet& s, const DiscrepancyOptions& o) {
  const auto pts = s.double_points();
  const Eigen::Index d = s.dim();
  const double n = static_cast<double>(pts.size());
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
  DiscrepancyReport r;
  r.exact = false;
  Vec<double> lo(d), hi(d);
  for (std::size_t t = 0; t < o.estimate_samples; ++t) {
    for (Eigen::Index a = 0; a < d; ++a) {
      // Half the endpoints snap to point coordinates, where extremes live.
      double u = unif(rng) < 0.5 ? pts[pick(rng)][a] : unif(rng);
      double v = unif(rng) < 0.5 ? pts[pick(rng)][a] : unif(rng);
      if (v < u) std::swap(u, v);
      lo[a] = u;
      hi[a] = v;
    }
    double vol = 1.0;
    for (Eigen::Index a = 0; a < d; ++a) vol *= hi[a] - lo[a];
    std::size_t count = 0;
    for (const auto& p : pts) {
      bool in = true;
      for (Eigen::Index a = 0; a < d && in; ++a) in = p[a] >= lo[a] && p[a] < hi[a];
      count += in ? 1 : 0;
    }
    double dev = std::abs(static_cast<double>(count) / n - vol);
    if (dev > r.D) {
      r.D = dev;
      r.witness = {lo, hi, static_cast<double>(count) / n > vol};
    }
  }
  return r;
}

}  // namespace

double isotropic_upper(double D, Eigen::Index d) {
  const double dd = static_cast<double>(d);
  return (4.0 * dd * std::sqrt(dd) + 1.0) * std::pow(D, 1.0 / dd);
}

DiscrepancyReport box_discrepancy(const PointSet& s, const DiscrepancyOptions& o) {
  if (s.empty()) throw std::invalid_argument("discrepancy of an empty point set");
  const Eigen::Index d = s.dim();
  const bool too_big = s.size() > exact_limit(o, d);
  if (o.mode == DiscrepancyMode::Exact && too_big)
    throw std::length_error("exact discrepancy limited to n <= " + std::to_string(exact_limit(o, d)) +
                            " in dimension " + std::to_string(d));
  if (o.mode == DiscrepancyMode::Estimate || too_big) return finish(estimate(s, o), d);

  if (s.is_exact()) {
    Integer L = 1;
    for (const auto& p : s.rational_points())
      for (Eigen::Index a = 0; a < d; ++a) L = lcm(L, denominator(p[a]));
    // Products n * L^d * count must stay inside 120 bits.
    Integer bound = Integer(static_cast<unsigned long>(s.size() + 1));
    for (Eigen::Index a = 0; a < d + 1; ++a) bound *= L;
    if (L < Integer(std::numeric_limits<std::int64_t>::max()) && msb(bound) < 120) {
      const auto len = L.convert_to<std::int64_t>();
      std::vector<std::vector<std::int64_t>> pts;
      for (const auto& p : s.rational_points()) {
        std::vector<std::int64_t> q(static_cast<std::size_t>(d));
        for (Eigen::Index a = 0; a < d; ++a)
          q[static_cast<std::size_t>(a)] = numerator(p[a] * Rational(L)).convert_to<std::int64_t>();
        pts.push_back(std::move(q));
      }
      Wide best = 0;
      WitnessBox witness;
      if (msb(bound) < 60) {
        Scanner<std::int64_t, std::int64_t> scanner(pts, len);
        scanner.run();
        best = scanner.best;
        witness = scanner.witness(static_cast<double>(len));
      } else {
        Scanner<std::int64_t, Wide> scanner(pts, len);
        scanner.run();
        best = scanner.best;
        witness = scanner.witness(static_cast<double>(len));
      }
      Integer num = 0;
      {
        // __int128 -> Integer via two 64-bit halves.
        Wide v = best;
        bool neg = v < 0;
        if (neg) v = -v;
        auto hi = static_cast<std::uint64_t>(v >> 64), lo = static_cast<std::uint64_t>(v);
        num = Integer(hi);
        num <<= 64;
        num += Integer(lo);
        if (neg) num = -num;
      }
      Integer den = Integer(static_cast<unsigned long>(s.size()));
      for (Eigen::Index a = 0; a < d; ++a) den *= L;
      DiscrepancyReport r;
      r.D_exact = Rational(num, den);
      r.D = to_double(*r.D_exact);
      r.witness = witness;
      return finish(r, d);
    }
  }
  std::vector<std::vector<double>> pts;
  for (const auto& p : s.double_points()) pts.emplace_back(p.data(), p.data() + p.size());
  Scanner<double, double> scanner(pts, 1.0);
  scanner.run();
  DiscrepancyReport r;
  r.D = scanner.best / static_cast<double>(s.size());
  r.witness = scanner.witness(1.0);
  return finish(r, d);
}

IsotropicBounds isotropic_bounds(const PointSet& s, const DiscrepancyReport& report,
                                 const DiscrepancyOptions& o) {
  const Eigen::Index d = s.dim();
  IsotropicBounds b{report.D, isotropic_upper(report.D, d)};
  if (d == 1 || !s.is_exact()) return b;

  const auto& pts = s.rational_points();
  const Rational n(static_cast<long>(pts.size()));
  std::mt19937_64 rng(o.seed ^ 0x15071c);
  std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
  std::uniform_int_distribution<int> grid(0, 64);
  std::uniform_int_distribution<int> extra(0, 4);

  auto deviation = [&](const Polytope& poly) {
    if (!poly.is_full_dimensional()) return;
    long count = 0;
    for (const auto& p : pts) count += poly.contains(p) ? 1 : 0;
    Rational closed_dev = abs(Rational(count) / n - volume(poly));
    b.lower = std::max(b.lower, to_double(closed_dev));
    long open = 0;
    for (const auto& p : pts) open += poly.contains_strict(p) ? 1 : 0;
    b.lower = std::max(b.lower, to_double(abs(Rational(open) / n - volume(poly))));
  };

  for (std::size_t t = 0; t < o.isotropic_trials; ++t) {
    std::vector<RVec> hull_pts;
    const int k = static_cast<int>(d) + 1 + extra(rng);
    for (int i = 0; i < k; ++i) {
      if (t % 2 == 0 && pts.size() > static_cast<std::size_t>(d)) {
        hull_pts.push_back(pts[pick(rng)]);
      } else {
        RVec q(d);
        for (Eigen::Index a = 0; a < d; ++a) q[a] = Rational(grid(rng), 64);
        hull_pts.push_back(q);
      }
    }
    deviation(Polytope::from_vertices(hull_pts));
  }
  b.lower = std::min(b.lower, 1.0);
  return b;
}

IsotropicBounds isotropic_bounds(const PointSet& s, const DiscrepancyOptions& o) {
  return isotropic_bounds(s, box_discrepancy(s, o), o);
}

double orbit_discrepancy_shape(std::int64_t delta, Eigen::Index d) {
  if (delta < 1) throw std::invalid_argument("orbit_discrepancy_shape needs delta >= 1");
  const double x = static_cast<double>(delta);
  return std::pow(std::log(2.0 * x), static_cast<double>(d - 1)) * std::log(std::log(3.0 * x)) /
         std::sqrt(x);
}

}  // namespace toreq
