#include "toreq/heights.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "toreq/errors.hpp"
#include "toreq/quadrature.hpp"

namespace toreq {

namespace {

void require_plane(const TorsionPoint& omega) {
  if (omega.dim() != 2) throw std::invalid_argument("heights need a torsion point of the plane torus");
  if (omega.is_identity()) throw std::invalid_argument("heights are undefined at the identity");
}

// The three distances at the angle pair (a/N, b/N), computed from reduced
// integer phases so that large orders keep full accuracy.
std::array<double, 3> distances(std::int64_t a, std::int64_t b, std::int64_t N) {
  auto chord = [N](std::int64_t t) {
    t %= N;
    if (t < 0) t += N;
    return 2.0 * std::abs(std::sin(std::numbers::pi * static_cast<double>(t) / static_cast<double>(N)));
  };
  return {chord(a), chord(b), chord(b - a)};
}

}  // namespace

double zeta3() {
  // sum_{n<=N} n^-3 + tail, tail = 1/(2N^2) - 1/(2N^3) + 1/(4N^4) + O(N^-6) (Euler-Maclaurin).
  constexpr long N = 100000;
  CompensatedSum acc;
  for (long n = N; n >= 1; --n) {
    const double x = static_cast<double>(n);
    acc.add(1.0 / (x * x * x));
  }
  const double x = static_cast<double>(N);
  acc.add(1.0 / (2.0 * x * x) - 1.0 / (2.0 * x * x * x) + 1.0 / (4.0 * x * x * x * x));
  return acc.value();
}

double height_limit() {
  static const double value = 2.0 * zeta3() / (3.0 * std::numbers::pi * std::numbers::pi / 6.0);
  return value;
}

std::array<std::complex<double>, 3> intersection_point(const TorsionPoint& omega) {
  require_plane(omega);
  const auto& c = omega.scaled_angles();
  const std::int64_t N = omega.order();
  const std::complex<double> w1inv = unit_root(-c[0], N), w2inv = unit_root(-c[1], N);
  std::array<std::complex<double>, 3> p{w2inv - w1inv, 1.0 - w2inv, w1inv - 1.0};
  // Both linear forms vanish: x + y + z = 0 and x + w1^{-1} y + w2^{-1} z = 0.
  const double scale = std::abs(p[0]) + std::abs(p[1]) + std::abs(p[2]);
  if (std::abs(p[0] + p[1] + p[2]) > 1e-12 * scale || std::abs(p[0] + w1inv * p[1] + w2inv * p[2]) > 1e-12 * scale)
    throw std::logic_error("intersection point fails the defining equations");
  return p;
}

double archimedean_height(const TorsionPoint& omega) {
  require_plane(omega);
  const auto& c = omega.scaled_angles();
  const std::int64_t N = omega.order();
  CompensatedSum acc;
  std::int64_t count = 0;
  for (std::int64_t k = 1; k <= N; ++k) {
    if (gcd64(k, N) != 1) continue;
    const auto a = static_cast<std::int64_t>((static_cast<__int128>(k) * c[0]) % N);
    const auto b = static_cast<std::int64_t>((static_cast<__int128>(k) * c[1]) % N);
    const auto dist = distances(a, b, N);
    const double m = std::max({dist[0], dist[1], dist[2]});
    if (m == 0.0) throw ComputationError("degenerate conjugate: all three distances vanish");
    acc.add(std::log(m));
    ++count;
  }
  return acc.value() / static_cast<double>(count);
}

double nonarchimedean_height(std::int64_t order) {
  if (order < 2) return 0.0;
  std::int64_t p = 2;
  while (p * p <= order && order % p != 0) ++p;
  if (order % p != 0) p = order;  // order is prime
  std::int64_t rest = order, pe1 = 1;
  while (rest % p == 0) {
    rest /= p;
    pe1 *= p;
  }
  if (rest != 1) return 0.0;
  pe1 /= p;  // p^{e-1}
  return -std::log(static_cast<double>(p)) / (static_cast<double>(pe1) * static_cast<double>(p - 1));
}

HeightReport total_height(const TorsionPoint& omega) {
  HeightReport r;
  r.order = omega.order();
  r.delta = strictness_degree(omega);
  r.h_arch = archimedean_height(omega);
  r.h_nonarch = nonarchimedean_height(r.order);
  r.h_total = r.h_arch + r.h_nonarch;
  r.target_gap = std::abs(r.h_total - height_limit());
  return r;
}

LaurentPolynomial partition_binomial(int b) {
  switch (b) {
    case 1: return LaurentPolynomial::parse(2, "T1 - 1");
    case 2: return LaurentPolynomial::parse(2, "T2 - 1");
    case 3: return LaurentPolynomial::parse(2, "T1 - T2");
    default: throw std::invalid_argument("binomial index must be 1, 2 or 3");
  }
}

const std::vector<PartitionTriangle>& triangle_partition() {
  static const std::vector<PartitionTriangle> parts = [] {
    struct Raw {
      const char* label;
      int v[6];
      int binomial;
    };
    // Vertices in units of 1/6. The binomial is the one attaining the max
    // inside the triangle, checked by dominant_binomial in the tests.
    const Raw raw[] = {
        {"11", {3, 0, 0, 0, 4, 2}, 1}, {"31", {3, 0, 6, 0, 4, 2}, 3}, {"21", {6, 0, 4, 2, 6, 3}, 3},
        {"22", {6, 3, 4, 2, 6, 6}, 2}, {"32", {4, 2, 6, 6, 3, 3}, 2}, {"12", {4, 2, 0, 0, 3, 3}, 1},
        {"33", {3, 3, 0, 0, 2, 4}, 2}, {"23", {0, 0, 2, 4, 0, 3}, 2}, {"24", {0, 3, 2, 4, 0, 6}, 3},
        {"34", {0, 6, 2, 4, 3, 6}, 3}, {"13", {6, 6, 2, 4, 3, 6}, 1}, {"14", {2, 4, 3, 3, 6, 6}, 1},
    };
    std::vector<PartitionTriangle> out;
    for (const auto& r : raw) {
      std::vector<RVec> vs;
      for (int i = 0; i < 3; ++i) {
        RVec v(2);
        v << Rational(r.v[2 * i], 6), Rational(r.v[2 * i + 1], 6);
        vs.push_back(v);
      }
      out.push_back({r.label, Polytope::from_vertices(vs), r.binomial});
    }
    return out;
  }();
  return parts;
}

int dominant_binomial(const Vec<double>& x, double* margin) {
  const std::complex<double> z1 = std::polar(1.0, 2 * std::numbers::pi * x[0]);
  const std::complex<double> z2 = std::polar(1.0, 2 * std::numbers::pi * x[1]);
  const double d[3] = {std::abs(z1 - 1.0), std::abs(z2 - 1.0), std::abs(z1 - z2)};
  int best = 0;
  for (int i = 1; i < 3; ++i)
    if (d[i] > d[best]) best = i;
  if (margin) {
    double second = 0.0;
    for (int i = 0; i < 3; ++i)
      if (i != best) second = std::max(second, d[i]);
    *margin = (d[best] - second) / std::max(d[best], 1e-300);
  }
  return best + 1;
}

HeightDecomposition height_decomposition(const TorsionPoint& omega) {
  require_plane(omega);
  HeightDecomposition out;
  const auto& parts = triangle_partition();
  std::array<CompensatedSum, 12> acc;
  std::size_t n = 0;
  for (const auto& w : galois_orbit(omega)) {
    ++n;
    bool on_boundary = false;
    for (std::size_t t = 0; t < parts.size(); ++t) {
      if (!parts[t].triangle.contains(w.angles())) continue;
      if (!parts[t].triangle.contains_strict(w.angles())) {
        on_boundary = true;
        continue;
      }
      acc[t].add(std::log(std::abs(evaluate_angles(partition_binomial(parts[t].binomial), w.angles()))));
    }
    if (on_boundary) {
      ++out.boundary_hits;
      // Attribute the point to the first closed triangle holding it so the
      // sum still covers every orbit angle once.
      bool inside_some = false;
      for (std::size_t t = 0; t < parts.size() && !inside_some; ++t) inside_some = parts[t].triangle.contains_strict(w.angles());
      if (!inside_some)
        for (std::size_t t = 0; t < parts.size(); ++t)
          if (parts[t].triangle.contains(w.angles())) {
            acc[t].add(std::log(std::abs(evaluate_angles(partition_binomial(parts[t].binomial), w.angles()))));
            break;
          }
    }
  }
  out.clean = out.boundary_hits == 0;
  CompensatedSum total;
  for (std::size_t t = 0; t < 12; ++t) {
    out.per_triangle[t] = acc[t].value() / static_cast<double>(n);
    total.add(out.per_triangle[t]);
  }
  out.sum = total.value();
  return out;
}

std::vector<HeightRow> height_convergence_experiment(const std::vector<TorsionPoint>& sequence) {
  std::vector<HeightRow> rows;
  // kappa = 1/(2^61 5^5) for this application.
  const double kappa = 1.0 / (std::ldexp(1.0, 61) * 3125.0);
  for (const auto& w : sequence) {
    HeightRow row;
    row.report = total_height(w);
    if (!rows.empty() && row.report.delta <= rows.back().report.delta)
      throw std::invalid_argument("height experiment needs strictly increasing delta");
    row.split = height_decomposition(w);
    row.kappa_shape = std::exp(-kappa * std::log(static_cast<double>(row.report.delta)));
    rows.push_back(row);
  }
  return rows;
}

std::vector<std::int64_t> primes_between(std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> out;
  for (std::int64_t p = std::max<std::int64_t>(2, lo); p <= hi; ++p) {
    bool prime = true;
    for (std::int64_t q = 2; q * q <= p && prime; ++q) prime = p % q != 0;
    if (prime) out.push_back(p);
  }
  return out;
}

std::vector<TorsionPoint> golden_sweep(std::int64_t lo, std::int64_t hi, double ratio) {
  std::vector<TorsionPoint> out;
  for (auto p : primes_between(lo, hi)) {
    const auto a = static_cast<std::int64_t>(std::llround(ratio * static_cast<double>(p)));
    out.push_back(make_torsion({Rational(1, p), Rational(a % p, p)}));
  }
  return out;
}

std::vector<TorsionPoint> strict_records(const std::vector<TorsionPoint>& points) {
  std::vector<TorsionPoint> out;
  std::int64_t best = 0;
  for (const auto& w : points) {
    const auto d = strictness_degree(w);
    if (d > best) {
      best = d;
      out.push_back(w);
    }
  }
  return out;
}

std::string height_csv(const std::vector<HeightRow>& rows, int precision) {
  std::ostringstream os;
  os.precision(precision);
  os << "order,delta,h_arch,h_nonarch,h_total,gap,split_sum,boundary_hits,kappa_shape";
  for (const auto& t : triangle_partition()) os << ",omega_" << t.label;
  os << '\n';
  for (const auto& r : rows) {
    os << r.report.order << ',' << r.report.delta << ',' << r.report.h_arch << ',' << r.report.h_nonarch << ','
       << r.report.h_total << ',' << r.report.target_gap << ',' << r.split.sum << ',' << r.split.boundary_hits << ','
       << r.kappa_shape;
    for (double v : r.split.per_triangle) os << ',' << v;
    os << '\n';
  }
  return os.str();
}

}  // namespace toreq
