#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "naive_discrepancy.hpp"
#include "toreq/discrepancy.hpp"
#include "toreq/torus.hpp"

using namespace toreq;

namespace {

using Grid = std::vector<std::vector<std::int64_t>>;

PointSet grid_points(const Grid& pts, std::int64_t den, int d) {
  std::vector<RVec> out;
  for (const auto& p : pts) {
    RVec v(d);
    for (int i = 0; i < d; ++i) v[i] = Rational(p[i], den);
    out.push_back(v);
  }
  return PointSet::exact(d, out);
}

Grid random_grid(std::mt19937_64& rng, int n, int d, std::int64_t den) {
  std::uniform_int_distribution<std::int64_t> u(0, den - 1);
  Grid pts(n, std::vector<std::int64_t>(d));
  for (auto& p : pts)
    for (auto& x : p) x = u(rng);
  return pts;
}

Rational naive(const Grid& pts, std::int64_t den, int d) {
  Integer scale = static_cast<std::int64_t>(pts.size());
  for (int i = 0; i < d; ++i) scale *= den;
  return Rational(Integer(test::naive_discrepancy_scaled(pts, den, d))) / Rational(scale);
}

PointSet single(std::initializer_list<Rational> xs) {
  RVec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const auto& x : xs) v[i++] = x;
  return PointSet::exact(v.size(), {v});
}

}  // namespace

TEST_CASE("one-dimensional examples") {
  for (std::int64_t n : {1, 2, 3, 8, 100, 1000}) {
    auto r = box_discrepancy(PointSet::equispaced(n));
    REQUIRE(r.D_exact);
    CHECK(*r.D_exact == Rational(1, n));
    CHECK(r.exact);
  }
  CHECK(*box_discrepancy(single({Rational(3, 7)})).D_exact == 1);
  CHECK(*box_discrepancy(single({0})).D_exact == 1);
  auto two = PointSet::exact(1, {RVec::Constant(1, Rational(1, 4)), RVec::Constant(1, Rational(3, 4))});
  auto r = box_discrepancy(two);
  CHECK(*r.D_exact == Rational(1, 2));
  CHECK(r.D == doctest::Approx(0.5));
}

TEST_CASE("grids") {
  Grid g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g.push_back({i, j});
  CHECK(*box_discrepancy(grid_points(g, 4, 2)).D_exact == Rational(7, 16));
  CHECK(naive(g, 4, 2) == Rational(7, 16));
}

TEST_CASE("exact discrepancy matches the naive oracle") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 30;
    const std::int64_t den = trial % 3 == 0 ? 8 : 97;
    auto pts = random_grid(rng, n, 1, den);
    CHECK(*box_discrepancy(grid_points(pts, den, 1)).D_exact == naive(pts, den, 1));
  }
  for (int trial = 0; trial < 16; ++trial) {
    const int n = trial < 12 ? 1 + trial * 2 : 30;
    const std::int64_t den = trial % 2 ? 6 : 53;
    auto pts = random_grid(rng, n, 2, den);
    CHECK(*box_discrepancy(grid_points(pts, den, 2)).D_exact == naive(pts, den, 2));
  }
}

TEST_CASE("orbit discrepancy matches the naive oracle") {
  for (std::int64_t p : {5, 7, 11, 13, 29, 31}) {
    auto omega = make_torsion({Rational(1, p), Rational((p * 618 + 500) / 1000, p)});
    auto pts = orbit_angles(omega);
    Grid g;
    for (const auto& x : pts.rational_points())
      g.push_back({numerator(x[0] * p).convert_to<std::int64_t>(), numerator(x[1] * p).convert_to<std::int64_t>()});
    CHECK(*box_discrepancy(pts).D_exact == naive(g, p, 2));
  }
}

TEST_CASE("invariances") {
  std::mt19937_64 rng(99);
  for (int d = 1; d <= 3; ++d) {
    auto pts = random_grid(rng, 12, d, 11);
    auto base = *box_discrepancy(grid_points(pts, 11, d)).D_exact;
    std::shuffle(pts.begin(), pts.end(), rng);
    CHECK(*box_discrepancy(grid_points(pts, 11, d)).D_exact == base);
    CHECK(*box_discrepancy(grid_points(pts, 11, d).repeated(2)).D_exact == base);
    CHECK(base >= 0);
    CHECK(base <= 1);
  }
  for (int d = 1; d <= 3; ++d) {
    Grid g(1, std::vector<std::int64_t>(d, 0));
    CHECK(*box_discrepancy(grid_points(g, 1, d)).D_exact == 1);
  }
}

TEST_CASE("three-dimensional grid") {
  Grid g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) g.push_back({i, j, k});
  CHECK(*box_discrepancy(grid_points(g, 3, 3)).D_exact == Rational(19, 27));
}

TEST_CASE("estimate mode is a lower bound") {
  std::mt19937_64 rng(17);
  auto pts = grid_points(random_grid(rng, 25, 2, 40), 40, 2);
  auto exact = box_discrepancy(pts);
  DiscrepancyOptions opts;
  opts.mode = DiscrepancyMode::Estimate;
  opts.estimate_samples = 20000;
  auto est = box_discrepancy(pts, opts);
  CHECK_FALSE(est.exact);
  CHECK_FALSE(est.D_exact.has_value());
  CHECK(est.D <= exact.D + 1e-15);
  CHECK(est.D > 0);

  opts.mode = DiscrepancyMode::Exact;
  opts.exact_limit_d2 = 10;
  CHECK_THROWS_AS(box_discrepancy(pts, opts), std::length_error);
  opts.mode = DiscrepancyMode::Auto;
  CHECK_FALSE(box_discrepancy(pts, opts).exact);
}

TEST_CASE("isotropic bounds") {
  auto eq = PointSet::equispaced(10);
  auto r = box_discrepancy(eq);
  auto iso = isotropic_bounds(eq, r);
  CHECK(iso.lower == doctest::Approx(r.D));
  CHECK(iso.upper == doctest::Approx(5.0 * 0.1));
  CHECK(isotropic_upper(1e-4, 2) == doctest::Approx((8 * std::sqrt(2.0) + 1) * 1e-2));

  auto s = single({Rational(1, 4), Rational(3, 4)});
  auto is = isotropic_bounds(s);
  CHECK(is.lower == doctest::Approx(1.0));
  CHECK(is.lower <= is.upper);

  std::mt19937_64 rng(5);
  auto pts = grid_points(random_grid(rng, 20, 2, 30), 30, 2);
  auto rep = box_discrepancy(pts);
  auto b = isotropic_bounds(pts, rep);
  CHECK(b.lower >= rep.D);
  CHECK(b.lower <= b.upper);
}

TEST_CASE("orbit discrepancy shape") {
  CHECK(orbit_discrepancy_shape(1, 1) == doctest::Approx(std::log(std::log(3.0))));
  CHECK(orbit_discrepancy_shape(1, 1) == doctest::Approx(0.0940).epsilon(1e-3));
  CHECK(orbit_discrepancy_shape(100, 2) == doctest::Approx(std::log(200.0) * std::log(std::log(300.0)) / 10));
  CHECK(std::abs(orbit_discrepancy_shape(100, 2) - 0.920) < 5e-3);
  double prev = orbit_discrepancy_shape(1000, 2);
  for (std::int64_t delta = 2000; delta <= 1'000'000; delta *= 2) {
    double cur = orbit_discrepancy_shape(delta, 2);
    CHECK(cur < prev);
    prev = cur;
  }
}
