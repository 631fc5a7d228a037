#include <doctest.h>

#include <cmath>
#include <random>

#include "test_util.hpp"
#include "toreq/polytope.hpp"

using namespace toreq;
using test::rv;

TEST_CASE("hull construction") {
  auto sq = test::unit_square();
  CHECK(sq.vertices().size() == 4);
  CHECK(sq.facet_count() == 4);
  CHECK(sq.in_unit_box());

  auto tri = Polytope::from_vertices({rv({0, 0}), rv({1, 0}), rv({0, 1}), rv({Rational(1, 4), Rational(1, 4)})});
  CHECK(tri.vertices().size() == 3);
  CHECK(tri.facet_count() == 3);

  auto seg = Polytope::from_vertices({rv({0, 0}), rv({1, 1}), rv({Rational(1, 2), Rational(1, 2)})});
  CHECK(seg.dimension() == 1);
  CHECK(seg.vertices().size() == 2);
  CHECK(volume(seg) == 0);
  CHECK(diameter(seg) == 1);

  CHECK_THROWS_AS(Polytope::from_vertices({}), std::invalid_argument);
  CHECK_THROWS_AS(Polytope::from_vertices({rv({0, 0}), rv({1})}), std::invalid_argument);
  CHECK_THROWS_AS(test::unit_cube(5), std::invalid_argument);
}

TEST_CASE("hull vertices satisfy every halfspace and facets are spanned") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    auto p = test::random_polytope(rng, 2 + trial % 2);
    for (const auto& v : p.vertices())
      for (const auto& h : p.halfspaces()) CHECK(h.slack(v) >= 0);
    for (std::size_t f = 0; f < p.facet_count(); ++f) {
      CHECK(static_cast<Eigen::Index>(p.facet_vertices()[f].size()) >= p.ambient_dim());
      for (auto i : p.facet_vertices()[f]) CHECK(p.halfspaces()[f].slack(p.vertices()[i]) == 0);
    }
  }
}

TEST_CASE("metrics") {
  auto sq = test::unit_square();
  auto tri = test::standard_triangle();
  CHECK(diameter(sq) == 1);
  CHECK(diameter(tri) == 1);
  CHECK(volume(sq) == 1);
  CHECK(volume(tri) == Rational(1, 2));
  CHECK(volume(test::unit_cube(3)) == 1);

  auto s = surface_area(sq);
  CHECK(s.lower == 4);
  CHECK(s.upper == 4);
  auto t = surface_area(tri);
  CHECK(t.lower <= t.upper);
  CHECK(to_double(t.lower) <= 2 + std::sqrt(2.0));
  CHECK(to_double(t.upper) >= 2 + std::sqrt(2.0));
  CHECK(t.estimate == doctest::Approx(2 + std::sqrt(2.0)).epsilon(1e-14));
  CHECK(surface_area(test::unit_cube(3)).estimate == doctest::Approx(6.0));
  CHECK(surface_area(test::unit_cube(4)).estimate == doctest::Approx(8.0));
}

TEST_CASE("inradius examples and certificate") {
  auto b = inradius_and_center(test::unit_square());
  CHECK(b.radius == Rational(1, 2));
  CHECK(b.center == rv({Rational(1, 2), Rational(1, 2)}));

  b = inradius_and_center(test::standard_triangle());
  CHECK(b.radius == Rational(1, 4));
  CHECK(b.center == rv({Rational(1, 4), Rational(1, 4)}));

  auto rect = Polytope::from_vertices({rv({0, 0}), rv({1, 0}), rv({1, Rational(1, 2)}), rv({0, Rational(1, 2)})});
  b = inradius_and_center(rect);
  CHECK(b.radius == Rational(1, 4));
  // Lexicographically smallest optimal center.
  CHECK(b.center == rv({Rational(1, 4), Rational(1, 4)}));

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    auto p = test::random_polytope(rng, 2 + trial % 2);
    auto ball = inradius_and_center(p);
    const auto d = p.ambient_dim();
    auto corners_inside = [&](const Rational& r) {
      for (int mask = 0; mask < (1 << d); ++mask) {
        RVec c = ball.center;
        for (Eigen::Index i = 0; i < d; ++i) c[i] += ((mask >> i) & 1) ? r : Rational(-r);
        if (!p.contains(c)) return false;
      }
      return true;
    };
    CHECK(ball.radius > 0);
    CHECK(corners_inside(ball.radius));
    CHECK_FALSE(corners_inside(ball.radius + Rational(1, 1000000)));
  }
  CHECK_THROWS(inradius_and_center(Polytope::from_vertices({rv({0, 0}), rv({1, 1})})));
}

TEST_CASE("shrink examples") {
  auto r = shrink(test::unit_square(), Rational(1, 2));
  CHECK(r.center == rv({Rational(1, 2), Rational(1, 2)}));
  CHECK(volume(r.inner) == Rational(1, 4));
  CHECK(r.inner.contains(rv({Rational(1, 4), Rational(3, 4)})));
  CHECK_FALSE(r.inner.contains(rv({Rational(1, 5), Rational(1, 2)})));
  REQUIRE(r.shell_pieces.size() == 4);
  for (const auto& piece : r.shell_pieces) CHECK(volume(piece) == Rational(3, 16));

  CHECK(shrink_point(rv({0, 0}), rv({Rational(1, 2), Rational(1, 2)}), Rational(1, 10)) ==
        rv({Rational(1, 20), Rational(1, 20)}));
  CHECK_THROWS_AS(shrink(test::unit_square(), 0), std::invalid_argument);
  CHECK_THROWS_AS(shrink(test::unit_square(), 1), std::invalid_argument);
}

TEST_CASE("shell volume bound examples") {
  auto b = shell_volume_bound(test::unit_square(), Rational(1, 2));
  CHECK(b.exact == Rational(3, 4));
  CHECK(b.bound.estimate == doctest::Approx(std::sqrt(2.0)));
  CHECK(b.holds);
  CHECK(shell_volume_bound(test::unit_square(), Rational(1, 100)).exact == Rational(199, 10000));
  CHECK(shell_volume_bound(test::standard_triangle(), Rational(1, 2)).exact == Rational(3, 8));
}

TEST_CASE("shell pieces tile the shell exactly") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 24; ++trial) {
    auto p = test::random_polytope(rng, 2 + trial % 2);
    for (Rational eps : {Rational(1, 2), Rational(1, 4), Rational(1, 10)}) {
      auto r = shrink(p, eps);
      Rational sum = volume(r.inner);
      for (const auto& piece : r.shell_pieces) sum += volume(piece);
      CHECK(sum == volume(p));
      for (const auto& v : r.inner.vertices()) CHECK(p.contains(v));
      CHECK(shell_volume_bound(p, eps).holds);
      // Vertex form of the Hausdorff estimate.
      for (const auto& v : p.vertices())
        CHECK(max_norm(RVec(v - shrink_point(v, r.center, eps))) <= eps * diameter(p));
    }
  }
}

TEST_CASE("continuous characteristic examples") {
  auto sq = test::unit_square();
  const Rational half(1, 2);
  CHECK(continuous_characteristic(sq, half, rv({half, half})) == 1);
  CHECK(continuous_characteristic(sq, half, rv({0, half})) == 0);
  CHECK(continuous_characteristic(sq, half, rv({Rational(1, 8), half})) == half);
  CHECK(continuous_characteristic(sq, half, rv({2, 0})) == 0);
  CHECK(sq.contains(rv({half, half})));
  CHECK(sq.contains(rv({1, 1})));
  CHECK_FALSE(sq.contains_strict(rv({1, 1})));
  CHECK_FALSE(sq.contains(rv({2, 0})));
}

TEST_CASE("continuous characteristic is affine on each shell piece") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> coin(0, 64);
  for (int trial = 0; trial < 12; ++trial) {
    auto p = test::random_polytope(rng, 2 + trial % 2);
    ContinuousCharacteristic chi(p, Rational(1, 4));
    const auto& pieces = chi.shrunk().shell_pieces;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      const auto& vs = pieces[i].vertices();
      auto sample = [&] {
        // Convex combination of the piece's vertices.
        RVec y = RVec::Zero(p.ambient_dim());
        Rational total = 0;
        for (const auto& v : vs) {
          Rational w = coin(rng);
          y += v * w;
          total += w;
        }
        if (total == 0) return RVec(vs.front());
        return RVec(y / total);
      };
      for (int k = 0; k < 5; ++k) {
        RVec y1 = sample(), y2 = sample();
        Rational t(coin(rng), 64);
        RVec mid = y1 * t + y2 * (1 - t);
        CHECK(chi(mid) == t * chi(y1) + (1 - t) * chi(y2));
        CHECK(chi(y1) >= 0);
        CHECK(chi(y1) <= 1);
      }
    }
    for (const auto& v : p.vertices()) CHECK(chi(v) == 0);
    for (const auto& v : chi.shrunk().inner.vertices()) CHECK(chi(v) == 1);
  }
}
