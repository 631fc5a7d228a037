#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "csv_data.hpp"
#include "test_util.hpp"
#include "toreq/heights.hpp"
#include "toreq/laurent.hpp"

using namespace toreq;
using test::rv;

namespace {

TorsionPoint w(Rational a, Rational b) { return make_torsion({a, b}); }

}  // namespace

TEST_CASE("limit constant") {
  CHECK(zeta3() == doctest::Approx(1.2020569031595942854).epsilon(1e-15));
  CHECK(height_limit() == doctest::Approx(0.48717531293429233248).epsilon(1e-14));
}

TEST_CASE("intersection point") {
  auto p = intersection_point(w(Rational(1, 2), Rational(1, 2)));
  CHECK(std::abs(p[0]) < 1e-15);
  CHECK(std::abs(p[1] - std::complex<double>(2, 0)) < 1e-15);
  CHECK(std::abs(p[2] - std::complex<double>(-2, 0)) < 1e-15);
  auto q = intersection_point(w(0, Rational(1, 2)));
  CHECK(std::abs(q[0] - std::complex<double>(-2, 0)) < 1e-15);
  CHECK(std::abs(q[2]) < 1e-15);
  auto omega = w(Rational(1, 4), Rational(1, 2));
  auto r = intersection_point(omega);
  auto z = embed(omega.angles_double());
  CHECK(std::abs(r[0] + r[1] + r[2]) < 1e-14);
  CHECK(std::abs(r[0] + r[1] / z[0] + r[2] / z[1]) < 1e-14);
  CHECK_THROWS_AS(intersection_point(w(0, 0)), std::invalid_argument);
  CHECK_THROWS_AS(intersection_point(make_torsion({Rational(1, 3)})), std::invalid_argument);
}

TEST_CASE("heights against reference values") {
  for (const auto& row : test::read_csv("height_points.csv")) {
    auto omega = w(parse_rational(row.at("q1")), parse_rational(row.at("q2")));
    auto rep = total_height(omega);
    CHECK(rep.order == std::stoll(row.at("order")));
    CHECK(rep.delta == std::stoll(row.at("delta")));
    CHECK(rep.h_arch == doctest::Approx(std::stod(row.at("h_arch"))).epsilon(1e-12));
    CHECK(rep.h_nonarch == doctest::Approx(std::stod(row.at("h_nonarch"))).epsilon(1e-12));
    CHECK(std::abs(rep.h_total - std::stod(row.at("h_total"))) < 1e-12);
    CHECK(rep.h_total == rep.h_arch + rep.h_nonarch);
  }
  CHECK(std::abs(total_height(w(Rational(1, 2), Rational(1, 2))).h_total) < 1e-15);
  CHECK(archimedean_height(w(Rational(1, 3), Rational(2, 3))) == doctest::Approx(std::log(std::sqrt(3.0))));
  auto six = total_height(w(Rational(1, 6), Rational(1, 3)));
  CHECK(six.h_nonarch == 0);
  CHECK(six.h_total == six.h_arch);
  CHECK(six.target_gap == doctest::Approx(std::abs(six.h_total - height_limit())));
}

TEST_CASE("non-archimedean part") {
  CHECK(nonarchimedean_height(6) == 0);
  CHECK(nonarchimedean_height(5) == doctest::Approx(-std::log(5.0) / 4));
  CHECK(nonarchimedean_height(8) == doctest::Approx(-std::log(2.0) / 4));
  CHECK(nonarchimedean_height(2) == doctest::Approx(-std::log(2.0)));
  for (std::int64_t n = 2; n <= 2000; ++n) {
    const double h = nonarchimedean_height(n);
    CHECK(h <= 0);
    if (h != 0) CHECK(-h <= 2 * std::log(static_cast<double>(n)) / static_cast<double>(n) + 1e-15);
  }
}

TEST_CASE("galois invariance of the archimedean height") {
  for (auto omega : {w(Rational(1, 7), Rational(3, 7)), w(Rational(2, 15), Rational(7, 10)), w(Rational(5, 36), Rational(1, 9))}) {
    const double base = archimedean_height(omega);
    for (const auto& conj : galois_orbit(omega)) CHECK(std::abs(archimedean_height(conj) - base) < 1e-12);
  }
}

TEST_CASE("triangle partition") {
  const auto& parts = triangle_partition();
  REQUIRE(parts.size() == 12);
  Rational total = 0;
  std::set<std::string> labels;
  for (const auto& t : parts) {
    total += volume(t.triangle);
    labels.insert(t.label);
    CHECK(t.triangle.vertices().size() == 3);
    CHECK(t.triangle.in_unit_box());
    for (const auto& v : t.triangle.vertices())
      for (Eigen::Index i = 0; i < 2; ++i) CHECK(denominator(v[i] * 6) == 1);
  }
  CHECK(total == 1);
  CHECK(labels.size() == 12);
  CHECK(parts.front().label == "11");
  CHECK(parts.front().triangle.contains(rv({Rational(1, 2), 0})));
  CHECK(parts.front().triangle.contains(rv({Rational(2, 3), Rational(1, 3)})));

  // Pairwise interiors are disjoint: the centroid of each triangle lies in no
  // other triangle's interior, and no two triangles share an interior point
  // of a common edge from the same side.
  for (std::size_t i = 0; i < parts.size(); ++i) {
    RVec c = RVec::Zero(2);
    for (const auto& v : parts[i].triangle.vertices()) c += v;
    c /= 3;
    for (std::size_t j = 0; j < parts.size(); ++j) {
      if (i == j) continue;
      CHECK_FALSE(parts[j].triangle.contains_strict(c));
      for (const auto& v : parts[j].triangle.vertices()) CHECK_FALSE(parts[i].triangle.contains_strict(v));
    }
  }

  int incident = 0;
  for (const auto& t : parts)
    if (t.triangle.contains(rv({Rational(2, 3), Rational(1, 3)}))) ++incident;
  CHECK(incident == 6);

  Vec<double> x(2);
  x << 0.3, 0.05;
  CHECK(dominant_binomial(x) == parts.front().binomial);
  CHECK(parts.front().binomial == 1);
}

TEST_CASE("assigned binomial attains the maximum") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const auto& t : triangle_partition()) {
    std::vector<Vec<double>> vs;
    for (const auto& v : t.triangle.vertices()) vs.push_back(to_double(v));
    auto poly = partition_binomial(t.binomial);
    int mismatches = 0;
    for (int s = 0; s < 10000; ++s) {
      double a = u(rng), b = u(rng);
      if (a + b > 1) {
        a = 1 - a;
        b = 1 - b;
      }
      Vec<double> x = vs[0] + a * (vs[1] - vs[0]) + b * (vs[2] - vs[0]);
      double margin = 0;
      const int dom = dominant_binomial(x, &margin);
      if (dom != t.binomial && margin > 1e-9) ++mismatches;
      const double assigned = std::abs(evaluate_angles(poly, x));
      for (int other = 1; other <= 3; ++other)
        CHECK(std::abs(evaluate_angles(partition_binomial(other), x)) <= assigned + 1e-9);
      if (mismatches) break;
    }
    CHECK_MESSAGE(mismatches == 0, "triangle " << t.label);
  }
}

TEST_CASE("height decomposition") {
  auto omega = w(Rational(1, 7), Rational(3, 7));
  auto split = height_decomposition(omega);
  // delta is 2 here and one conjugate lies on a partition edge; that is reported.
  CHECK(strictness_degree(omega) == 2);
  CHECK(std::abs(split.sum - archimedean_height(omega)) < 1e-12);

  for (std::int64_t p : {101, 499, 997}) {
    auto q = w(Rational(1, p), Rational((p * 618 + 500) / 1000, p));
    auto s = height_decomposition(q);
    if (s.clean) CHECK(std::abs(s.sum - archimedean_height(q)) < 1e-12);
  }

  auto degenerate = height_decomposition(w(Rational(1, 2), Rational(1, 2)));
  CHECK_FALSE(degenerate.clean);
  CHECK(degenerate.boundary_hits == 1);
}

TEST_CASE("sweep against the frozen reference run") {
  auto rows = test::read_csv("height_sweep.csv");
  REQUIRE(rows.size() > 10);
  auto seq = strict_records(golden_sweep(5, 2000, 0.618));
  REQUIRE(seq.size() == rows.size());
  auto table = height_convergence_experiment(seq);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = table[i].report;
    CHECK(r.order == std::stoll(rows[i].at("p")));
    CHECK(seq[i].angles()[1] == Rational(std::stoll(rows[i].at("a")), r.order));
    CHECK(r.delta == std::stoll(rows[i].at("delta")));
    CHECK(r.h_arch == doctest::Approx(std::stod(rows[i].at("h_arch"))).epsilon(1e-11));
    CHECK(r.target_gap == doctest::Approx(std::stod(rows[i].at("gap"))).epsilon(1e-8));
  }
  CHECK(table.back().report.target_gap < table.front().report.target_gap);
  CHECK_THROWS_AS(height_convergence_experiment({seq[3], seq[1]}), std::invalid_argument);
  auto csv = height_csv(table);
  CHECK(csv.find("gap") != std::string::npos);
}

TEST_CASE("primes") {
  auto ps = primes_between(1, 30);
  CHECK(ps == std::vector<std::int64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
  CHECK(primes_between(1990, 2000) == std::vector<std::int64_t>{1993, 1997, 1999});
}
