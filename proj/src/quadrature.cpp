#include "toreq/quadrature.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "toreq/linalg.hpp"

namespace toreq {

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x))
    carry_ += (sum_ - t) + x;
  else
    carry_ += (x - t) + sum_;
  sum_ = t;
}

namespace {

double radical_inverse(std::size_t i, unsigned base) {
  double inv = 1.0 / base, f = inv, r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

constexpr unsigned kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19};

double frac1(double x) { return x - std::floor(x); }

double factorial(Eigen::Index d) {
  double f = 1.0;
  for (Eigen::Index i = 2; i <= d; ++i) f *= static_cast<double>(i);
  return f;
}

// Golub-Welsch nodes and weights on [0, 1].
void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(order, order);
  for (int i = 1; i < order; ++i) {
    const double b = i / std::sqrt(4.0 * i * i - 1.0);
    J(i, i - 1) = J(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  nodes.resize(static_cast<std::size_t>(order));
  weights.resize(static_cast<std::size_t>(order));
  for (int i = 0; i < order; ++i) {
    nodes[static_cast<std::size_t>(i)] = 0.5 * (es.eigenvalues()[i] + 1.0);
    const double v = es.eigenvectors()(0, i);
    weights[static_cast<std::size_t>(i)] = v * v;  // sums to 1 on [0, 1]
  }
}

}  // namespace

std::vector<Vec<double>> qmc_base_points(Eigen::Index d, std::size_t n) {
  if (d < 1) throw std::invalid_argument("qmc_base_points needs d >= 1");
  if (n == 0) throw std::invalid_argument("qmc_base_points needs n >= 1");
  std::vector<Vec<double>> pts;
  if (d == 1) {
    for (std::size_t i = 0; i < n; ++i) pts.push_back(Vec<double>::Constant(1, double(i) / double(n)));
    return pts;
  }
  if (d == 2) {
    std::size_t a = 1, b = 1;  // consecutive Fibonacci numbers
    while (b < n) {
      const std::size_t c = a + b;
      a = b;
      b = c;
    }
    for (std::size_t i = 0; i < b; ++i) {
      Vec<double> p(2);
      p << double(i) / double(b), double((i * a) % b) / double(b);
      pts.push_back(p);
    }
    return pts;
  }
  if (d > static_cast<Eigen::Index>(std::size(kPrimes)))
    throw std::invalid_argument("qmc_base_points supports d <= 8");
  for (std::size_t i = 0; i < n; ++i) {
    Vec<double> p(d);
    for (Eigen::Index j = 0; j < d; ++j) p[j] = radical_inverse(i + 1, kPrimes[j]);
    pts.push_back(p);
  }
  return pts;
}

std::vector<Vec<double>> qmc_shifts(Eigen::Index d, const QmcConfig& config) {
  std::mt19937_64 rng(config.seed);
  std::vector<Vec<double>> shifts;
  for (int s = 0; s < config.shifts; ++s) {
    Vec<double> v(d);
    // 53 random bits per coordinate, independent of the library's distributions.
    for (Eigen::Index j = 0; j < d; ++j) v[j] = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    shifts.push_back(v);
  }
  return shifts;
}

Vec<double> collapse_to_simplex(const std::vector<Vec<double>>& vertices, const Vec<double>& u,
                                double& weight) {
  const Eigen::Index d = u.size();
  if (static_cast<Eigen::Index>(vertices.size()) != d + 1)
    throw std::invalid_argument("collapse_to_simplex: need d + 1 vertices");
  Vec<double> x = Vec<double>::Zero(vertices[0].size());
  double prefix = 1.0;
  double jac = factorial(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    x += prefix * (1.0 - u[i]) * vertices[static_cast<std::size_t>(i)];
    jac *= std::pow(u[i], static_cast<double>(d - 1 - i));
    prefix *= u[i];
  }
  x += prefix * vertices[static_cast<std::size_t>(d)];
  weight = jac;
  return x;
}

std::vector<WeightedSimplex> simplices_of(const Polytope& p) {
  if (!p.is_full_dimensional()) throw std::invalid_argument("simplices_of needs a full-dimensional polytope");
  const Eigen::Index d = p.ambient_dim();
  std::vector<WeightedSimplex> out;
  Rational fact = 1;
  for (Eigen::Index i = 2; i <= d; ++i) fact *= Rational(static_cast<long>(i));
  for (const auto& s : p.triangulation()) {
    WeightedSimplex ws;
    RMat edges(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      edges.col(i) = p.vertices()[s[static_cast<std::size_t>(i + 1)]] - p.vertices()[s[0]];
    ws.volume = abs(exact_determinant(edges)) / fact;
    for (auto id : s) ws.vertices.push_back(to_double(p.vertices()[id]));
    out.push_back(std::move(ws));
  }
  return out;
}

QuadratureReport log_ladder_integral(const std::vector<WeightedSimplex>& region,
                                     const std::function<double(const Vec<double>&)>& modulus,
                                     Eigen::Index d, const QmcConfig& config) {
  if (config.shifts < 2) throw std::invalid_argument("log_ladder_integral needs >= 2 shifts");
  const auto base = qmc_base_points(d, config.points);
  const auto shifts = qmc_shifts(d, config);
  const double n = static_cast<double>(base.size());

  // samples[s] holds (weight * vol / n, modulus) over all simplices, in a fixed order.
  std::vector<std::vector<std::pair<double, double>>> samples(shifts.size());
  for (std::size_t s = 0; s < shifts.size(); ++s) {
    samples[s].reserve(base.size() * std::max<std::size_t>(1, region.size()));
    if (region.empty()) {
      for (const auto& b : base) {
        Vec<double> u(d);
        for (Eigen::Index j = 0; j < d; ++j) u[j] = frac1(b[j] + shifts[s][j]);
        samples[s].emplace_back(1.0 / n, modulus(u));
      }
    }
    for (const auto& simplex : region) {
      const double vol = to_double(simplex.volume);
      for (const auto& b : base) {
        Vec<double> u(d);
        for (Eigen::Index j = 0; j < d; ++j) u[j] = frac1(b[j] + shifts[s][j]);
        double w = 0.0;
        const Vec<double> x = collapse_to_simplex(simplex.vertices, u, w);
        samples[s].emplace_back(w * vol / n, modulus(x));
      }
    }
  }

  QuadratureReport rep;
  rep.samples = samples.size() * samples[0].size();
  double previous = 0.0;
  for (int j = config.ladder_first; j <= config.ladder_last; ++j) {
    const double r = std::ldexp(1.0, -j);
    std::vector<double> per_shift;
    for (const auto& ss : samples) {
      CompensatedSum acc;
      for (const auto& [w, m] : ss) acc.add(w * std::log(std::max(r, m)));
      per_shift.push_back(acc.value());
    }
    CompensatedSum mean;
    for (double v : per_shift) mean.add(v);
    const double mu = mean.value() / static_cast<double>(per_shift.size());
    double var = 0.0;
    for (double v : per_shift) var += (v - mu) * (v - mu);
    var /= static_cast<double>(per_shift.size() - 1);
    rep.ladder.push_back({r, mu});
    rep.estimate = mu;
    rep.sampling_error = std::sqrt(var / static_cast<double>(per_shift.size()));
    if (j > config.ladder_first) {
      rep.truncation_change = std::abs(mu - previous);
      if (rep.truncation_change < config.tolerance / 2) {
        rep.converged = true;
        break;
      }
    }
    previous = mu;
  }
  return rep;
}

double gauss_simplex(const std::function<double(const Vec<double>&)>& f,
                     const std::vector<Vec<double>>& vertices, int order) {
  const Eigen::Index d = static_cast<Eigen::Index>(vertices.size()) - 1;
  if (d < 1 || order < 1) throw std::invalid_argument("gauss_simplex: bad arguments");
  std::vector<double> nodes, weights;
  gauss_legendre(order, nodes, weights);
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  CompensatedSum acc;
  Vec<double> u(d);
  while (true) {
    double w = 1.0;
    for (Eigen::Index i = 0; i < d; ++i) {
      u[i] = nodes[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
      w *= weights[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
    }
    double jac = 0.0;
    const Vec<double> x = collapse_to_simplex(vertices, u, jac);
    acc.add(w * jac * f(x));
    Eigen::Index k = 0;
    while (k < d && ++idx[static_cast<std::size_t>(k)] == order) idx[static_cast<std::size_t>(k++)] = 0;
    if (k == d) break;
  }
  return acc.value();  // mean of f over the simplex
}

GaussReport gauss_polytope(const std::function<double(const Vec<double>&)>& f, const Polytope& p,
                           int order) {
  GaussReport rep;
  CompensatedSum lo, hi;
  for (const auto& s : simplices_of(p)) {
    const double vol = to_double(s.volume);
    lo.add(vol * gauss_simplex(f, s.vertices, order));
    hi.add(vol * gauss_simplex(f, s.vertices, 2 * order));
  }
  rep.estimate = hi.value();
  rep.error = std::abs(hi.value() - lo.value());
  return rep;
}

}  // namespace toreq
