#include "toreq/koksma.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "toreq/constants.hpp"
#include "toreq/discrepancy.hpp"

namespace toreq {

ModulusEstimate modulus_estimate(const RealFunction& f, Eigen::Index d, double t, std::size_t pairs,
                                 std::uint64_t seed) {
  if (t < 0) throw std::invalid_argument("modulus_estimate needs t >= 0");
  ModulusEstimate out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Vec<double> x(d), y(d);
  for (std::size_t i = 0; i < pairs; ++i) {
    const bool extreme = i % 2 == 0;
    for (Eigen::Index j = 0; j < d; ++j) {
      x[j] = unif(rng);
      const double step = extreme ? (unif(rng) < 0.5 ? -t : t) : t * (2.0 * unif(rng) - 1.0);
      y[j] = x[j] + step;
      // Reflect back into the cube, keeping |x - y| <= t.
      if (y[j] > 1.0 || y[j] < 0.0) y[j] = x[j] - step;
      y[j] = std::clamp(y[j], 0.0, 1.0);
    }
    out.value = std::max(out.value, std::abs(f(x) - f(y)));
    ++out.pairs;
  }
  return out;
}

double hypercube_koksma_bound(double rho_at, Eigen::Index d) {
  if (rho_at < 0) throw std::invalid_argument("hypercube_koksma_bound needs rho >= 0");
  return (1.0 + std::ldexp(1.0, static_cast<int>(d) + 1)) * rho_at;
}

PolytopeStats polytope_stats(const Polytope& p) {
  if (!p.is_full_dimensional()) throw std::invalid_argument("Koksma bound needs a full-dimensional polytope");
  PolytopeStats s;
  s.d = p.ambient_dim();
  s.inradius = to_double(inradius_and_center(p).radius);
  s.facets = p.facet_count();
  s.diameter = to_double(diameter(p));
  s.surface_area = to_double(surface_area(p).upper);
  return s;
}

KoksmaBoundReport polytope_koksma_bound(const PolytopeStats& stats, double D, double M, double rho_at,
                                        bool analytic_modulus) {
  if (!(D >= 0 && D <= 1)) throw std::invalid_argument("polytope_koksma_bound needs 0 <= D <= 1");
  if (M < 0 || rho_at < 0) throw std::invalid_argument("polytope_koksma_bound needs M, rho >= 0");
  if (!(stats.inradius > 0)) throw std::invalid_argument("polytope_koksma_bound needs a positive inradius");
  const double d = static_cast<double>(stats.d);
  const double lead = 1.0 + std::ldexp(1.0, static_cast<int>(stats.d) + 1);
  const double root = std::pow(D, 1.0 / (2.0 * d + 2.0));
  KoksmaBoundReport r;
  r.D = D;
  r.M = M;
  r.rho_at = rho_at;
  r.analytic_modulus = analytic_modulus;
  r.stats = stats;
  r.rho_term = lead * rho_at;
  r.inradius_term = lead * root / stats.inradius;
  r.isotropic_term = (4.0 * d * std::sqrt(d) + 1.0) * std::pow(D, 1.0 / d) * static_cast<double>(stats.facets);
  r.shell_term = 2.0 * stats.diameter * stats.surface_area * root / std::sqrt(d);
  r.total = r.rho_term + M * (r.inradius_term + r.isotropic_term + r.shell_term);
  return r;
}

KoksmaBoundReport polytope_koksma_bound(const Polytope& p, double D, double M, double rho_at,
                                        bool analytic_modulus) {
  return polytope_koksma_bound(polytope_stats(p), D, M, rho_at, analytic_modulus);
}

double polytope_average(const PointSet& points, const Polytope& p, const RealFunction& f) {
  CompensatedSum acc;
  if (points.is_exact()) {
    for (const auto& x : points.rational_points())
      if (p.contains(x)) acc.add(f(to_double(x)));
  } else {
    for (const auto& x : points.double_points())
      if (p.contains(x)) acc.add(f(x));
  }
  return acc.value() / static_cast<double>(points.size());
}

double TrigPolynomial::operator()(const Vec<double>& x) const {
  CompensatedSum acc;
  for (std::size_t j = 0; j < frequencies.size(); ++j) {
    const double ph = 2.0 * std::numbers::pi * frequencies[j].cast<double>().dot(x);
    acc.add(cos_coeffs[j] * std::cos(ph) + sin_coeffs[j] * std::sin(ph));
  }
  return acc.value();
}

double TrigPolynomial::sup_bound() const {
  double s = 0.0;
  for (std::size_t j = 0; j < frequencies.size(); ++j) s += std::abs(cos_coeffs[j]) + std::abs(sin_coeffs[j]);
  return s;
}

double TrigPolynomial::lipschitz() const {
  double s = 0.0;
  for (std::size_t j = 0; j < frequencies.size(); ++j)
    s += (std::abs(cos_coeffs[j]) + std::abs(sin_coeffs[j])) *
         static_cast<double>(frequencies[j].cwiseAbs().sum());
  return 2.0 * std::numbers::pi * s;
}

TrigPolynomial TrigPolynomial::random(Eigen::Index d, int terms, int max_frequency, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> freq(-max_frequency, max_frequency);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  TrigPolynomial t;
  for (int j = 0; j < terms; ++j) {
    IVec k(d);
    for (Eigen::Index i = 0; i < d; ++i) k[i] = freq(rng);
    t.frequencies.push_back(k);
    t.cos_coeffs.push_back(coef(rng));
    t.sin_coeffs.push_back(coef(rng));
  }
  return t;
}

EquidistResult equidist_error(const LaurentPolynomial& p, const Polytope& region, const TorsionPoint& omega,
                              const QuadratureReport& integral, BoundaryPolicy policy) {
  if (p.dim() != omega.dim() || region.ambient_dim() != p.dim())
    throw std::invalid_argument("equidist_error: dimension mismatch");
  EquidistResult r;
  r.zero_check = zero_on_orbit(p, omega);
  if (r.zero_check.zero)
    throw ComputationError("P vanishes at a Galois conjugate of omega (min |P| = " +
                           std::to_string(r.zero_check.min_modulus) + ")");
  const auto orbit = galois_orbit(omega);
  r.n = orbit.size();
  CompensatedSum acc;
  for (const auto& w : orbit) {
    if (!region.contains(w.angles())) continue;
    if (!region.contains_strict(w.angles())) {
      ++r.boundary_hits;
      if (policy == BoundaryPolicy::Error) {
        std::string where;
        for (Eigen::Index j = 0; j < w.dim(); ++j) where += (j ? "," : "") + to_string(w.angles()[j]);
        throw ComputationError("orbit angle (" + where + ") lies on the polytope boundary");
      }
    }
    ++r.count_in_polytope;
    acc.add(std::log(std::abs(evaluate_angles(p, w.angles()))));
  }
  r.lhs_sum = acc.value() / static_cast<double>(r.n);
  r.integral_report = integral;
  r.integral = integral.estimate;
  r.error = std::abs(r.lhs_sum - r.integral);
  return r;
}

EquidistResult equidist_error(const LaurentPolynomial& p, const Polytope& region, const TorsionPoint& omega,
                              const QmcConfig& config, BoundaryPolicy policy) {
  return equidist_error(p, region, omega, polytope_log_integral(p, region, config), policy);
}

std::vector<ConvergenceRow> convergence_experiment(const LaurentPolynomial& p, const Polytope& region,
                                                   const std::vector<TorsionPoint>& sequence,
                                                   const ConvergenceOptions& options) {
  std::vector<std::int64_t> deltas;
  for (const auto& w : sequence) {
    deltas.push_back(strictness_degree(w));
    if (deltas.size() > 1 && deltas.back() <= deltas[deltas.size() - 2])
      throw std::invalid_argument("convergence_experiment needs strictly increasing delta");
  }
  const QuadratureReport integral = polytope_log_integral(p, region, options.quadrature);
  const PolytopeStats stats = polytope_stats(region);

  // log_r |P(e(x))| is bounded by max(|log r|, log sum|c|) and Lipschitz with
  // constant 2 pi sum |c_a| |a|_1 / r in the max norm.
  double coeff_sum = 0.0, grad = 0.0;
  for (const auto& t : p.terms()) {
    const double c = std::abs(t.coefficient.to_complex());
    coeff_sum += c;
    grad += c * static_cast<double>(t.exponent.cwiseAbs().sum());
  }
  const double M = std::max(std::abs(std::log(options.koksma_r)), std::abs(std::log(std::max(coeff_sum, 1e-300))));
  const double lip = 2.0 * std::numbers::pi * grad / options.koksma_r;
  const long k = std::max<long>(2, static_cast<long>(p.term_count()));
  const double kappa_value = p.dim() >= 2 ? kappa(p.dim(), k, exact_rational(options.epsilon0)).to_double() : 0.0;

  std::vector<ConvergenceRow> rows;
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    const auto& w = sequence[i];
    const EquidistResult e = equidist_error(p, region, w, integral, options.policy);
    ConvergenceRow row;
    row.order = w.order();
    row.delta = deltas[i];
    row.n = e.n;
    row.count_in_polytope = e.count_in_polytope;
    row.lhs_sum = e.lhs_sum;
    row.integral = e.integral;
    row.error = e.error;
    const DiscrepancyReport dr = box_discrepancy(orbit_angles(w));
    row.D = dr.D;
    row.D_exact = dr.exact;
    const double D = std::min(1.0, row.D);
    row.koksma_total =
        polytope_koksma_bound(stats, D, M, lip * std::pow(D, 1.0 / (static_cast<double>(p.dim()) + 1.0))).total;
    row.kappa_shape = std::exp(-kappa_value * std::log(static_cast<double>(row.delta)));
    rows.push_back(row);
  }
  return rows;
}

std::string convergence_csv(const std::vector<ConvergenceRow>& rows, int precision) {
  std::ostringstream os;
  os.precision(precision);
  os << "order,delta,n,count_in_polytope,lhs_sum,integral,error,D,koksma_total,kappa_shape\n";
  for (const auto& r : rows)
    os << r.order << ',' << r.delta << ',' << r.n << ',' << r.count_in_polytope << ',' << r.lhs_sum << ','
       << r.integral << ',' << r.error << ',' << r.D << ',' << r.koksma_total << ',' << r.kappa_shape << '\n';
  return os.str();
}

}  // namespace toreq
