#include "toreq/constants.hpp"

#include <map>
#include <stdexcept>

namespace toreq {

namespace {

Integer ipow(const Integer& b, long e) {
  Integer r = 1;
  for (long i = 0; i < e; ++i) r *= b;
  return r;
}

Rational rpow(const Rational& b, long e) {
  Rational r = 1;
  for (long i = 0; i < e; ++i) r *= b;
  return r;
}

// v_n = 1/(128 n^2), then for s = n-1 down to 1:
// v_s = v_{s+1}^n / (5s * 80n) * (1 - v_{s+2}^n ... v_n^n / (2 (4n * 160n)^{n-s-1})).
std::vector<Rational> v_sequence(long n) {
  std::vector<Rational> v(static_cast<std::size_t>(n + 1), Rational(1));  // 1-based
  v[static_cast<std::size_t>(n)] = Rational(1, 128 * n * n);
  for (long s = n - 1; s >= 1; --s) {
    Rational prod = 1;
    for (long t = s + 2; t <= n; ++t) prod *= rpow(v[static_cast<std::size_t>(t)], n);
    const Rational denom = 2 * rpow(Rational(4 * n * 160 * n), n - s - 1);
    v[static_cast<std::size_t>(s)] =
        rpow(v[static_cast<std::size_t>(s + 1)], n) / Rational(5 * s * 80 * n) * (1 - prod / denom);
  }
  return {v.begin() + 1, v.end()};
}

struct Cell {
  Magnitude gamma;
  Magnitude C;
};

Magnitude resolve(const std::vector<Magnitude>& xs, CReading reading) {
  Magnitude out = xs.front();
  for (const auto& x : xs) out = reading == CReading::Max ? max(out, x) : min(out, x);
  return out;
}

std::string str(long x) { return std::to_string(x); }

// One step of the recursion for dimension n. `lower(l)` gives the cells
// gamma(l, K'), C(l, K') for l < n with K' the next exponent tier.
TraceEntry step(long n, long m, const Integer& K, const Integer& K_next, const Rational& c_v,
                const Rational& c_3, const std::vector<Cell>& lower, CReading reading) {
  TraceEntry e;
  e.n = n;
  e.m = m;
  e.k_power = K;
  e.v = v_sequence(n);
  const Rational N(n);

  e.epsilon_candidates.push_back({"v_1^n/(" + to_string(c_v) + "*n^2)", Magnitude(rpow(e.v[0], n) / (c_v * N * N))});
  e.epsilon_candidates.push_back({"1/(2^10*n^3*K)", Magnitude(1 / (1024 * N * N * N * Rational(K)))});
  e.epsilon_candidates.push_back({"1/(" + to_string(c_3) + "*n(n+1)*K^2)", Magnitude(1 / (c_3 * N * (N + 1) * Rational(K_next)))});
  for (std::size_t l = 0; l < lower.size(); ++l)
    e.epsilon_candidates.push_back({"1/(2^3*n*C(" + str(long(l) + 1) + "))", (Magnitude(8 * N) * lower[l].C).reciprocal()});
  for (std::size_t l = 0; l < lower.size(); ++l)
    e.epsilon_candidates.push_back({"gamma(" + str(long(l) + 1) + ")/(2^7*n^3)", lower[l].gamma / Magnitude(128 * N * N * N)});
  e.epsilon = e.epsilon_candidates.front().value;
  for (const auto& c : e.epsilon_candidates) e.epsilon = min(e.epsilon, c.value);

  const Magnitude eps_n1 = e.epsilon.pow(Rational(n - 1));
  const Magnitude eps_n2 = e.epsilon.pow(Rational(n - 2));
  e.gamma = eps_n1 / Magnitude(Rational(16) * Rational(K - 1));

  const Magnitude one(Rational(1));
  e.C_candidates.push_back({"n^(1/(2 eps^(n-1)))+1", Magnitude::pow(N, (Magnitude(Rational(2)) * eps_n1).reciprocal()) + one});
  e.C_candidates.push_back({"1/eps^(n-1)+1", eps_n1.reciprocal() + one});
  e.C_candidates.push_back({"n^(2n^3/eps^(n-2))", Magnitude::pow(N, Magnitude(2 * N * N * N) / eps_n2)});
  e.C_candidates.push_back({"2/eps^(n-2)", Magnitude(Rational(2)) / eps_n2});
  std::vector<Magnitude> c1, c2;
  for (const auto& cell : lower) {
    // C^4 * n^(4(n^3+2) C)
    c1.push_back(cell.C.pow(Rational(4)) * Magnitude::pow(N, Magnitude(4 * (N * N * N + 2)) * cell.C));
    c2.push_back(Magnitude(Rational(4)) * cell.C);
  }
  e.C_candidates.push_back({"C1", resolve(c1, reading)});
  e.C_candidates.push_back({"C2", resolve(c2, reading)});
  std::vector<Magnitude> all;
  for (const auto& c : e.C_candidates) all.push_back(c.value);
  e.C_min = resolve(all, CReading::Min);
  e.C_max = resolve(all, CReading::Max);
  e.C = reading == CReading::Max ? e.C_max : e.C_min;
  return e;
}

}  // namespace

ConstantsResult gamma_C(long d, long k, const Rational& eps0, CReading reading) {
  if (d < 2) throw std::invalid_argument("gamma_C needs d >= 2");
  if (d > kMaxConstantsDim) throw std::invalid_argument("gamma_C supports d <= " + str(kMaxConstantsDim));
  if (k < 2) throw std::invalid_argument("gamma_C needs k >= 2");
  if (!(eps0 > 0 && eps0 < 1)) throw std::invalid_argument("gamma_C needs 0 < eps0 < 1");

  ConstantsResult r;
  r.d = d;
  r.k = k;
  r.eps0 = eps0;
  r.reading = reading;

  auto k_tier = [&](long m) { return ipow(Integer(k), 1L << m); };  // k^{2^m}
  // table[(n, m)] for gamma(n, k^{2^m}), C(n, k^{2^m}).
  std::map<std::pair<long, long>, Cell> table;
  for (long m = 0; m <= d; ++m) table[{1, m}] = {Magnitude(1 - eps0), Magnitude(Rational(1))};

  auto lower_cells = [&](long n, long m) {
    std::vector<Cell> cells;
    for (long l = 1; l <= n - 1; ++l) cells.push_back(table.at({l, m}));
    return cells;
  };

  for (long n = 2; n <= d - 1; ++n)
    for (long m = 1; m <= d - n; ++m) {
      TraceEntry e = step(n, m, k_tier(m), k_tier(m + 1), Rational(64 * 5), Rational(128 * 3 * 25),
                          lower_cells(n, m + 1), reading);
      table[{n, m}] = {e.gamma, e.C};
      r.trace.push_back(std::move(e));
      ++r.inner_iterations;
    }

  TraceEntry fin = step(d, 0, Integer(k), k_tier(1), Rational(128 * 5), Rational(64 * 3 * 25), lower_cells(d, 1),
                        reading);
  r.gamma = fin.gamma;
  r.C = fin.C;
  r.epsilon = fin.epsilon;
  r.v = fin.v;
  r.trace.push_back(std::move(fin));
  return r;
}

Magnitude kappa(const ConstantsResult& r) {
  return min(r.gamma, Magnitude(Rational(1, 64 * r.k * (r.d + 1))));
}

Magnitude kappa(long d, long k, const Rational& eps0) { return kappa(gamma_C(d, k, eps0)); }

std::vector<EpsilonCheck> verify_epsilon(const ConstantsResult& r) {
  std::vector<EpsilonCheck> out;
  for (const auto& c : r.trace.back().epsilon_candidates) out.push_back({c.label, r.epsilon <= c.value});
  return out;
}

Magnitude strictness_threshold(const ConstantsResult& r, const Rational& c, const Rational& degree) {
  const Rational base = c > degree ? c : degree;
  if (base < 1) throw std::invalid_argument("strictness_threshold needs max(c, deg) >= 1");
  if (base == 1) return r.C;
  return r.C * Magnitude::pow(base, r.C);
}

}  // namespace toreq
