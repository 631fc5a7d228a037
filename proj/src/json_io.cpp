#include "toreq/json_io.hpp"

#include <cmath>
#include <stdexcept>

namespace toreq {

namespace {

Json magnitude_json(const Magnitude& m) {
  Json j;
  j["value"] = m.to_string();
  j["exact"] = m.is_exact();
  const double l = m.log2_double();
  if (std::isfinite(l))
    j["log2"] = l;
  else
    j["log2"] = m.log2().second.to_string();
  return j;
}

Json candidates_json(const std::vector<Candidate>& cs) {
  Json arr = Json::array();
  for (const auto& c : cs) arr.push_back({{"label", c.label}, {"value", magnitude_json(c.value)}});
  return arr;
}

}  // namespace

Json rational_vector_json(const RVec& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(to_string(v[i]));
  return arr;
}

RVec rational_vector_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an array of rationals");
  RVec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& e = j[i];
    v[static_cast<Eigen::Index>(i)] = e.is_string() ? parse_rational(e.get<std::string>())
                                                    : Rational(e.get<long long>());
  }
  return v;
}

Json torsion_json(const TorsionPoint& omega) {
  return {{"angles", rational_vector_json(omega.angles())}, {"order", omega.order()}};
}

TorsionPoint torsion_from_json(const Json& j) { return TorsionPoint(rational_vector_from_json(j.at("angles"))); }

Json polytope_json(const Polytope& p) {
  Json out;
  Json verts = Json::array();
  for (const auto& v : p.vertices()) verts.push_back(rational_vector_json(v));
  out["vertices"] = verts;
  out["dimension"] = p.dimension();
  Json facets = Json::array();
  for (const auto& h : p.halfspaces())
    facets.push_back({{"normal", rational_vector_json(h.normal)}, {"offset", to_string(h.offset)}});
  out["halfspaces"] = facets;
  out["volume"] = to_string(volume(p));
  return out;
}

Polytope polytope_from_json(const Json& j) {
  std::vector<RVec> pts;
  for (const auto& v : j.at("vertices")) pts.push_back(rational_vector_from_json(v));
  return Polytope::from_vertices(std::move(pts));
}

Json polynomial_json(const LaurentPolynomial& p) {
  Json terms = Json::array();
  for (const auto& t : p.terms()) {
    Json e = Json::array();
    for (Eigen::Index i = 0; i < t.exponent.size(); ++i) e.push_back(t.exponent[i]);
    terms.push_back({{"exp", e}, {"re", to_string(t.coefficient.re)}, {"im", to_string(t.coefficient.im)}});
  }
  return {{"d", p.dim()}, {"terms", terms}};
}

LaurentPolynomial polynomial_from_json(const Json& j) {
  const auto d = j.at("d").get<Eigen::Index>();
  std::vector<LaurentTerm> terms;
  for (const auto& t : j.at("terms")) {
    const auto& e = t.at("exp");
    if (static_cast<Eigen::Index>(e.size()) != d) throw std::invalid_argument("exponent length differs from d");
    IVec ex(d);
    for (Eigen::Index i = 0; i < d; ++i) ex[i] = e[static_cast<std::size_t>(i)].get<std::int64_t>();
    GaussianRational c{parse_rational(t.value("re", std::string("0"))), parse_rational(t.value("im", std::string("0")))};
    terms.push_back({ex, c});
  }
  return LaurentPolynomial(d, std::move(terms));
}

Json constants_json(const ConstantsResult& r) {
  Json out;
  out["d"] = r.d;
  out["k"] = r.k;
  out["eps0"] = to_string(r.eps0);
  out["reading"] = r.reading == CReading::Max ? "max" : "min";
  out["gamma"] = magnitude_json(r.gamma);
  out["epsilon"] = magnitude_json(r.epsilon);
  out["C"] = magnitude_json(r.C);
  out["kappa"] = magnitude_json(kappa(r));
  Json v = Json::array();
  for (const auto& x : r.v) v.push_back(to_string(x));
  out["v"] = v;
  out["inner_iterations"] = r.inner_iterations;
  Json trace = Json::array();
  for (const auto& e : r.trace) {
    Json je;
    je["n"] = e.n;
    je["m"] = e.m;
    je["k_power"] = to_string(e.k_power);
    Json ev = Json::array();
    for (const auto& x : e.v) ev.push_back(to_string(x));
    je["v"] = ev;
    je["epsilon_candidates"] = candidates_json(e.epsilon_candidates);
    je["epsilon"] = magnitude_json(e.epsilon);
    je["gamma"] = magnitude_json(e.gamma);
    je["C_candidates"] = candidates_json(e.C_candidates);
    je["C"] = magnitude_json(e.C);
    je["C_min"] = magnitude_json(e.C_min);
    je["C_max"] = magnitude_json(e.C_max);
    trace.push_back(je);
  }
  out["trace"] = trace;
  Json checks = Json::array();
  for (const auto& c : verify_epsilon(r)) checks.push_back({{"constraint", c.label}, {"holds", c.holds}});
  out["epsilon_checks"] = checks;
  return out;
}

Json discrepancy_json(const DiscrepancyReport& r) {
  Json out;
  out["D"] = r.D;
  if (r.D_exact) out["D_exact"] = to_string(*r.D_exact);
  out["exact"] = r.exact;
  Json lo = Json::array(), hi = Json::array();
  for (Eigen::Index i = 0; i < r.witness.lower.size(); ++i) {
    lo.push_back(r.witness.lower[i]);
    hi.push_back(r.witness.upper[i]);
  }
  out["witness"] = {{"lower", lo}, {"upper", hi}, {"closed", r.witness.closed}};
  out["J_lower"] = r.J_lower;
  out["J_upper"] = r.J_upper;
  return out;
}

}  // namespace toreq
