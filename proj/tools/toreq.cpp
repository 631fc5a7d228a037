// Command-line front end. Every run echoes the version and its configuration
// in a header ('#' lines, or the "config" object in --json mode).

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "toreq/constants.hpp"
#include "toreq/discrepancy.hpp"
#include "toreq/errors.hpp"
#include "toreq/heights.hpp"
#include "toreq/json_io.hpp"
#include "toreq/koksma.hpp"
#include "toreq/polytope.hpp"
#include "toreq/torus.hpp"

using namespace toreq;

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Output {
  bool json = false;
  int precision = 17;
  Json config = Json::object();
  Json result = Json::object();
  std::ostringstream text;

  std::string num(double x) const {
    std::ostringstream s;
    s << std::setprecision(precision) << x;
    return s.str();
  }

  void line(const std::string& key, const std::string& value) { text << key << " = " << value << '\n'; }

  void emit(const std::string& command) const {
    if (json) {
      Json out;
      out["version"] = TOREQ_VERSION;
      out["command"] = command;
      out["config"] = config;
      out["result"] = result;
      std::cout << out.dump(2) << '\n';
      return;
    }
    std::cout << "# toreq " << TOREQ_VERSION << " " << command << '\n';
    for (const auto& [k, v] : config.items()) std::cout << "# " << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    std::cout << text.str();
  }
};

TorsionPoint parse_omega(const std::string& text) {
  try {
    return make_torsion(parse_rational_list(text));
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("bad --omega: ") + e.what());
  }
}

/// "x1,y1;x2,y2;..." or a JSON file with {"vertices": [...]}.
Polytope parse_polytope(const std::string& vertices, const std::string& file) {
  try {
    if (!file.empty()) {
      std::ifstream in(file);
      if (!in) throw UsageError("cannot read " + file);
      return polytope_from_json(Json::parse(in));
    }
    std::vector<RVec> pts;
    std::stringstream ss(vertices);
    std::string item;
    while (std::getline(ss, item, ';')) pts.push_back(to_rational(parse_rational_list(item)));
    return Polytope::from_vertices(pts);
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(std::string("bad polytope: ") + e.what());
  }
}

std::string unit_square_text(int d) {
  std::string out;
  for (int mask = 0; mask < (1 << d); ++mask) {
    if (mask) out += ';';
    for (int i = 0; i < d; ++i) out += std::string(i ? "," : "") + (((mask >> i) & 1) ? "1" : "0");
  }
  return out;
}

/// equispaced:n (the grid {i/n}^d), orbit:q1,...,qd, or a JSON file of rational points.
PointSet parse_points(const std::string& source, int d) {
  try {
    if (source.rfind("equispaced:", 0) == 0) {
      const std::int64_t n = std::stoll(source.substr(11));
      if (n < 1) throw UsageError("equispaced needs n >= 1");
      if (d == 1) return PointSet::equispaced(n);
      std::vector<RVec> pts;
      std::vector<std::int64_t> idx(d, 0);
      for (;;) {
        RVec v(d);
        for (int i = 0; i < d; ++i) v[i] = Rational(idx[i], n);
        pts.push_back(v);
        int i = 0;
        while (i < d && ++idx[i] == n) idx[i++] = 0;
        if (i == d) break;
      }
      return PointSet::exact(d, pts);
    }
    if (source.rfind("orbit:", 0) == 0) {
      auto omega = make_torsion(parse_rational_list(source.substr(6)));
      if (omega.dim() != d) throw UsageError("orbit dimension differs from --d");
      return orbit_angles(omega);
    }
    std::ifstream in(source);
    if (!in) throw UsageError("unknown point source " + source);
    auto j = Json::parse(in);
    std::vector<RVec> pts;
    for (const auto& p : j.at("points")) pts.push_back(rational_vector_from_json(p));
    return PointSet::exact(d, pts);
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(std::string("bad --points: ") + e.what());
  }
}

Rational parse_rational_arg(const std::string& name, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError("bad " + name + ": " + e.what());
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw ComputationError("cannot write " + path);
  out << content;
}

std::string vector_text(const RVec& v) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s + ")";
}

std::string ivector_text(const IVec& v) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Torsion points, discrepancy and equidistribution of log|P| on Galois orbits"};
  app.set_version_flag("--version", std::string(TOREQ_VERSION));
  app.require_subcommand(1);
  app.fallthrough();

  Output out;
  if (const char* env = std::getenv("TOREQ_PRECISION")) {
    try {
      out.precision = std::stoi(env);
    } catch (...) {
      std::cerr << "error: TOREQ_PRECISION must be an integer\n";
      return 2;
    }
  }
  app.add_flag("--json", out.json, "Machine-readable JSON output");
  app.add_option("--precision", out.precision, "Significant digits of floating output (env TOREQ_PRECISION)")
      ->check(CLI::Range(1, 40));

  std::string omega_text, vertices_text, file_text, poly_text = "T1 - 1", points_text, mode = "auto";
  std::string trace_path, out_format = "csv", out_file, boundary = "error", reading = "max", primes = "5..2000";
  std::string eps_text, eps0_text = "1/2", c_text = "1", deg_text = "1";
  int d = 2, k = 2;
  double D = 0, M = 1, rho = 0, ratio = 0.618;
  QmcConfig qmc;
  bool isotropic = false;

  auto add_qmc = [&](CLI::App* sub) {
    sub->add_option("--qmc-points", qmc.points, "Quadrature points per shift");
    sub->add_option("--qmc-shifts", qmc.shifts, "Quadrature random shifts")->check(CLI::Range(2, 1024));
    sub->add_option("--seed", qmc.seed, "Quadrature seed");
    sub->add_option("--tolerance", qmc.tolerance, "Truncation ladder tolerance");
  };

  auto* delta_cmd = app.add_subcommand("delta", "Strictness degree of a torsion point");
  delta_cmd->add_option("--omega", omega_text, "Angles, e.g. 1/5,2/5")->required();

  auto* orbit_cmd = app.add_subcommand("orbit", "Galois orbit of a torsion point");
  orbit_cmd->add_option("--omega", omega_text, "Angles, e.g. 1/5,2/5")->required();

  auto* disc_cmd = app.add_subcommand("discrepancy", "Box discrepancy of a point set");
  disc_cmd->add_option("--points", points_text, "equispaced:n | orbit:q1,..,qd | file.json")->required();
  disc_cmd->add_option("--d", d, "Dimension")->check(CLI::Range(1, 8));
  disc_cmd->add_option("--mode", mode, "auto | exact | estimate")->check(CLI::IsMember({"auto", "exact", "estimate"}));
  disc_cmd->add_flag("--isotropic", isotropic, "Also report the isotropic discrepancy bounds");

  auto* poly_cmd = app.add_subcommand("polytope", "Geometry of a rational polytope");
  poly_cmd->add_option("--vertices", vertices_text, "Vertices, e.g. \"0,0;1,0;0,1\"");
  poly_cmd->add_option("--file", file_text, "JSON polytope file");
  poly_cmd->add_option("--eps", eps_text, "Shrink parameter for the shell volume check");

  auto* kb_cmd = app.add_subcommand("koksma-bound", "Koksma-type bound over a polytope");
  kb_cmd->add_option("--vertices", vertices_text, "Vertices, default the unit square");
  kb_cmd->add_option("--file", file_text, "JSON polytope file");
  kb_cmd->add_option("--D", D, "Box discrepancy")->required();
  kb_cmd->add_option("--M", M, "Upper bound for sup |f|");
  kb_cmd->add_option("--rho", rho, "Modulus of continuity at D^{1/(d+1)}");

  auto* eq_cmd = app.add_subcommand("equidist", "Equidistribution error of log|P| on a Galois orbit");
  eq_cmd->add_option("--poly", poly_text, "Laurent polynomial, e.g. \"T1 - 1\"");
  eq_cmd->add_option("--omega", omega_text, "Torsion point angles")->required();
  eq_cmd->add_option("--vertices", vertices_text, "Region vertices, default the unit square");
  eq_cmd->add_option("--file", file_text, "JSON polytope file");
  eq_cmd->add_option("--boundary", boundary, "error | closed")->check(CLI::IsMember({"error", "closed"}));
  add_qmc(eq_cmd);

  auto* const_cmd = app.add_subcommand("constants", "Exact replay of the decay exponent and threshold constants");
  const_cmd->add_option("--d", d, "Dimension")->check(CLI::Range(2, static_cast<int>(kMaxConstantsDim)));
  const_cmd->add_option("--k", k, "Term bound")->check(CLI::Range(2, 1 << 20));
  const_cmd->add_option("--eps0", eps0_text, "Base parameter in (0,1)");
  const_cmd->add_option("--reading", reading, "max | min resolution of the C lists")->check(CLI::IsMember({"max", "min"}));
  const_cmd->add_option("--trace", trace_path, "Write the full trace as JSON");
  const_cmd->add_option("--c", c_text, "Coefficient height for the strictness threshold");
  const_cmd->add_option("--deg", deg_text, "Degree for the strictness threshold");

  auto* heights_cmd = app.add_subcommand("heights", "Heights of the intersection point");
  heights_cmd->add_option("--omega", omega_text, "Torsion point angles");
  auto* sweep_cmd = heights_cmd->add_subcommand("sweep", "Sweep (1/p, round(ratio p)/p) over primes");
  sweep_cmd->add_option("--primes", primes, "Range lo..hi");
  sweep_cmd->add_option("--ratio", ratio, "Second angle ratio")->check(CLI::Range(0.0, 1.0));
  sweep_cmd->add_option("--out", out_format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  sweep_cmd->add_option("--file", out_file, "Write the table here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::string command;
  try {
    if (*delta_cmd) {
      command = "delta";
      auto omega = parse_omega(omega_text);
      out.config["omega"] = torsion_json(omega)["angles"];
      auto s = strictness(omega);
      out.line("order", std::to_string(omega.order()));
      out.line("delta", std::to_string(s.degree));
      out.line("witness", ivector_text(s.witness));
      out.result = {{"order", omega.order()}, {"delta", s.degree}, {"witness", std::vector<std::int64_t>(s.witness.data(), s.witness.data() + s.witness.size())}};
    } else if (*orbit_cmd) {
      command = "orbit";
      auto omega = parse_omega(omega_text);
      out.config["omega"] = torsion_json(omega)["angles"];
      auto orbit = galois_orbit(omega);
      out.line("order", std::to_string(omega.order()));
      out.line("size", std::to_string(orbit.size()));
      Json pts = Json::array();
      for (const auto& w : orbit) {
        out.text << vector_text(w.angles()) << '\n';
        pts.push_back(rational_vector_json(w.angles()));
      }
      out.result = {{"order", omega.order()}, {"size", orbit.size()}, {"points", pts}};
    } else if (*disc_cmd) {
      command = "discrepancy";
      out.config["points"] = points_text;
      out.config["d"] = d;
      out.config["mode"] = mode;
      DiscrepancyOptions opts;
      out.config["seed"] = opts.seed;
      opts.mode = mode == "exact" ? DiscrepancyMode::Exact : mode == "estimate" ? DiscrepancyMode::Estimate : DiscrepancyMode::Auto;
      auto pts = parse_points(points_text, d);
      auto rep = box_discrepancy(pts, opts);
      if (isotropic) {
        auto iso = isotropic_bounds(pts, rep, opts);
        rep.J_lower = iso.lower;
        rep.J_upper = iso.upper;
      }
      out.line("n", std::to_string(pts.size()));
      out.line("D", out.num(rep.D));
      if (rep.D_exact) out.line("D_exact", to_string(*rep.D_exact));
      out.line("exact", rep.exact ? "true" : "false (sampled lower bound)");
      out.line("J_lower", out.num(rep.J_lower));
      out.line("J_upper", out.num(rep.J_upper));
      out.result = discrepancy_json(rep);
      out.result["n"] = pts.size();
    } else if (*poly_cmd) {
      command = "polytope";
      if (vertices_text.empty() && file_text.empty()) throw UsageError("polytope needs --vertices or --file");
      auto p = parse_polytope(vertices_text, file_text);
      out.config["vertices"] = polytope_json(p)["vertices"];
      out.result = polytope_json(p);
      out.line("dimension", std::to_string(p.dimension()));
      out.line("vertices", std::to_string(p.vertices().size()));
      out.line("facets", std::to_string(p.facet_count()));
      out.line("volume", to_string(volume(p)));
      out.line("diameter", to_string(diameter(p)));
      out.result["diameter"] = to_string(diameter(p));
      if (p.is_full_dimensional()) {
        auto s = surface_area(p);
        auto ball = inradius_and_center(p);
        out.line("surface_area", out.num(s.estimate) + " in [" + out.num(to_double(s.lower)) + ", " + out.num(to_double(s.upper)) + "]");
        out.line("inradius", to_string(ball.radius));
        out.line("center", vector_text(ball.center));
        out.result["surface_area"] = s.estimate;
        out.result["inradius"] = to_string(ball.radius);
        out.result["center"] = rational_vector_json(ball.center);
        if (!eps_text.empty()) {
          auto eps = parse_rational_arg("--eps", eps_text);
          out.config["eps"] = to_string(eps);
          auto b = shell_volume_bound(p, eps);
          out.line("shell_volume", to_string(b.exact));
          out.line("shell_bound", out.num(b.bound.estimate));
          out.line("shell_bound_holds", b.holds ? "true" : "false");
          out.result["shell"] = {{"exact", to_string(b.exact)}, {"bound", b.bound.estimate}, {"holds", b.holds}};
        }
      }
    } else if (*kb_cmd) {
      command = "koksma-bound";
      auto p = parse_polytope(vertices_text.empty() && file_text.empty() ? unit_square_text(2) : vertices_text, file_text);
      out.config["vertices"] = polytope_json(p)["vertices"];
      out.config["D"] = D;
      out.config["M"] = M;
      out.config["rho"] = rho;
      auto r = polytope_koksma_bound(p, D, M, rho);
      out.line("rho_term", out.num(r.rho_term));
      out.line("inradius_term", out.num(r.inradius_term));
      out.line("isotropic_term", out.num(r.isotropic_term));
      out.line("shell_term", out.num(r.shell_term));
      out.line("total", out.num(r.total));
      out.result = {{"rho_term", r.rho_term},     {"inradius_term", r.inradius_term}, {"isotropic_term", r.isotropic_term},
                    {"shell_term", r.shell_term}, {"total", r.total},                 {"facets", r.stats.facets},
                    {"inradius", r.stats.inradius}, {"diameter", r.stats.diameter},   {"surface_area", r.stats.surface_area}};
    } else if (*eq_cmd) {
      command = "equidist";
      auto omega = parse_omega(omega_text);
      LaurentPolynomial poly;
      try {
        poly = LaurentPolynomial::parse(omega.dim(), poly_text);
      } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("bad --poly: ") + e.what());
      }
      auto region = parse_polytope(vertices_text.empty() && file_text.empty() ? unit_square_text(static_cast<int>(omega.dim())) : vertices_text, file_text);
      out.config["poly"] = poly.to_string();
      out.config["omega"] = torsion_json(omega)["angles"];
      out.config["vertices"] = polytope_json(region)["vertices"];
      out.config["boundary"] = boundary;
      out.config["qmc"] = {{"points", qmc.points}, {"shifts", qmc.shifts}, {"seed", qmc.seed}, {"tolerance", qmc.tolerance}};
      auto r = equidist_error(poly, region, omega, qmc, boundary == "closed" ? BoundaryPolicy::Closed : BoundaryPolicy::Error);
      out.line("n", std::to_string(r.n));
      out.line("count_in_polytope", std::to_string(r.count_in_polytope));
      out.line("boundary_hits", std::to_string(r.boundary_hits));
      out.line("lhs_sum", out.num(r.lhs_sum));
      out.line("integral", out.num(r.integral) + " +- " + out.num(r.integral_report.error_bar()));
      out.line("error", out.num(r.error));
      out.result = {{"n", r.n},           {"count_in_polytope", r.count_in_polytope}, {"boundary_hits", r.boundary_hits},
                    {"lhs_sum", r.lhs_sum}, {"integral", r.integral},               {"integral_error_bar", r.integral_report.error_bar()},
                    {"converged", r.integral_report.converged}, {"error", r.error}};
    } else if (*const_cmd) {
      command = "constants";
      auto eps0 = parse_rational_arg("--eps0", eps0_text);
      out.config["d"] = d;
      out.config["k"] = k;
      out.config["eps0"] = to_string(eps0);
      out.config["reading"] = reading;
      auto r = gamma_C(d, k, eps0, reading == "min" ? CReading::Min : CReading::Max);
      auto c = parse_rational_arg("--c", c_text), deg = parse_rational_arg("--deg", deg_text);
      auto threshold = strictness_threshold(r, c, deg);
      out.line("gamma", r.gamma.to_string());
      out.line("epsilon", r.epsilon.to_string());
      for (std::size_t i = 0; i < r.v.size(); ++i) out.line("v" + std::to_string(i + 1), to_string(r.v[i]));
      out.line("kappa", kappa(r).to_string());
      out.line("log2_C", r.C.log2().second.to_string());
      out.line("C_min_reading_log2", gamma_C(d, k, eps0, CReading::Min).C.log2().second.to_string());
      out.line("log2_threshold", threshold.log2().second.to_string());
      bool all = true;
      for (const auto& chk : verify_epsilon(r)) all = all && chk.holds;
      out.line("epsilon_checks", all ? "all hold" : "VIOLATED");
      out.result = constants_json(r);
      if (!trace_path.empty()) write_file(trace_path, constants_json(r).dump(2) + "\n");
      if (!all) throw ComputationError("epsilon re-verification failed");
    } else if (*heights_cmd) {
      if (*sweep_cmd) {
        command = "heights sweep";
        const auto dots = primes.find("..");
        if (dots == std::string::npos) throw UsageError("--primes expects lo..hi");
        std::int64_t lo = 0, hi = 0;
        try {
          lo = std::stoll(primes.substr(0, dots));
          hi = std::stoll(primes.substr(dots + 2));
        } catch (const std::exception&) {
          throw UsageError("--primes expects lo..hi");
        }
        out.config["primes"] = primes;
        out.config["ratio"] = ratio;
        auto all = golden_sweep(lo, hi, ratio);
        auto seq = strict_records(all);
        out.config["rows"] = "strict-record subsequence, " + std::to_string(seq.size()) + " of " + std::to_string(all.size()) + " points";
        auto rows = height_convergence_experiment(seq);
        std::string body;
        if (out_format == "csv") {
          body = height_csv(rows, out.precision);
        } else {
          Json arr = Json::array();
          for (const auto& r : rows)
            arr.push_back({{"order", r.report.order}, {"delta", r.report.delta}, {"h_arch", r.report.h_arch},
                           {"h_nonarch", r.report.h_nonarch}, {"h_total", r.report.h_total}, {"gap", r.report.target_gap},
                           {"split_sum", r.split.sum}, {"clean", r.split.clean}});
          body = arr.dump(2) + "\n";
          out.result["rows"] = arr;
        }
        if (!rows.empty()) {
          out.result["gap_first"] = rows.front().report.target_gap;
          out.result["gap_last"] = rows.back().report.target_gap;
        }
        if (!out_file.empty()) {
          write_file(out_file, body);
          out.line("written", out_file);
        } else if (!out.json) {
          out.text << body;
        }
      } else {
        command = "heights";
        if (omega_text.empty()) throw UsageError("heights needs --omega or the sweep subcommand");
        auto omega = parse_omega(omega_text);
        out.config["omega"] = torsion_json(omega)["angles"];
        auto r = total_height(omega);
        auto split = height_decomposition(omega);
        out.line("order", std::to_string(r.order));
        out.line("delta", std::to_string(r.delta));
        out.line("h_arch", out.num(r.h_arch));
        out.line("h_nonarch", out.num(r.h_nonarch));
        out.line("h_total", out.num(r.h_total));
        out.line("limit", out.num(height_limit()));
        out.line("gap", out.num(r.target_gap));
        out.line("split_sum", out.num(split.sum));
        out.line("boundary_hits", std::to_string(split.boundary_hits));
        if (!split.clean) std::cerr << "warning: orbit angles on triangle boundaries; the split is not exact\n";
        out.result = {{"order", r.order}, {"delta", r.delta}, {"h_arch", r.h_arch}, {"h_nonarch", r.h_nonarch},
                      {"h_total", r.h_total}, {"limit", height_limit()}, {"gap", r.target_gap},
                      {"split", split.per_triangle}, {"split_sum", split.sum}, {"boundary_hits", split.boundary_hits}};
      }
    }
    out.config["precision"] = out.precision;
    out.emit(command);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    if (out.json)
      std::cout << Json{{"command", command}, {"error", e.what()}}.dump() << '\n';
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
