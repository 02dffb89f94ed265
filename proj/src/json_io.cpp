#include "entromin/json_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "entromin/errors.hpp"

namespace entromin {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw SpecParseError(path + ": " + what);
}

const json& require(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(path + "." + key, "missing");
  return *it;
}

void reject_unknown(const json& j, const std::set<std::string>& allowed,
                    const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  for (const auto& item : j.items())
    if (!allowed.contains(item.key()))
      fail(path + "." + item.key(), "unknown field");
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

long as_integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<long>();
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

Eigen::VectorXd as_vector(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of numbers");
  Eigen::VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    v[static_cast<Eigen::Index>(i)] =
        as_number(j[i], path + "[" + std::to_string(i) + "]");
  return v;
}

QuadratureRule parse_rule(const json& j, const std::string& path) {
  const std::string rule = as_string(j, path);
  if (rule == "gauss_legendre") return QuadratureRule::GaussLegendreComposite;
  if (rule == "trapezoid") return QuadratureRule::Trapezoid;
  fail(path, "unknown rule '" + rule + "'");
}

struct BasisDescriptor {
  bool monomial;
  int degree;
  Eigen::VectorXd values;
};

std::vector<BasisDescriptor> parse_basis(const json& j,
                                         const std::string& path) {
  if (!j.is_array() || j.empty())
    fail(path, "expected a non-empty array of basis functions");
  std::vector<BasisDescriptor> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string at = path + "[" + std::to_string(k) + "]";
    const json& e = j[k];
    const std::string kind = as_string(require(e, "kind", at), at + ".kind");
    if (kind == "monomial") {
      reject_unknown(e, {"kind", "degree"}, at);
      const long deg = as_integer(require(e, "degree", at), at + ".degree");
      if (deg < 0) fail(at + ".degree", "must be >= 0");
      out.push_back({true, static_cast<int>(deg), {}});
    } else if (kind == "tabulated") {
      reject_unknown(e, {"kind", "values"}, at);
      out.push_back(
          {false, -1, as_vector(require(e, "values", at), at + ".values")});
    } else {
      fail(at + ".kind", "unknown basis kind '" + kind + "'");
    }
  }
  return out;
}

// Radius fallback for real-line grids: a scale guess from the targets when
// the basis is the (1, t, t^2) family, else a plain 10.
double default_radius(const std::vector<BasisDescriptor>& basis,
                      const Eigen::VectorXd& targets) {
  if (basis.size() == 3 && targets.size() == 3 && targets[0] > 0.0 &&
      targets[2] > 0.0) {
    bool monomials = true;
    for (int k = 0; k < 3; ++k)
      monomials = monomials && basis[k].monomial && basis[k].degree == k;
    if (monomials) return 10.0 * std::sqrt(targets[2] / targets[0]);
  }
  return 10.0;
}

DiscretizedMeasure parse_measure(const json& j,
                                 const std::vector<BasisDescriptor>& basis,
                                 const Eigen::VectorXd& targets) {
  const std::string path = "measure";
  const std::string kind = as_string(require(j, "kind", path), path + ".kind");
  if (kind == "interval") {
    reject_unknown(j, {"kind", "lo", "hi", "n", "rule"}, path);
    const double lo = as_number(require(j, "lo", path), path + ".lo");
    const double hi = as_number(require(j, "hi", path), path + ".hi");
    const long n = as_integer(require(j, "n", path), path + ".n");
    QuadratureRule rule = QuadratureRule::GaussLegendreComposite;
    if (j.contains("rule")) rule = parse_rule(j["rule"], path + ".rule");
    try {
      return DiscretizedMeasure::interval(lo, hi, n, rule);
    } catch (const BadGrid& e) {
      fail(path, e.what());
    }
  }
  if (kind == "real_line") {
    reject_unknown(j, {"kind", "radius", "n", "rule"}, path);
    const double radius = j.contains("radius")
                              ? as_number(j["radius"], path + ".radius")
                              : default_radius(basis, targets);
    const long n =
        j.contains("n") ? as_integer(j["n"], path + ".n") : 400;
    QuadratureRule rule = QuadratureRule::GaussLegendreComposite;
    if (j.contains("rule")) rule = parse_rule(j["rule"], path + ".rule");
    try {
      return DiscretizedMeasure::real_line(radius, n, rule);
    } catch (const BadGrid& e) {
      fail(path, e.what());
    }
  }
  if (kind == "counting") {
    reject_unknown(j, {"kind", "n"}, path);
    const long n = as_integer(require(j, "n", path), path + ".n");
    try {
      return DiscretizedMeasure::counting(n);
    } catch (const BadGrid& e) {
      fail(path, e.what());
    }
  }
  fail(path + ".kind", "unknown measure kind '" + kind + "'");
}

void parse_options(const json& j, ProblemSpec& spec) {
  reject_unknown(j, {"solver", "certificate", "oracle"}, "options");
  if (j.contains("solver")) {
    const json& s = j["solver"];
    reject_unknown(s, {"tol", "max_iter", "init"}, "options.solver");
    if (s.contains("tol")) {
      spec.solver.tol_moments = as_number(s["tol"], "options.solver.tol");
      if (!(spec.solver.tol_moments > 0.0))
        fail("options.solver.tol", "must be > 0");
    }
    if (s.contains("max_iter")) {
      spec.solver.max_iter = static_cast<int>(
          as_integer(s["max_iter"], "options.solver.max_iter"));
      if (spec.solver.max_iter < 1)
        fail("options.solver.max_iter", "must be >= 1");
    }
    if (s.contains("init")) {
      const std::string init = as_string(s["init"], "options.solver.init");
      if (init == "zeros")
        spec.solver.init = InitStrategy::Zeros;
      else if (init == "lsq")
        spec.solver.init = InitStrategy::LeastSquaresLogDensity;
      else
        fail("options.solver.init", "expected 'zeros' or 'lsq'");
    }
  }
  if (j.contains("certificate")) {
    const json& c = j["certificate"];
    reject_unknown(c,
                   {"feasibility_tol", "lmm_tol", "dd_tol", "directions",
                    "seed", "boundary_atol"},
                   "options.certificate");
    if (c.contains("feasibility_tol"))
      spec.certificate.feasibility_tol =
          as_number(c["feasibility_tol"], "options.certificate.feasibility_tol");
    if (c.contains("lmm_tol"))
      spec.certificate.lmm_tol =
          as_number(c["lmm_tol"], "options.certificate.lmm_tol");
    if (c.contains("dd_tol"))
      spec.certificate.dd_tol =
          as_number(c["dd_tol"], "options.certificate.dd_tol");
    if (c.contains("directions")) {
      spec.certificate.directions = static_cast<int>(
          as_integer(c["directions"], "options.certificate.directions"));
      if (spec.certificate.directions < 1)
        fail("options.certificate.directions", "must be >= 1");
    }
    if (c.contains("seed")) {
      const long seed = as_integer(c["seed"], "options.certificate.seed");
      if (seed < 0) fail("options.certificate.seed", "must be >= 0");
      spec.certificate.seed = static_cast<std::uint64_t>(seed);
    }
    if (c.contains("boundary_atol"))
      spec.certificate.boundary_atol =
          as_number(c["boundary_atol"], "options.certificate.boundary_atol");
  }
  if (j.contains("oracle")) {
    const json& o = j["oracle"];
    reject_unknown(o, {"step", "max_iter", "tol"}, "options.oracle");
    if (o.contains("step"))
      spec.oracle.step = as_number(o["step"], "options.oracle.step");
    if (o.contains("max_iter"))
      spec.oracle.max_iter = as_integer(o["max_iter"], "options.oracle.max_iter");
    if (o.contains("tol"))
      spec.oracle.tol = as_number(o["tol"], "options.oracle.tol");
    if (!(spec.oracle.step > 0.0) || !(spec.oracle.tol > 0.0) ||
        spec.oracle.max_iter < 1)
      fail("options.oracle", "step, tol must be > 0 and max_iter >= 1");
  }
}

json ext_to_json(double v) {
  if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
  return json(v);
}

json vector_to_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

}  // namespace

ProblemSpec parse_problem_spec(const json& j) {
  reject_unknown(j, {"entropy", "measure", "basis", "targets", "options"},
                 "spec");
  const json& entropy_j = require(j, "entropy", "spec");
  reject_unknown(entropy_j, {"family"}, "entropy");
  const std::string family =
      as_string(require(entropy_j, "family", "entropy"), "entropy.family");
  EntropyFunction entropy = [&] {
    try {
      return EntropyFunction::from_name(family);
    } catch (const SpecParseError&) {
      fail("entropy.family", "unknown entropy family '" + family + "'");
    }
  }();

  const Eigen::VectorXd targets =
      as_vector(require(j, "targets", "spec"), "targets");
  const std::vector<BasisDescriptor> descriptors =
      parse_basis(require(j, "basis", "spec"), "basis");
  if (static_cast<Eigen::Index>(descriptors.size()) != targets.size())
    fail("targets", "length " + std::to_string(targets.size()) +
                        " does not match " +
                        std::to_string(descriptors.size()) +
                        " basis functions");

  DiscretizedMeasure measure =
      parse_measure(require(j, "measure", "spec"), descriptors, targets);

  std::vector<BasisFunction> basis;
  basis.reserve(descriptors.size());
  for (std::size_t k = 0; k < descriptors.size(); ++k) {
    const BasisDescriptor& d = descriptors[k];
    try {
      basis.push_back(d.monomial ? BasisFunction::monomial(d.degree)
                                 : BasisFunction::tabulated(d.values));
    } catch (const Error& e) {
      fail("basis[" + std::to_string(k) + "]", e.what());
    }
  }

  ProblemSpec spec{
      [&]() -> MomentProblem {
        try {
          return MomentProblem(entropy, std::move(measure), std::move(basis),
                               targets);
        } catch (const Error& e) {
          fail("spec", e.what());
        }
      }(),
      SolverOptions{}, CertifyOptions{}, OracleOptions{}};

  if (j.contains("options")) parse_options(j["options"], spec);
  return spec;
}

ProblemSpec parse_problem_spec_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SpecParseError(std::string("invalid JSON: ") + e.what());
  }
  return parse_problem_spec(j);
}

ProblemSpec load_problem_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecParseError("cannot open spec file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem_spec_text(buf.str());
}

json problem_echo_json(const ProblemSpec& spec) {
  const MomentProblem& p = spec.problem;
  json measure;
  switch (p.measure().kind()) {
    case GridKind::RealLineTruncated:
      measure = {{"kind", "real_line"},
                 {"radius", p.measure().radius()},
                 {"n", p.measure().size()}};
      break;
    case GridKind::CountingTruncated:
      measure = {{"kind", "counting"}, {"n", p.measure().size()}};
      break;
    default:
      measure = {{"kind", "interval"},
                 {"lo", p.measure().nodes().minCoeff()},
                 {"hi", p.measure().nodes().maxCoeff()},
                 {"n", p.measure().size()}};
      break;
  }
  json basis = json::array();
  for (const BasisFunction& b : p.basis()) {
    if (b.is_monomial())
      basis.push_back({{"kind", "monomial"}, {"degree", b.degree()}});
    else
      basis.push_back({{"kind", "tabulated"},
                       {"values", vector_to_json(b.tabulated_values())}});
  }
  return {{"entropy", {{"family", std::string(p.entropy().name())}}},
          {"measure", measure},
          {"basis", basis},
          {"targets", vector_to_json(p.targets())},
          {"options",
           {{"solver",
             {{"tol", spec.solver.tol_moments},
              {"max_iter", spec.solver.max_iter},
              {"init", spec.solver.init == InitStrategy::Zeros ? "zeros"
                                                               : "lsq"}}},
            {"certificate",
             {{"feasibility_tol", spec.certificate.feasibility_tol},
              {"lmm_tol", spec.certificate.lmm_tol},
              {"dd_tol", spec.certificate.dd_tol},
              {"directions", spec.certificate.directions},
              {"seed", spec.certificate.seed},
              {"boundary_atol", spec.certificate.boundary_atol}}},
            {"oracle",
             {{"step", spec.oracle.step},
              {"max_iter", spec.oracle.max_iter},
              {"tol", spec.oracle.tol}}}}}};
}

json solve_report_json(const SolveReport& r) {
  return {{"x_values", vector_to_json(r.x_values)},
          {"alpha", vector_to_json(r.alpha)},
          {"entropy", r.entropy},
          {"moment_residual", vector_to_json(r.moment_residual)},
          {"lmm_residual", ext_to_json(r.lmm_residual)},
          {"iterations", r.iterations},
          {"converged", r.converged},
          {"stop_reason", r.stop_reason}};
}

json certificate_json(const CertificateStatus& c) {
  json j = {{"feasible", c.feasible},
            {"feasibility_residual", c.feasibility_residual},
            {"directions_checked", c.directions_checked},
            {"verdict", std::string(verdict_name(c.verdict))}};
  j["lmm_residual"] =
      c.lmm_residual ? ext_to_json(*c.lmm_residual) : json(nullptr);
  j["min_directional_derivative"] = c.min_directional_derivative
                                        ? ext_to_json(*c.min_directional_derivative)
                                        : json(nullptr);
  return j;
}

json feasibility_json(const FeasibilityVerdict& v) {
  return {{"class", std::string(feasibility_class_name(v.cls))},
          {"discriminant", v.discriminant},
          {"note", v.note}};
}

json compare_json(const CompareReport& c) {
  return {{"sup_diff", c.sup_diff},
          {"weighted_l1_diff", c.weighted_l1_diff},
          {"objective_gap", c.objective_gap},
          {"sup_tol", c.sup_tol},
          {"objective_tol", c.objective_tol},
          {"agree", c.agree}};
}

std::string_view verdict_name(CertificateVerdict v) {
  switch (v) {
    case CertificateVerdict::CertifiedOptimal: return "CertifiedOptimal";
    case CertificateVerdict::FeasibleNotCertified:
      return "FeasibleNotCertified";
    case CertificateVerdict::Infeasible: return "Infeasible";
  }
  return "";
}

std::string_view feasibility_class_name(FeasibilityClass c) {
  switch (c) {
    case FeasibilityClass::Origin: return "Origin";
    case FeasibilityClass::FeasibleInterior: return "FeasibleInterior";
    case FeasibilityClass::InfeasibleBoundary: return "InfeasibleBoundary";
    case FeasibilityClass::Infeasible: return "Infeasible";
  }
  return "";
}

std::string dump_report(const json& j) { return j.dump(2) + "\n"; }

}  // namespace entromin
