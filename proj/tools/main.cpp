#include <CLI11.hpp>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "entromin/certificate.hpp"
#include "entromin/dual_solver.hpp"
#include "entromin/errors.hpp"
#include "entromin/json_io.hpp"
#include "entromin/oracle.hpp"

namespace {

using entromin::CertificateStatus;
using entromin::CertificateVerdict;
using entromin::FeasibilityClass;
using entromin::GridFunction;
using entromin::ProblemSpec;
using entromin::SolveReport;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kNotConverged = 2;
constexpr int kInfeasible = 3;
constexpr int kNotCertified = 4;
constexpr int kDisagree = 5;

struct CommonFlags {
  std::string out;
  std::optional<double> tol;
  std::optional<int> max_iter;
  std::optional<int> directions;
  std::optional<std::uint64_t> seed;
  std::string init;
  bool timing = false;
};

void add_common_flags(CLI::App* cmd, CommonFlags& fl) {
  cmd->add_option("--out", fl.out, "Write the JSON report here instead of stdout");
  cmd->add_option("--tol", fl.tol, "Moment residual tolerance for the solver");
  cmd->add_option("--max-iter", fl.max_iter, "Newton iteration cap");
  cmd->add_option("--directions", fl.directions,
                  "Number of sampled feasible directions");
  cmd->add_option("--seed", fl.seed, "Seed for direction sampling");
  cmd->add_option("--init", fl.init, "Solver initialization")
      ->check(CLI::IsMember({"zeros", "lsq"}));
  cmd->add_flag("--timing", fl.timing, "Include wall-clock timings in the report");
}

void apply_flags(ProblemSpec& spec, const CommonFlags& fl) {
  if (fl.tol) spec.solver.tol_moments = *fl.tol;
  if (fl.max_iter) spec.solver.max_iter = *fl.max_iter;
  if (fl.directions) spec.certificate.directions = *fl.directions;
  if (fl.seed) spec.certificate.seed = *fl.seed;
  if (fl.init == "zeros") spec.solver.init = entromin::InitStrategy::Zeros;
  if (fl.init == "lsq")
    spec.solver.init = entromin::InitStrategy::LeastSquaresLogDensity;
}

void write_report(const json& j, const std::string& out) {
  const std::string text = entromin::dump_report(j);
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw entromin::Error("cannot write report to " + out);
  f << text;
}

json base_report(const ProblemSpec& spec) {
  json j;
  j["schema_version"] = entromin::kReportSchemaVersion;
  j["problem"] = entromin::problem_echo_json(spec);
  return j;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

int verdict_exit(CertificateVerdict v) {
  switch (v) {
    case CertificateVerdict::CertifiedOptimal: return kOk;
    case CertificateVerdict::FeasibleNotCertified: return kNotCertified;
    case CertificateVerdict::Infeasible: return kInfeasible;
  }
  return kUsage;
}

int run_solve(const std::string& spec_path, const CommonFlags& fl) {
  ProblemSpec spec = entromin::load_problem_spec(spec_path);
  apply_flags(spec, fl);

  const auto t0 = std::chrono::steady_clock::now();
  const SolveReport rep = entromin::solve(spec.problem, spec.solver);
  const double solve_s = seconds_since(t0);

  const auto t1 = std::chrono::steady_clock::now();
  const CertificateStatus cert = entromin::certify(
      rep.x_values, spec.problem, rep.alpha, spec.certificate);
  const double certify_s = seconds_since(t1);

  json out = base_report(spec);
  out["solve"] = entromin::solve_report_json(rep);
  out["certificate"] = entromin::certificate_json(cert);
  if (fl.timing)
    out["timing"] = {{"solve_seconds", solve_s},
                     {"certify_seconds", certify_s}};
  write_report(out, fl.out);

  if (!rep.converged) return kNotConverged;
  return verdict_exit(cert.verdict);
}

GridFunction load_candidate(const std::string& path, const ProblemSpec& spec) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw entromin::SpecParseError("cannot open candidate file: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw entromin::SpecParseError(std::string("candidate: invalid JSON: ") +
                                   e.what());
  }
  if (j.is_array()) {
    GridFunction x(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (!j[i].is_number())
        throw entromin::SpecParseError("candidate[" + std::to_string(i) +
                                       "]: expected a number");
      x[static_cast<Eigen::Index>(i)] = j[i].get<double>();
    }
    if (x.size() != spec.problem.num_nodes())
      throw entromin::SpecParseError(
          "candidate length " + std::to_string(x.size()) +
          " does not match the grid (" +
          std::to_string(spec.problem.num_nodes()) + " nodes)");
    return x;
  }
  if (j.is_object() && j.contains("named")) {
    const auto& named = j["named"];
    if (named.is_string() && named.get<std::string>() == "gaussian") {
      if (spec.problem.targets().size() != 3)
        throw entromin::SpecParseError(
            "candidate: named 'gaussian' needs three moment targets");
      const Eigen::Vector3d b = spec.problem.targets();
      return entromin::gaussian_solution(b).tabulate(spec.problem.measure());
    }
    throw entromin::SpecParseError("candidate: unknown named form");
  }
  throw entromin::SpecParseError(
      "candidate: expected a JSON array of node values or {\"named\": "
      "\"gaussian\"}");
}

int run_certify(const std::string& spec_path, const std::string& cand_path,
                const CommonFlags& fl) {
  ProblemSpec spec = entromin::load_problem_spec(spec_path);
  apply_flags(spec, fl);
  const GridFunction x = load_candidate(cand_path, spec);

  const auto t0 = std::chrono::steady_clock::now();
  const CertificateStatus cert =
      entromin::certify(x, spec.problem, std::nullopt, spec.certificate);
  const double certify_s = seconds_since(t0);

  json out = base_report(spec);
  out["certificate"] = entromin::certificate_json(cert);
  if (fl.timing) out["timing"] = {{"certify_seconds", certify_s}};
  write_report(out, fl.out);
  return verdict_exit(cert.verdict);
}

int run_feasible(double b1, double b2, double b3, const CommonFlags& fl) {
  const entromin::FeasibilityVerdict v =
      entromin::classify_gaussian_feasibility(Eigen::Vector3d(b1, b2, b3));
  std::cout << entromin::feasibility_class_name(v.cls)
            << " (discriminant " << v.discriminant << "): " << v.note << "\n";
  if (!fl.out.empty()) {
    json out;
    out["schema_version"] = entromin::kReportSchemaVersion;
    out["feasibility"] = entromin::feasibility_json(v);
    write_report(out, fl.out);
  }
  return (v.cls == FeasibilityClass::Origin ||
          v.cls == FeasibilityClass::FeasibleInterior)
             ? kOk
             : kInfeasible;
}

int run_compare(const std::string& spec_path, const CommonFlags& fl) {
  ProblemSpec spec = entromin::load_problem_spec(spec_path);
  apply_flags(spec, fl);

  const auto t0 = std::chrono::steady_clock::now();
  const SolveReport rep = entromin::solve(spec.problem, spec.solver);
  const double solve_s = seconds_since(t0);

  json out = base_report(spec);
  out["solve"] = entromin::solve_report_json(rep);
  if (!rep.converged) {
    write_report(out, fl.out);
    return kNotConverged;
  }

  const auto t1 = std::chrono::steady_clock::now();
  const GridFunction oracle_x =
      entromin::primal_solve(spec.problem, spec.oracle);
  const double oracle_s = seconds_since(t1);

  const entromin::CompareReport cmp =
      entromin::compare(rep, oracle_x, spec.problem);
  out["oracle"] = {{"x_values", [&] {
                      json a = json::array();
                      for (Eigen::Index i = 0; i < oracle_x.size(); ++i)
                        a.push_back(oracle_x[i]);
                      return a;
                    }()},
                   {"objective",
                    entromin::entropy_value(spec.problem.entropy(), oracle_x,
                                            spec.problem.measure())
                        .value()}};
  out["compare"] = entromin::compare_json(cmp);
  if (fl.timing)
    out["timing"] = {{"solve_seconds", solve_s},
                     {"oracle_seconds", oracle_s}};
  write_report(out, fl.out);
  return cmp.agree ? kOk : kDisagree;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convex entropy minimization under moment constraints"};
  app.require_subcommand(1);

  std::string spec_path, cand_path;
  double b1 = 0, b2 = 0, b3 = 0;
  CommonFlags solve_fl, certify_fl, feasible_fl, compare_fl;

  CLI::App* solve_cmd =
      app.add_subcommand("solve", "Solve a problem and certify the result");
  solve_cmd->add_option("spec", spec_path, "Problem spec file")->required();
  add_common_flags(solve_cmd, solve_fl);

  CLI::App* certify_cmd =
      app.add_subcommand("certify", "Certify a candidate density");
  certify_cmd->add_option("spec", spec_path, "Problem spec file")->required();
  certify_cmd
      ->add_option("candidate", cand_path,
                   "Candidate file: JSON array or {\"named\": \"gaussian\"}")
      ->required();
  add_common_flags(certify_cmd, certify_fl);

  CLI::App* feasible_cmd = app.add_subcommand(
      "feasible", "Classify Gaussian-moment targets (b1, b2, b3)");
  feasible_cmd->add_option("b1", b1, "mass target")->required();
  feasible_cmd->add_option("b2", b2, "first moment target")->required();
  feasible_cmd->add_option("b3", b3, "second moment target")->required();
  feasible_cmd->add_option("--out", feasible_fl.out,
                           "Write a JSON verdict report here");

  CLI::App* compare_cmd = app.add_subcommand(
      "compare", "Cross-validate the solver against the primal oracle");
  compare_cmd->add_option("spec", spec_path, "Problem spec file")->required();
  add_common_flags(compare_cmd, compare_fl);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (solve_cmd->parsed()) return run_solve(spec_path, solve_fl);
    if (certify_cmd->parsed())
      return run_certify(spec_path, cand_path, certify_fl);
    if (feasible_cmd->parsed()) return run_feasible(b1, b2, b3, feasible_fl);
    if (compare_cmd->parsed()) return run_compare(spec_path, compare_fl);
  } catch (const entromin::InfeasibleTargets& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const entromin::NotConverged& e) {
    std::cerr << "not converged: " << e.what() << "\n";
    return kNotConverged;
  } catch (const entromin::NoInteriorPoint& e) {
    std::cerr << "oracle failed: " << e.what() << "\n";
    return kNotConverged;
  } catch (const entromin::InitFailure& e) {
    std::cerr << "solver initialization failed: " << e.what() << "\n";
    return kNotConverged;
  } catch (const entromin::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
