#pragma once

#include <json.hpp>
#include <string>

#include "entromin/certificate.hpp"
#include "entromin/dual_solver.hpp"
#include "entromin/moment_problem.hpp"
#include "entromin/oracle.hpp"

namespace entromin {

inline constexpr const char* kReportSchemaVersion = "1";

// A parsed problem-spec file: the validated problem plus any option
// overrides it carried.
struct ProblemSpec {
  MomentProblem problem;
  SolverOptions solver;
  CertifyOptions certificate;
  OracleOptions oracle;
};

// Builds a ProblemSpec from the JSON document. Throws SpecParseError with a
// field-addressed message on invalid input.
ProblemSpec parse_problem_spec(const nlohmann::json& j);
ProblemSpec parse_problem_spec_text(const std::string& text);
ProblemSpec load_problem_spec(const std::string& path);

// Report fragments. Non-finite numbers are serialized as the strings "inf"
// and "-inf" since JSON has no literal for them.
nlohmann::json problem_echo_json(const ProblemSpec& spec);
nlohmann::json solve_report_json(const SolveReport& r);
nlohmann::json certificate_json(const CertificateStatus& c);
nlohmann::json feasibility_json(const FeasibilityVerdict& v);
nlohmann::json compare_json(const CompareReport& c);

std::string_view verdict_name(CertificateVerdict v);
std::string_view feasibility_class_name(FeasibilityClass c);

// Canonical report serialization: 2-space indent, LF, trailing newline.
std::string dump_report(const nlohmann::json& j);

}  // namespace entromin
