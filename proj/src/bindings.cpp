#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "entromin/certificate.hpp"
#include "entromin/dual_solver.hpp"
#include "entromin/errors.hpp"
#include "entromin/json_io.hpp"
#include "entromin/moment_problem.hpp"
#include "entromin/oracle.hpp"

namespace py = pybind11;
using namespace entromin;

PYBIND11_MODULE(_entromin, m) {
  m.doc() = "Convex entropy minimization under moment constraints";

  // Exception hierarchy. Derived types are registered after their bases so
  // their translators run first.
  auto err = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  auto domain_err = py::register_exception<DomainError>(m, "DomainError", err);
  py::register_exception<LinkDomainError>(m, "LinkDomainError", domain_err);
  py::register_exception<BadGrid>(m, "BadGrid", err);
  py::register_exception<LengthMismatch>(m, "LengthMismatch", err);
  py::register_exception<BadVariance>(m, "BadVariance", err);
  py::register_exception<InfeasibleTargets>(m, "InfeasibleTargets", err);
  py::register_exception<RankDeficientBasis>(m, "RankDeficientBasis", err);
  py::register_exception<InitFailure>(m, "InitFailure", err);
  py::register_exception<NoInteriorPoint>(m, "NoInteriorPoint", err);
  py::register_exception<NotConverged>(m, "NotConverged", err);
  py::register_exception<SpecParseError>(m, "SpecParseError", err);

  py::enum_<EntropyFamily>(m, "EntropyFamily")
      .value("BoltzmannShannon", EntropyFamily::BoltzmannShannon)
      .value("BoltzmannShannonMinusU", EntropyFamily::BoltzmannShannonMinusU)
      .value("Burg", EntropyFamily::Burg)
      .value("Quadratic", EntropyFamily::Quadratic)
      .value("FermiDirac", EntropyFamily::FermiDirac);

  py::class_<EntropyFunction>(m, "EntropyFunction")
      .def(py::init<EntropyFamily>(), py::arg("family"))
      .def_static("from_name",
                  [](const std::string& s) { return EntropyFunction::from_name(s); },
                  py::arg("name"))
      .def_property_readonly("family", &EntropyFunction::family)
      .def_property_readonly("name",
                             [](const EntropyFunction& f) {
                               return std::string(f.name());
                             })
      .def("value",
           [](const EntropyFunction& f, double u) { return f.value(u).value(); },
           py::arg("u"))
      .def("derivative",
           [](const EntropyFunction& f, double u) {
             return f.derivative(u).value();
           },
           py::arg("u"))
      .def("second_derivative", &EntropyFunction::second_derivative, py::arg("u"))
      .def("link", &EntropyFunction::link, py::arg("s"))
      .def("link_derivative", &EntropyFunction::link_derivative, py::arg("s"))
      .def_property_readonly("domain_lo", &EntropyFunction::domain_lo)
      .def_property_readonly("domain_hi", &EntropyFunction::domain_hi)
      .def_property_readonly("lo_in_domain", &EntropyFunction::lo_in_domain)
      .def_property_readonly("hi_in_domain", &EntropyFunction::hi_in_domain)
      .def("in_domain", &EntropyFunction::in_domain, py::arg("u"))
      .def("in_closure", &EntropyFunction::in_closure, py::arg("u"))
      .def("in_interior", &EntropyFunction::in_interior, py::arg("u"))
      .def_property_readonly("link_domain_hi", &EntropyFunction::link_domain_hi)
      .def("in_link_domain", &EntropyFunction::in_link_domain, py::arg("s"));

  py::enum_<QuadratureRule>(m, "QuadratureRule")
      .value("GaussLegendreComposite", QuadratureRule::GaussLegendreComposite)
      .value("Trapezoid", QuadratureRule::Trapezoid);

  py::class_<DiscretizedMeasure>(m, "DiscretizedMeasure")
      .def_static("interval", &DiscretizedMeasure::interval, py::arg("lo"),
                  py::arg("hi"), py::arg("n"),
                  py::arg("rule") = QuadratureRule::GaussLegendreComposite)
      .def_static("real_line", &DiscretizedMeasure::real_line,
                  py::arg("radius"), py::arg("n"),
                  py::arg("rule") = QuadratureRule::GaussLegendreComposite)
      .def_static("counting", &DiscretizedMeasure::counting, py::arg("n"))
      .def_static("explicit_weighted", &DiscretizedMeasure::explicit_weighted,
                  py::arg("nodes"), py::arg("weights"))
      .def_property_readonly(
          "nodes",
          [](const DiscretizedMeasure& me) -> Eigen::VectorXd {
            return me.nodes();
          })
      .def_property_readonly(
          "weights",
          [](const DiscretizedMeasure& me) -> Eigen::VectorXd {
            return me.weights();
          })
      .def_property_readonly("size", &DiscretizedMeasure::size)
      .def("__len__", &DiscretizedMeasure::size);

  m.def("integrate",
        [](const GridFunction& f, const DiscretizedMeasure& me) {
          return integrate(f, me).value();
        },
        py::arg("f"), py::arg("measure"));
  m.def("entropy_value",
        [](const EntropyFunction& f, const GridFunction& x,
           const DiscretizedMeasure& me) {
          return entropy_value(f, x, me).value();
        },
        py::arg("entropy"), py::arg("x"), py::arg("measure"));

  py::class_<BasisFunction>(m, "BasisFunction")
      .def_static("monomial", &BasisFunction::monomial, py::arg("degree"))
      .def_static("tabulated", &BasisFunction::tabulated, py::arg("values"))
      .def_property_readonly("is_monomial", &BasisFunction::is_monomial)
      .def_property_readonly("degree", &BasisFunction::degree)
      .def("evaluate", &BasisFunction::evaluate, py::arg("measure"));

  py::class_<MomentProblem>(m, "MomentProblem")
      .def(py::init<EntropyFunction, DiscretizedMeasure,
                    std::vector<BasisFunction>, Eigen::VectorXd>(),
           py::arg("entropy"), py::arg("measure"), py::arg("basis"),
           py::arg("targets"))
      .def_property_readonly("entropy", &MomentProblem::entropy)
      .def_property_readonly("measure", &MomentProblem::measure)
      .def_property_readonly("basis", &MomentProblem::basis)
      .def_property_readonly(
          "targets",
          [](const MomentProblem& p) -> Eigen::VectorXd { return p.targets(); })
      .def_property_readonly("num_constraints", &MomentProblem::num_constraints)
      .def_property_readonly("num_nodes", &MomentProblem::num_nodes)
      .def_property_readonly(
          "basis_matrix",
          [](const MomentProblem& p) -> Eigen::MatrixXd {
            return p.basis_matrix();
          })
      .def_property_readonly("is_gaussian_pg3", &MomentProblem::is_gaussian_pg3);

  m.def("moments", &moments, py::arg("x"), py::arg("problem"));
  m.def("feasibility_residual", &feasibility_residual, py::arg("x"),
        py::arg("problem"));

  py::enum_<FeasibilityClass>(m, "FeasibilityClass")
      .value("Origin", FeasibilityClass::Origin)
      .value("FeasibleInterior", FeasibilityClass::FeasibleInterior)
      .value("InfeasibleBoundary", FeasibilityClass::InfeasibleBoundary)
      .value("Infeasible", FeasibilityClass::Infeasible);

  py::class_<FeasibilityVerdict>(m, "FeasibilityVerdict")
      .def_readonly("cls", &FeasibilityVerdict::cls)
      .def_readonly("discriminant", &FeasibilityVerdict::discriminant)
      .def_readonly("note", &FeasibilityVerdict::note);

  m.def("classify_gaussian_feasibility", &classify_gaussian_feasibility,
        py::arg("b"));
  m.def("holder_bound", &holder_bound, py::arg("x"), py::arg("measure"));

  py::class_<GaussianSolution>(m, "GaussianSolution")
      .def_readonly("alpha", &GaussianSolution::alpha)
      .def_readonly("beta", &GaussianSolution::beta)
      .def_readonly("gamma", &GaussianSolution::gamma)
      .def_readonly("entropy", &GaussianSolution::entropy)
      .def("density", &GaussianSolution::density, py::arg("t"))
      .def("tabulate", &GaussianSolution::tabulate, py::arg("measure"));

  m.def("gaussian_solution", &gaussian_solution, py::arg("b"));
  m.def("mean_variance_targets", &mean_variance_targets, py::arg("mean"),
        py::arg("sigma2"));

  py::enum_<InitStrategy>(m, "InitStrategy")
      .value("Zeros", InitStrategy::Zeros)
      .value("LeastSquaresLogDensity", InitStrategy::LeastSquaresLogDensity);

  py::class_<SolverOptions>(m, "SolverOptions")
      .def(py::init<>())
      .def_readwrite("tol_moments", &SolverOptions::tol_moments)
      .def_readwrite("max_iter", &SolverOptions::max_iter)
      .def_readwrite("init", &SolverOptions::init)
      .def_readwrite("max_halvings", &SolverOptions::max_halvings)
      .def_readwrite("armijo_c1", &SolverOptions::armijo_c1);

  py::class_<SolveReport>(m, "SolveReport")
      .def_readonly("x_values", &SolveReport::x_values)
      .def_readonly("alpha", &SolveReport::alpha)
      .def_readonly("entropy", &SolveReport::entropy)
      .def_readonly("moment_residual", &SolveReport::moment_residual)
      .def_readonly("lmm_residual", &SolveReport::lmm_residual)
      .def_readonly("iterations", &SolveReport::iterations)
      .def_readonly("converged", &SolveReport::converged)
      .def_readonly("stop_reason", &SolveReport::stop_reason);

  m.def("solve", &solve, py::arg("problem"),
        py::arg("options") = SolverOptions{});
  m.def("link_density", &link_density, py::arg("alpha"), py::arg("problem"));
  m.def("moment_map", &moment_map, py::arg("alpha"), py::arg("problem"));
  m.def("init_multipliers", &init_multipliers, py::arg("problem"),
        py::arg("strategy"));

  py::enum_<CertificateVerdict>(m, "CertificateVerdict")
      .value("CertifiedOptimal", CertificateVerdict::CertifiedOptimal)
      .value("FeasibleNotCertified", CertificateVerdict::FeasibleNotCertified)
      .value("Infeasible", CertificateVerdict::Infeasible);

  py::class_<CertifyOptions>(m, "CertifyOptions")
      .def(py::init<>())
      .def_readwrite("feasibility_tol", &CertifyOptions::feasibility_tol)
      .def_readwrite("lmm_tol", &CertifyOptions::lmm_tol)
      .def_readwrite("dd_tol", &CertifyOptions::dd_tol)
      .def_readwrite("directions", &CertifyOptions::directions)
      .def_readwrite("seed", &CertifyOptions::seed)
      .def_readwrite("boundary_atol", &CertifyOptions::boundary_atol);

  py::class_<CertificateStatus>(m, "CertificateStatus")
      .def_readonly("feasible", &CertificateStatus::feasible)
      .def_readonly("feasibility_residual",
                    &CertificateStatus::feasibility_residual)
      .def_readonly("lmm_residual", &CertificateStatus::lmm_residual)
      .def_readonly("directions_checked",
                    &CertificateStatus::directions_checked)
      .def_readonly("min_directional_derivative",
                    &CertificateStatus::min_directional_derivative)
      .def_readonly("verdict", &CertificateStatus::verdict);

  py::class_<InteriorityReport>(m, "InteriorityReport")
      .def_readonly("all_interior", &InteriorityReport::all_interior)
      .def_readonly("offending_nodes", &InteriorityReport::offending_nodes);

  m.def("directional_derivative",
        [](const GridFunction& xbar, const GridFunction& x,
           const EntropyFunction& f, const DiscretizedMeasure& me) {
          return directional_derivative(xbar, x, f, me).value();
        },
        py::arg("xbar"), py::arg("x"), py::arg("entropy"), py::arg("measure"));
  m.def("directional_derivative_along",
        [](const GridFunction& xbar, const GridFunction& u,
           const EntropyFunction& f, const DiscretizedMeasure& me) {
          return directional_derivative_along(xbar, u, f, me).value();
        },
        py::arg("xbar"), py::arg("u"), py::arg("entropy"), py::arg("measure"));
  m.def("lmm_residual", &lmm_residual, py::arg("xbar"), py::arg("alpha"),
        py::arg("problem"));
  m.def("best_multipliers", &best_multipliers, py::arg("xbar"),
        py::arg("problem"));
  m.def("sample_feasible_directions", &sample_feasible_directions,
        py::arg("problem"), py::arg("count"), py::arg("seed") = 0);
  m.def("check_interiority", &check_interiority, py::arg("xbar"),
        py::arg("entropy"));
  m.def("certify", &certify, py::arg("xbar"), py::arg("problem"),
        py::arg("alpha") = std::optional<Multipliers>{},
        py::arg("options") = CertifyOptions{});

  py::class_<OracleOptions>(m, "OracleOptions")
      .def(py::init<>())
      .def_readwrite("step", &OracleOptions::step)
      .def_readwrite("max_iter", &OracleOptions::max_iter)
      .def_readwrite("tol", &OracleOptions::tol)
      .def_readwrite("interior_margin", &OracleOptions::interior_margin)
      .def_readwrite("metric_refresh", &OracleOptions::metric_refresh);

  py::class_<CompareReport>(m, "CompareReport")
      .def_readonly("sup_diff", &CompareReport::sup_diff)
      .def_readonly("weighted_l1_diff", &CompareReport::weighted_l1_diff)
      .def_readonly("objective_gap", &CompareReport::objective_gap)
      .def_readonly("sup_tol", &CompareReport::sup_tol)
      .def_readonly("objective_tol", &CompareReport::objective_tol)
      .def_readonly("agree", &CompareReport::agree);

  m.def("affine_project", &affine_project, py::arg("x"), py::arg("problem"));
  m.def("primal_solve", &primal_solve, py::arg("problem"),
        py::arg("options") = OracleOptions{});
  m.def("compare", &compare, py::arg("report"), py::arg("oracle_x"),
        py::arg("problem"), py::arg("sup_tol") = 1e-4,
        py::arg("objective_tol") = 1e-6);

  py::class_<ProblemSpec>(m, "ProblemSpec")
      .def_readonly("problem", &ProblemSpec::problem)
      .def_readonly("solver", &ProblemSpec::solver)
      .def_readonly("certificate", &ProblemSpec::certificate)
      .def_readonly("oracle", &ProblemSpec::oracle);

  m.def("parse_spec", &parse_problem_spec_text, py::arg("text"));
  m.def("load_spec", &load_problem_spec, py::arg("path"));
}
