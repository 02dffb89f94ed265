"""Convex entropy minimization under finitely many moment constraints."""

from entromin._entromin import (
    BadGrid,
    BadVariance,
    BasisFunction,
    CertificateStatus,
    CertificateVerdict,
    CertifyOptions,
    CompareReport,
    DiscretizedMeasure,
    DomainError,
    EntropyFamily,
    EntropyFunction,
    Error,
    FeasibilityClass,
    FeasibilityVerdict,
    GaussianSolution,
    InfeasibleTargets,
    InitFailure,
    InitStrategy,
    InteriorityReport,
    LengthMismatch,
    LinkDomainError,
    MomentProblem,
    NoInteriorPoint,
    NotConverged,
    OracleOptions,
    ProblemSpec,
    QuadratureRule,
    RankDeficientBasis,
    SolveReport,
    SolverOptions,
    SpecParseError,
    affine_project,
    best_multipliers,
    certify,
    check_interiority,
    classify_gaussian_feasibility,
    compare,
    directional_derivative,
    directional_derivative_along,
    entropy_value,
    feasibility_residual,
    gaussian_solution,
    holder_bound,
    init_multipliers,
    integrate,
    link_density,
    lmm_residual,
    load_spec,
    mean_variance_targets,
    moment_map,
    moments,
    parse_spec,
    primal_solve,
    sample_feasible_directions,
    solve,
)

__all__ = [
    "BadGrid",
    "BadVariance",
    "BasisFunction",
    "CertificateStatus",
    "CertificateVerdict",
    "CertifyOptions",
    "CompareReport",
    "DiscretizedMeasure",
    "DomainError",
    "EntropyFamily",
    "EntropyFunction",
    "Error",
    "FeasibilityClass",
    "FeasibilityVerdict",
    "GaussianSolution",
    "InfeasibleTargets",
    "InitFailure",
    "InitStrategy",
    "InteriorityReport",
    "LengthMismatch",
    "LinkDomainError",
    "MomentProblem",
    "NoInteriorPoint",
    "NotConverged",
    "OracleOptions",
    "ProblemSpec",
    "QuadratureRule",
    "RankDeficientBasis",
    "SolveReport",
    "SolverOptions",
    "SpecParseError",
    "affine_project",
    "best_multipliers",
    "certify",
    "check_interiority",
    "classify_gaussian_feasibility",
    "compare",
    "directional_derivative",
    "directional_derivative_along",
    "entropy_value",
    "feasibility_residual",
    "gaussian_solution",
    "holder_bound",
    "init_multipliers",
    "integrate",
    "link_density",
    "lmm_residual",
    "load_spec",
    "mean_variance_targets",
    "moment_map",
    "moments",
    "parse_spec",
    "primal_solve",
    "sample_feasible_directions",
    "solve",
]

__version__ = "0.1.0"
