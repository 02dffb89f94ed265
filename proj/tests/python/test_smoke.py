import math

import numpy as np
import pytest

import entromin as em


def gaussian_problem(b, radius, n=400):
    return em.MomentProblem(
        em.EntropyFunction(em.EntropyFamily.BoltzmannShannon),
        em.DiscretizedMeasure.real_line(radius, n),
        [em.BasisFunction.monomial(k) for k in range(3)],
        np.asarray(b, dtype=float),
    )


def test_solve_standard_gaussian():
    p = gaussian_problem([1.0, 0.0, 1.0], 10.0)
    rep = em.solve(p)
    assert rep.converged
    assert rep.lmm_residual <= 1e-9
    assert abs(rep.entropy - (-math.log(math.sqrt(2 * math.pi * math.e)))) <= 1e-6

    x = np.asarray(rep.x_values)
    assert x.shape == (400,)
    assert np.all(x > 0)

    nodes = np.asarray(p.measure.nodes)
    ref = np.exp(-nodes**2 / 2) / math.sqrt(2 * math.pi)
    assert np.max(np.abs(x - ref)) <= 1e-6

    got = np.asarray(em.moments(rep.x_values, p))
    assert np.max(np.abs(got - np.array([1.0, 0.0, 1.0]))) <= 1e-9


def test_certificate_round_trip():
    p = gaussian_problem([1.0, 0.0, 1.0], 10.0)
    rep = em.solve(p)
    status = em.certify(rep.x_values, p, rep.alpha)
    assert status.verdict == em.CertificateVerdict.CertifiedOptimal
    assert status.feasible
    assert status.lmm_residual is not None and status.lmm_residual <= 1e-9

    uniform = np.full(p.num_nodes, 0.05)
    assert em.certify(uniform, p).verdict == em.CertificateVerdict.Infeasible


def test_feasibility_classification():
    cases = {
        (1.0, 0.0, 1.0): em.FeasibilityClass.FeasibleInterior,
        (1.0, 1.0, 1.0): em.FeasibilityClass.InfeasibleBoundary,
        (0.0, 0.0, 0.0): em.FeasibilityClass.Origin,
        (-1.0, 0.0, 1.0): em.FeasibilityClass.Infeasible,
    }
    for b, want in cases.items():
        assert em.classify_gaussian_feasibility(np.array(b)).cls == want


def test_closed_form_matches_solver():
    b = np.array([1.0, 0.7, 1.74])
    sol = em.gaussian_solution(b)
    p = gaussian_problem(b, 10.0 * math.sqrt(b[2] / b[0]))
    rep = em.solve(p)
    assert abs(rep.entropy - sol.entropy) <= 1e-6
    tab = np.asarray(sol.tabulate(p.measure))
    assert np.max(np.abs(np.asarray(rep.x_values) - tab)) <= 1e-6


def test_infeasible_targets_raise():
    p = gaussian_problem([1.0, 2.0, 1.0], 10.0)
    with pytest.raises(em.InfeasibleTargets):
        em.solve(p)
    assert issubclass(em.InfeasibleTargets, em.Error)


def test_oracle_agrees_on_quadratic():
    p = em.MomentProblem(
        em.EntropyFunction(em.EntropyFamily.Quadratic),
        em.DiscretizedMeasure.interval(0.0, 1.0, 33),
        [em.BasisFunction.monomial(0)],
        np.array([1.0]),
    )
    rep = em.solve(p)
    oracle = em.primal_solve(p)
    cmpres = em.compare(rep, oracle, p)
    assert cmpres.agree
    assert np.max(np.abs(np.asarray(oracle) - 1.0)) <= 1e-8


def test_spec_parsing():
    text = """
    {
      "entropy": {"family": "boltzmann_shannon"},
      "measure": {"kind": "real_line", "radius": 10.0, "n": 400},
      "basis": [
        {"kind": "monomial", "degree": 0},
        {"kind": "monomial", "degree": 1},
        {"kind": "monomial", "degree": 2}
      ],
      "targets": [1.0, 0.0, 1.0]
    }
    """
    spec = em.parse_spec(text)
    assert spec.problem.num_nodes == 400
    assert spec.problem.is_gaussian_pg3
    rep = em.solve(spec.problem, spec.solver)
    assert rep.converged

    with pytest.raises(em.SpecParseError):
        em.parse_spec("{}")


def test_directional_derivative_sign():
    m = em.DiscretizedMeasure.interval(0.0, 1.0, 16)
    f = em.EntropyFunction(em.EntropyFamily.BoltzmannShannon)
    xbar = np.full(16, 0.2)
    x = np.full(16, 0.8)
    dd = em.directional_derivative(xbar, x, f, m)
    # phi'(0.2) = 1 + ln 0.2 < 0 and x - xbar > 0 pointwise.
    assert dd < 0
    assert em.directional_derivative(xbar, xbar, f, m) == 0.0


def test_length_mismatch_raises():
    m = em.DiscretizedMeasure.interval(0.0, 1.0, 16)
    with pytest.raises(em.LengthMismatch):
        em.integrate(np.ones(5), m)
