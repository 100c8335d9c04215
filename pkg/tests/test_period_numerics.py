# tests/test_period_numerics.py
import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.special import beta

from kummer_chow_verifier.config import FDScheme, QuadratureSpec
from kummer_chow_verifier.errors import DomainError, NoConvergence
from kummer_chow_verifier.sub_checks.period_numerics import tools
from kummer_chow_verifier.sub_checks.period_numerics.tools import (
    H,
    InhomogeneousResidual,
    _component,
    beta_errors,
    check_H_identity,
    check_homogeneous,
    check_inhomogeneous,
    check_one_dimensional_reduction,
    check_wronskian,
    eval_L,
    eval_L_by_rows,
    exact_rhs,
    fixed_signs,
    hypergeometric_period,
    period_P,
    quad_ts,
    reduction_integrals,
    ts_nodes,
)
from kummer_chow_verifier.sub_checks.rational_field.tools import BranchPoint


def test_nodes_are_symmetric_and_read_only():
    x, xc, w = ts_nodes(3, 4.5)
    assert_allclose(x + xc, 1.0, rtol=1e-15)
    assert_allclose(x, xc[::-1], rtol=1e-12)
    assert np.all(w > 0)
    with pytest.raises(ValueError):
        x[0] = 0.5


def test_beta_integral():
    value = quad_ts(lambda x, xc: 1.0 / np.sqrt(x * xc))
    assert value == pytest.approx(np.pi, rel=1e-10)
    assert value == pytest.approx(beta(0.5, 0.5), rel=1e-10)


def test_polynomial_is_exact():
    assert quad_ts(lambda x, xc: 3.0 * x ** 2) == pytest.approx(1.0, rel=1e-12)


def test_vector_valued_integrand():
    c = np.array([1.0, 2.0, 3.0])[:, None]
    values = quad_ts(lambda x, xc: c * x)
    assert_allclose(values, [0.5, 1.0, 1.5], rtol=1e-12)


def test_levels_converge_superlinearly():
    coarse, fine = beta_errors()
    assert fine <= coarse ** 1.5


def test_no_convergence_is_reported():
    spec = QuadratureSpec(target_tol=1e-13, max_level=4)
    with pytest.raises(NoConvergence):
        quad_ts(lambda x, xc: np.sin(200.0 * x), spec)


@pytest.mark.parametrize("c", [-0.5, -1.0, -1.8])
def test_p1_matches_hypergeometric(c):
    assert period_P(1, c).real == pytest.approx(hypergeometric_period(c), rel=1e-10)
    assert abs(period_P(1, c).imag) < 1e-14


def test_p2_is_imaginary_on_negative_axis():
    value = period_P(2, -1.0)
    assert abs(value.real) < 1e-12
    assert value.imag != 0.0


@pytest.mark.parametrize("c", [0.0, 0.5, 2.0])
def test_period_domain_guard(c):
    with pytest.raises(DomainError):
        period_P(1, c)


def test_periods_are_independent():
    assert check_wronskian(-1.0) < 1e6


def test_regulator_routes_and_symmetry(reference_point):
    value = eval_L(reference_point)
    assert value > 0
    assert eval_L_by_rows(reference_point) == pytest.approx(value, rel=1e-7)
    swapped = BranchPoint.principal(-2.0, -1.0)
    square = 2.0 * period_P(1, -1.0) * period_P(1, -2.0)
    assert value + eval_L(swapped) == pytest.approx(square.real, rel=1e-8)


def test_reduction_first_component_matches_closed_form(reference_point):
    first, _ = reduction_integrals(reference_point)
    expected_first, _ = exact_rhs(reference_point)
    assert first == pytest.approx(expected_first.real, rel=1e-8)


def test_reduction_second_component_up_to_sign(reference_point):
    report = check_one_dimensional_reduction(reference_point)
    assert report.within(1e-8)
    assert report.components[0].sign == "as_stated"
    assert report.signs()[1] in ("as_stated", "opposite")


def _residual(*pairs):
    return InhomogeneousResidual(point={"a": "-1", "b": "-2"},
                                 components=[_component(value, expected) for value, expected in pairs])


def test_fixed_signs_come_from_the_first_point():
    reports = [_residual((1.0, 1.0), (-2.0, 2.0)), _residual((3.0, 3.0), (-5.0, 5.0))]
    signs, disagreeing = fixed_signs(reports, 1e-6)
    assert signs == ["as_stated", "opposite"]
    assert disagreeing == []


def test_sign_flip_between_points_is_rejected():
    reports = [_residual((1.0, 1.0), (1.0, 1.0)), _residual((-1.0, 1.0), (1.0, 1.0))]
    assert all(r.within(1e-6) for r in reports)
    signs, disagreeing = fixed_signs(reports, 1e-6)
    assert signs == ["as_stated", "as_stated"]
    assert disagreeing == [reports[1]]


def test_fixed_signs_needs_reports():
    with pytest.raises(ValueError):
        fixed_signs([], 1e-6)


def test_inhomogeneous_check_fails_on_mixed_signs(monkeypatch, settings):
    reports = {-1.0: _residual((1.0, 1.0), (-1.0, 1.0)), -3.0: _residual((1.0, 1.0), (1.0, 1.0))}
    points = [BranchPoint.principal(-1.0, -2.0), BranchPoint.principal(-3.0, -2.0)]
    monkeypatch.setattr(tools, "_sample_points", lambda s: points)
    monkeypatch.setattr(tools, "check_inhomogeneous", lambda p, fd, spec: reports[p.a])
    result = tools.check_pf_inhomogeneous(settings)
    assert result.status == "fail"
    assert result.details["component_signs"] == ["as_stated", "opposite"]
    assert len(result.witness["reports"]) == 1


def test_h_identity():
    assert check_H_identity(-1.0, 0.3) < 1e-5
    assert H(-1.0, 0.0) == 0.0
    with pytest.raises(DomainError):
        check_H_identity(-1.0, 1.5)


@pytest.mark.slow
def test_homogeneous_residuals(reference_point):
    residuals = check_homogeneous(reference_point)
    assert set(residuals) == {"P1P1", "P1P2", "P2P1", "P2P2"}
    assert max(residuals.values()) <= 1e-5


@pytest.mark.slow
def test_inhomogeneous_residuals(reference_point):
    report = check_inhomogeneous(reference_point, FDScheme())
    assert report.within(1e-4)


@pytest.mark.slow
def test_suite_checks_pass(settings):
    for check in (tools.check_quadrature_oracles, tools.check_period_ode, tools.check_triangle_routes,
                  tools.check_reduction, tools.check_h_identity):
        assert check(settings).passed
