# tests/test_diffop_engine.py
import pytest

from kummer_chow_verifier.errors import NonMobiusPullback, OperatorOrderExceeded
from kummer_chow_verifier.sub_checks.cocycles.tools import chi
from kummer_chow_verifier.sub_checks.diffop_engine import tools
from kummer_chow_verifier.sub_checks.diffop_engine.tools import (
    IDENTITY_OP,
    DifferentialOperator,
    apply_pf,
    build_pf,
    d,
    mult,
    op_add,
    op_apply,
    op_compose,
    psi,
    pullback_operator,
    rho_a,
    rho_b,
    seed_image,
    theta,
    transformed_pf_operator,
    verify_pullback_intertwining,
    verify_transformation,
)
from kummer_chow_verifier.sub_checks.group_engine.tools import (
    BASE_ORDER,
    gt_factor_all,
    gt_identity,
    gx_identity,
    gx_is_valid,
    gx_mul,
    gx_random,
)
from kummer_chow_verifier.sub_checks.rational_field.tools import (
    A,
    A_EL,
    B_EL,
    ONE,
    SQRT_A,
    SQRT_B,
    SQRT_1MB,
    ZERO,
    K,
    FieldHom,
    fe_from_rational,
    fe_mul,
    random_element,
)


def test_order_bound():
    with pytest.raises(OperatorOrderExceeded):
        DifferentialOperator.from_mapping({(3, 2): ONE})
    assert DifferentialOperator.from_mapping({(3, 2): ZERO, (1, 0): ONE}) == d("a")


def test_commutator_of_d_and_a():
    # d_a o a - a o d_a = 1
    lhs = op_compose(d("a"), mult(A_EL))
    rhs = op_add(op_compose(mult(A_EL), d("a")), IDENTITY_OP)
    assert lhs == rhs


def test_composition_is_associative(rng):
    f, g = random_element(rng, max_terms=1), random_element(rng, max_terms=1)
    D, E, F = mult(f), d("a"), op_compose(mult(g), d("b"))
    assert op_compose(op_compose(D, E), F) == op_compose(D, op_compose(E, F))


def test_pf_on_constants():
    pf = build_pf()
    # D_1(1) = -1/4
    assert op_apply(pf.first, ONE) == fe_from_rational(K(-1) / 4)
    first, second = apply_pf(ONE)
    assert first == second


def test_transformed_operator_literals():
    by_label = {base.label: transformed_pf_operator(base) for base in BASE_ORDER}
    assert by_label["id"] == build_pf().first
    assert by_label["(0 1)"] == by_label["id"]
    assert by_label["(1 inf)"] == by_label["(0 1 inf)"]
    assert by_label["(0 inf)"] == by_label["(0 inf 1)"]
    assert by_label["(0 inf)"].coeff(1, 0) == fe_from_rational(A ** 2)


@pytest.mark.parametrize("t", range(24))
def test_transformation_law_on_first_factor(t):
    assert verify_transformation((t, gt_identity()))


def test_transformation_matches_literal():
    for t in gt_factor_all():
        assert tools._conjugated_pf(t.index, 1) == transformed_pf_operator(t.base)


def test_pullback_intertwines(rng):
    for t in (3, 9, 17):
        assert verify_pullback_intertwining((t, t), random_element(rng, max_terms=1))


def test_non_mobius_pullback_is_rejected():
    a_squared = fe_from_rational(A ** 2)
    h = FieldHom(a_squared, B_EL, A_EL, ONE, SQRT_B, SQRT_1MB, validate=False)
    with pytest.raises(NonMobiusPullback):
        pullback_operator(build_pf().first, h)


def test_theta_respects_products(rng):
    v = seed_image()
    for _ in range(10):
        g, h = gx_random(rng), gx_random(rng)
        assert theta(gx_mul(g, h), v) == theta(h, theta(g, v))
    assert theta(gx_identity(), v) == v


def test_psi_intertwines_pf(rng):
    f = fe_mul(SQRT_A, SQRT_B)
    for _ in range(5):
        rho = gx_random(rng)
        assert apply_pf(psi(rho, f)) == theta(rho, apply_pf(f))


def test_rho_elements_are_valid():
    assert gx_is_valid(rho_a()) and gx_is_valid(rho_b())
    assert chi(rho_a()) != ONE


def test_suite_checks_pass(settings):
    for check in (tools.check_pf_operators, tools.check_operator_ring, tools.check_transformed_operators,
                  tools.check_theta_psi):
        assert check(settings).passed


@pytest.mark.slow
def test_transformation_all(settings):
    assert tools.check_transformation_all(settings).passed
    assert tools.check_pullback_laws(settings).passed
