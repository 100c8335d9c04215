# tests/test_rational_field.py
import numpy as np
import pytest

from kummer_chow_verifier.errors import InvalidBranchPoint, InvalidHom, ZeroInverse
from kummer_chow_verifier.sub_checks.rational_field import tools
from kummer_chow_verifier.sub_checks.rational_field.tools import (
    A,
    A_EL,
    B,
    B_EL,
    I_ELEMENT,
    IDENTITY_HOM,
    ONE,
    SQRT_1MA,
    SQRT_A,
    SQRT_B,
    SQRT_1MB,
    SWAP_AB,
    ZERO,
    BranchPoint,
    FieldHom,
    fe_add,
    fe_const,
    fe_derive,
    fe_eval,
    fe_from_rational,
    fe_inverse,
    fe_mul,
    fe_neg,
    fe_pow,
    hom_apply,
    hom_then,
    mu4,
    random_branch_points,
    serialize_field_element,
)


def test_square_roots_square_to_radicands():
    assert fe_mul(SQRT_A, SQRT_A) == A_EL
    assert fe_mul(SQRT_1MA, SQRT_1MA) == fe_from_rational(1 - A)
    assert fe_mul(SQRT_B, SQRT_B) == B_EL
    assert fe_mul(SQRT_1MB, SQRT_1MB) == fe_from_rational(1 - B)


def test_mu4_is_cyclic():
    assert mu4(1) == I_ELEMENT
    assert fe_mul(I_ELEMENT, I_ELEMENT) == fe_neg(ONE)
    assert mu4(4) == ONE
    assert fe_pow(I_ELEMENT, 4) == ONE


def test_inverse_of_mixed_element():
    x = fe_add(SQRT_A, fe_mul(SQRT_1MA, SQRT_B))
    assert fe_mul(x, fe_inverse(x)) == ONE


def test_inverse_of_random_elements(elements):
    for x in elements:
        assert fe_mul(x, fe_inverse(x)) == ONE


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroInverse):
        fe_inverse(ZERO)


def test_field_axioms(elements):
    x, y, z = elements[:3]
    assert fe_mul(x, fe_add(y, z)) == fe_add(fe_mul(x, y), fe_mul(x, z))
    assert fe_mul(fe_mul(x, y), z) == fe_mul(x, fe_mul(y, z))
    assert fe_add(x, fe_neg(x)) == ZERO


def test_derivative_of_sqrt_a():
    # d/da sqrt(a) = sqrt(a) / (2a)
    expected = fe_mul(SQRT_A, fe_from_rational(1 / (2 * A)))
    assert fe_derive(SQRT_A, "a") == expected
    assert fe_derive(SQRT_A, "b") == ZERO


def test_leibniz_rule(elements):
    x, y = elements[:2]
    for var in ("a", "b"):
        lhs = fe_derive(fe_mul(x, y), var)
        rhs = fe_add(fe_mul(fe_derive(x, var), y), fe_mul(x, fe_derive(y, var)))
        assert lhs == rhs


def test_swap_is_an_involution(elements):
    twice = hom_then(SWAP_AB, SWAP_AB)
    for x in elements:
        assert hom_apply(twice, x) == x
        assert hom_apply(IDENTITY_HOM, x) == x


def test_hom_is_multiplicative(elements):
    x, y = elements[:2]
    assert hom_apply(SWAP_AB, fe_mul(x, y)) == fe_mul(hom_apply(SWAP_AB, x), hom_apply(SWAP_AB, y))


def test_sign_flip_of_sqrt_1ma():
    tau_a = FieldHom(A_EL, B_EL, SQRT_A, fe_neg(SQRT_1MA), SQRT_B, SQRT_1MB)
    assert hom_apply(tau_a, SQRT_1MA) == fe_neg(SQRT_1MA)
    assert hom_apply(tau_a, SQRT_A) == SQRT_A
    assert hom_apply(tau_a, fe_mul(SQRT_1MA, SQRT_1MA)) == fe_from_rational(1 - A)


def test_swap_of_complementary_roots():
    tau_b = FieldHom(fe_from_rational(1 - A), fe_from_rational(1 - B), SQRT_1MA, SQRT_A, SQRT_1MB, SQRT_B)
    assert hom_apply(tau_b, A_EL) == fe_from_rational(1 - A)
    assert hom_apply(tau_b, SQRT_A) == SQRT_1MA
    assert hom_apply(tau_b, SQRT_1MA) == SQRT_A
    assert hom_apply(tau_b, fe_from_rational(1 / (A - B))) == fe_from_rational(1 / (B - A))


def test_invalid_hom_is_rejected():
    with pytest.raises(InvalidHom):
        FieldHom(A_EL, B_EL, SQRT_B, SQRT_1MA, SQRT_B, SQRT_1MB)


@pytest.mark.parametrize("a, b", [(0.0, -1.0), (-1.0, -1.0), (0.3, 0.7), (-0.5, -2.0)])
def test_excluded_loci(a, b):
    with pytest.raises(InvalidBranchPoint):
        BranchPoint.principal(a, b)


def test_wrong_root_is_rejected():
    with pytest.raises(InvalidBranchPoint):
        BranchPoint(-1.0, -2.0, 1.0, np.sqrt(2.0), 1j * np.sqrt(2.0), np.sqrt(3.0))


def test_root_tolerance_is_relative_1e14():
    BranchPoint(-1.0, -2.0, 1j, np.sqrt(2.0), 1j * np.sqrt(2.0), np.sqrt(3.0))
    with pytest.raises(InvalidBranchPoint):
        BranchPoint(-1.0, -2.0, 1j * (1.0 + 1.5e-14), np.sqrt(2.0), 1j * np.sqrt(2.0), np.sqrt(3.0))


def test_eval_of_rational_function(reference_point):
    assert fe_eval(fe_from_rational(1 / (A - B)), reference_point) == pytest.approx(1.0, rel=1e-14)


def test_eval_uses_the_chosen_roots():
    p = BranchPoint(-1.0, -4.0, 1j, np.sqrt(2.0), 2j, np.sqrt(5.0))
    assert fe_eval(fe_mul(SQRT_A, SQRT_B), p) == pytest.approx(-2.0, rel=1e-14)
    assert fe_eval(fe_mul(SQRT_A, SQRT_B), p.with_signs((1, 1, -1, 1))) == pytest.approx(2.0, rel=1e-14)


def test_eval_is_compatible_with_arithmetic(elements, branch_points):
    x, y = elements[:2]
    for p in branch_points:
        assert fe_eval(fe_mul(x, y), p) == pytest.approx(fe_eval(x, p) * fe_eval(y, p), rel=1e-9)
        assert fe_eval(fe_add(x, y), p) == pytest.approx(fe_eval(x, p) + fe_eval(y, p), rel=1e-9, abs=1e-12)


def test_shifted_point_continues_roots(reference_point):
    q = reference_point.shifted(da=1e-3)
    for old, new in zip(reference_point.roots, q.roots):
        assert abs(new - old) < 1e-2


def test_random_branch_points_avoid_poles(rng):
    for p in random_branch_points(rng, 50):
        a, b = p.a.real, p.b.real
        assert -2.0 <= a <= -0.2 and -2.0 <= b <= -0.2
        assert abs(a - b) >= 0.05


def test_serialization_is_canonical():
    assert serialize_field_element(ZERO) == "0"
    text = serialize_field_element(fe_add(ONE, SQRT_A))
    assert text.startswith("(+ ")
    assert text.index("] 1)") < text.index("sqrt(a)")
    assert serialize_field_element(fe_mul(SQRT_A, SQRT_A)) == serialize_field_element(A_EL)


def test_suite_checks_pass(settings):
    for check in (tools.check_inverse, tools.check_leibniz, tools.check_hom_multiplicative,
                  tools.check_eval_compatible, tools.check_monomial_independence, tools.check_derivative_fd):
        assert check(settings).passed


def test_fe_const_rejects_non_integer_parts():
    assert fe_const(complex(2, -1)) == fe_add(fe_from_rational(2), fe_neg(I_ELEMENT))
    with pytest.raises(ValueError):
        fe_const(0.5 + 1j)


@pytest.mark.slow
def test_field_axioms_check(settings):
    result = tools.check_field_axioms(settings)
    assert result.passed
