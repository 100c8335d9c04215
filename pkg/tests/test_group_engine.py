# tests/test_group_engine.py
import pytest

from kummer_chow_verifier.checks import run_check
from kummer_chow_verifier.sub_checks.group_engine import tools
from kummer_chow_verifier.sub_checks.group_engine.tools import (
    C,
    FIXES_ONE_OVER_C,
    SIGMA,
    SIGMA_INDEX,
    SIGMA_POINTS,
    UNDERLINE,
    Z,
    GXElement,
    SmallPerm,
    gt_factor_all,
    gt_identity,
    gt_inverse,
    gt_mul,
    gx_identity,
    gx_inverse,
    gx_is_valid,
    gx_mul,
    gx_random,
    lift,
    octahedral_action,
    sigma_table,
)


def sigma(label: str) -> int:
    return SIGMA_INDEX[SmallPerm.from_cycles(SIGMA_POINTS, label)]


def test_small_perm_parsing_and_labels():
    p = SmallPerm.from_cycles(SIGMA_POINTS, "(0 1 inf)")
    assert p("0") == "1" and p("1") == "inf" and p("inf") == "0" and p("1/c") == "1/c"
    assert p.label == "(0 1 inf)"
    assert p.sign == 1
    assert SmallPerm.from_cycles(SIGMA_POINTS, "(0 1)").sign == -1
    assert p.compose(p.inverse()).is_identity()


def test_sigma_table_has_24_records():
    assert len(SIGMA) == 24
    assert sum(FIXES_ONE_OVER_C) == 6


@pytest.mark.parametrize("label, c_image, z_image", [
    ("id", C, Z),
    ("(0 inf)", 1 / C, 1 / Z),
    ("(0 1 1/c)", 1 / (1 - C), 1 - C * Z),
])
def test_sigma_table_records(label, c_image, z_image):
    record = sigma_table(SmallPerm.from_cycles(SIGMA_POINTS, label))
    assert record.c_image - c_image == 0
    assert record.z_image - z_image == 0


@pytest.mark.parametrize("label, base", [
    ("(0 1)", "(1 inf)"),
    ("(1 inf)", "(0 1)"),
    ("(0 inf)", "(0 inf)"),
    ("(0 1)(1/c inf)", "id"),
])
def test_underline(label, base):
    assert UNDERLINE[sigma(label)].label == base


def test_gt_factor_group():
    elems = gt_factor_all()
    assert len(elems) == 24
    e = gt_identity()
    assert elems[e].base.is_identity()
    for g in range(24):
        assert gt_mul(g, gt_inverse(g)) == e
        assert gt_mul(e, g) == g


def test_octahedral_action_is_multiplicative():
    for g in (1, 5, 11):
        for h in (2, 7, 19):
            assert octahedral_action(gt_mul(g, h)) == octahedral_action(g).compose(octahedral_action(h))


def test_identity_and_inverse(rng):
    e = gx_identity()
    assert gx_is_valid(e)
    for _ in range(20):
        g = gx_random(rng)
        assert gx_mul(g, e) == g
        assert gx_mul(g, gx_inverse(g)) == e


def test_fibre_condition_rejects_bad_zeta():
    g = lift(sigma("(0 1)"), sigma("id"))
    assert g.zeta == 1
    assert gx_is_valid(g)
    assert not gx_is_valid(GXElement(g.rho1, g.rho2, g.tau1, g.tau2, 0))


def test_lift_of_even_pair_has_trivial_zeta():
    g = lift(sigma("(0 1)"), sigma("(0 1)"))
    assert g.zeta == 0 and gx_is_valid(g)


def test_suite_checks_pass(settings):
    for check in (tools.check_sigma_table, tools.check_gt_factor, tools.check_gx_laws):
        assert check(settings).passed


def test_corrupted_table_fails_with_witness(settings):
    result = run_check(tools.check_sigma_table, settings.model_copy(update={"corrupt_table": True}))
    assert result.status == "fail"
    assert result.witness


@pytest.mark.slow
def test_group_orders():
    assert tools.group_orders() == {"sigma": 24, "gt_factor": 24, "G_T": 576, "G_Y": 9216, "G_X": 18432}


@pytest.mark.slow
def test_subgroup_analysis():
    assert tools.subgroup_analysis() == {
        "order_H": 32, "order_I": 96, "order_intersection": 1, "order_HI": 3072, "index_HI": 6,
    }


@pytest.mark.slow
def test_generators_span_gx(settings):
    assert tools.check_generators(settings).passed
    assert tools.check_octahedral(settings).passed
