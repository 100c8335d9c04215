# tests/test_rank_certificate.py
from dataclasses import replace

import numpy as np
import pytest

from kummer_chow_verifier.errors import FactorizationFailure, LiftTableMismatch
from kummer_chow_verifier.sub_checks.group_engine.tools import gx_identity, gx_is_valid
from kummer_chow_verifier.sub_checks.rank_certificate import tools
from kummer_chow_verifier.sub_checks.rank_certificate.tools import (
    BULLETS,
    CycleLabel,
    NormalFunctionImage,
    canonical_images,
    derived_canonical,
    factor_first,
    factor_second,
    lift_rho,
    lift_table,
    lift_targets,
    mu4_factor,
    numeric_rank,
    orbit_rank,
    point_sets,
    reference_table,
    stored_canonical,
    structural_rank,
    table_rows,
)
from kummer_chow_verifier.sub_checks.rational_field.tools import (
    ONE,
    SQRT_A,
    fe_add,
    fe_mul,
    fe_neg,
    mu4,
    random_branch_points,
)


@pytest.fixture(scope="module")
def table():
    return lift_table()


def test_derivation_reproduces_stored_images():
    assert derived_canonical() == stored_canonical()
    images = canonical_images()
    assert [img.label.bullet for img in images] == list(BULLETS)
    assert all(img.label.rho == gx_identity() for img in images)


def test_canonical_rank_is_three():
    images = canonical_images()
    assert structural_rank(images) == 3
    assert numeric_rank(images, point_sets(5, 1, 6)[0]) == 3


def test_lifts():
    lifts = [lift_rho(t) for t in lift_targets()]
    assert lifts[0] == gx_identity()
    assert all(gx_is_valid(g) for g in lifts)
    assert [g.zeta for g in lifts] == [0, 1, 1, 0, 1, 0]


def test_reference_table_shape():
    entries = reference_table()
    assert len(entries) == 18
    assert len({(e.target, e.bullet) for e in entries}) == 18


def test_mu4_factor():
    v = canonical_images()[1].d_image
    rotated = (fe_mul(mu4(3), v[0]), fe_mul(mu4(3), v[1]))
    assert mu4_factor(rotated, v) == 3
    assert mu4_factor((v[0], fe_neg(v[1])), v) is None


def test_table_matches_reference_up_to_mu4(table):
    assert len(table) == 18
    reference = reference_table()
    for row, entry in zip(table, reference):
        assert row.label.bullet == entry.bullet
        assert mu4_factor(row.d_image, entry.d_image) is not None


def test_lift_table_rejects_a_sign_flipped_reference(monkeypatch):
    entries = list(reference_table())
    first, second = entries[4].d_image
    entries[4] = replace(entries[4], d_image=(first, fe_neg(second)))
    monkeypatch.setattr(tools, "reference_table", lambda: tuple(entries))
    with pytest.raises(LiftTableMismatch) as err:
        lift_table()
    assert err.value.witness["bullet"] == entries[4].bullet
    assert err.value.witness["row"] == ["id", entries[4].target]


def test_factorization_catalog(table):
    signatures = {factor_first(row.first)[1:] for row in table}
    assert len(signatures) == 18
    for row in table:
        assert factor_first(row.first)[1:] == factor_second(row.second)[1:]


def test_factorization_failure():
    with pytest.raises(FactorizationFailure):
        factor_first(fe_add(ONE, SQRT_A))


def test_structural_rank_ignores_duplicates(table):
    assert structural_rank(table) == 18
    assert structural_rank(table + table[:2]) == 18
    assert structural_rank(table[:6]) == 6


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_numeric_rank_at_independent_point_sets(table, seed):
    rng = np.random.default_rng(seed)
    assert numeric_rank(table, random_branch_points(rng, 24)) == 18


@pytest.mark.parametrize("n", [3, 6, 12])
def test_numeric_rank_matches_structural_on_subsets(table, n):
    points = point_sets(7, 1)[0]
    assert numeric_rank(table[:n], points) == structural_rank(table[:n])


def test_rational_multiple_does_not_raise_rank(table):
    extra = NormalFunctionImage(CycleLabel(gx_identity(), "0"), (fe_mul(mu4(2), table[0].first), table[0].second))
    assert numeric_rank(table + [extra], point_sets(9, 1)[0]) == 18


def test_numeric_rank_needs_enough_points(table):
    with pytest.raises(ValueError):
        numeric_rank(table, point_sets(9, 1, 5)[0])


def test_table_rows(table):
    rows = table_rows(table)
    assert len(rows) == 18
    assert set(rows[0]) == {"rho_label", "bullet", "first_component", "second_component",
                            "F1_index", "F2_index", "zeta_class"}
    assert rows[0]["F1_index"] == 0 and rows[0]["F2_index"] == 0


def test_suite_checks_pass(settings):
    for check in (tools.check_canonical_images, tools.check_lifts, tools.check_lift_table,
                  tools.check_structural_rank, tools.check_numeric_rank):
        assert check(settings).passed


@pytest.mark.slow
@pytest.mark.parametrize("subgroup, rank", [("H", 3), ("I", 3)])
def test_subgroup_orbit_ranks(subgroup, rank):
    report = orbit_rank(subgroup)
    assert report["rank"] == rank
    assert report["mirror_consistent"]


@pytest.mark.slow
def test_full_orbit_rank():
    report = orbit_rank("full")
    assert report["elements"] == 18432
    assert report["images"] == 55296
    assert report["rank"] == 18
