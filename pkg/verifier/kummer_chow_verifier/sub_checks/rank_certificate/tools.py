# rank_certificate/tools.py
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Literal, Optional, Sequence, Tuple

import numpy as np
from sympy import Matrix

from ...checks import CheckResult, verdict
from ...config import RANK_POINT_SETS, RANK_POINTS, RANK_THRESHOLD, RunSettings
from ...errors import DerivationMismatch, FactorizationFailure, LiftTableMismatch
from ..diffop_engine.tools import FunctionPair, rho_a, rho_b, seed_image, theta
from ..group_engine.tools import (
    SIGMA_INDEX,
    SIGMA_POINTS,
    GXElement,
    SmallPerm,
    gx_all,
    gx_identity,
    gx_is_valid,
    gx_mul,
    gx_random,
    in_H,
    in_I,
    lift,
)
from ..rational_field.tools import (
    A,
    B,
    K,
    ONE,
    SQRT_1MA,
    SQRT_1MB,
    SQRT_A,
    SQRT_B,
    BranchPoint,
    FieldElement,
    canonical,
    fe_add,
    fe_eval,
    fe_from_rational,
    fe_inverse,
    fe_mul,
    fe_neg,
    fe_scale,
    mu4,
    random_branch_points,
    serialize_field_element,
)

logging.basicConfig(level=logging.INFO, format='%(asctime)s | %(name)s | %(levelname)s | %(message)s')
logger = logging.getLogger("rank_tools")

BULLETS = ("0", "1", "inf")
LIFT_TARGETS = ("id", "(0 1)", "(1 inf)", "(0 1 inf)", "(0 inf)", "(0 inf 1)")
EXPECTED_RANK = 18
CANONICAL_RANK = 3
THETA_SAMPLES = 200

Subgroup = Literal["full", "H", "I"]


@dataclass(frozen=True)
class CycleLabel:
    rho: GXElement
    bullet: str

    @property
    def text(self) -> str:
        return f"{self.rho.label} * xi_{self.bullet}"


@dataclass(frozen=True)
class NormalFunctionImage:
    """D applied to the normal function of rho^* xi_bullet."""

    label: CycleLabel
    d_image: FunctionPair

    @property
    def first(self) -> FieldElement:
        return self.d_image[0]

    @property
    def second(self) -> FieldElement:
        return self.d_image[1]


def _ratio(num: FieldElement, den: FieldElement) -> FieldElement:
    return fe_mul(num, fe_inverse(den))


def _scaled_pair(unit: int, denominator, first: FieldElement, second: FieldElement) -> FunctionPair:
    """2 * i**unit / denominator * (first, second)."""
    factor = fe_mul(mu4(unit), fe_from_rational(canonical(2 / denominator)))
    return fe_mul(factor, first), fe_mul(factor, second)


def _mirror(x: FieldElement) -> FieldElement:
    return fe_neg(fe_inverse(x))


# ---------------------------------------------------------------------------
# Canonical images
# ---------------------------------------------------------------------------

def stored_canonical() -> Tuple[FunctionPair, FunctionPair, FunctionPair]:
    """(2/(a-b)) (f, -1/f) for f = 1, sqrt(1-b)/sqrt(1-a), sqrt(b)/sqrt(a)."""
    r = _ratio(SQRT_1MB, SQRT_1MA)
    s = _ratio(SQRT_B, SQRT_A)
    return tuple(_scaled_pair(0, A - B, f, _mirror(f)) for f in (ONE, r, s))


def _half(v: FunctionPair) -> FunctionPair:
    half = fe_from_rational(canonical(K(1) / 2))
    return fe_mul(half, v[0]), fe_mul(half, v[1])


def _pair_add(v: FunctionPair, w: FunctionPair, sign: int = 1) -> FunctionPair:
    if sign < 0:
        w = (fe_neg(w[0]), fe_neg(w[1]))
    return fe_add(v[0], w[0]), fe_add(v[1], w[1])


def derived_canonical() -> Tuple[FunctionPair, FunctionPair, FunctionPair]:
    """The three images from the seed D(xi_1 - xi_0) alone.

    rho^a sends xi_1 - xi_0 to xi_1 + xi_0, rho^b sends it to xi_0 - xi_inf.
    """
    seed = seed_image()
    plus = theta(rho_a(), seed)
    difference = theta(rho_b(), seed)
    xi0 = _half(_pair_add(plus, seed, -1))
    xi1 = _half(_pair_add(plus, seed))
    xi_inf = _pair_add(xi0, difference, -1)
    return xi0, xi1, xi_inf


@lru_cache(maxsize=1)
def canonical_images() -> Tuple[NormalFunctionImage, ...]:
    """Stored images of xi_0, xi_1, xi_inf after checking them against the derivation.

    Raises:
        DerivationMismatch: the Theta-derived triple differs from the stored one.
    """
    stored = stored_canonical()
    derived = derived_canonical()
    for bullet, s, d in zip(BULLETS, stored, derived):
        if s != d:
            raise DerivationMismatch(f"derived image of xi_{bullet} differs from the stored one", {
                "bullet": bullet,
                "stored": [serialize_field_element(x) for x in s],
                "derived": [serialize_field_element(x) for x in d],
            })
    ident = gx_identity()
    return tuple(NormalFunctionImage(CycleLabel(ident, bullet), v) for bullet, v in zip(BULLETS, stored))


# ---------------------------------------------------------------------------
# Lifts and the table of images
# ---------------------------------------------------------------------------

def lift_rho(target: Tuple[SmallPerm, SmallPerm]) -> GXElement:
    """First tau over each underline; zeta = 1, or +i when the underline signs differ."""
    return lift(SIGMA_INDEX[target[0]], SIGMA_INDEX[target[1]], zeta_choice=1)


def lift_targets() -> List[Tuple[SmallPerm, SmallPerm]]:
    ident = SmallPerm.identity(SIGMA_POINTS)
    return [(ident, SmallPerm.from_cycles(SIGMA_POINTS, label)) for label in LIFT_TARGETS]


@dataclass(frozen=True)
class ReferenceEntry:
    target: str
    bullet: str
    unit: int
    denominator: str
    d_image: FunctionPair


@lru_cache(maxsize=1)
def reference_table() -> Tuple[ReferenceEntry, ...]:
    """The 18 published images, each 2 i**unit / D * (first, second); signs are only known up to mu_4."""
    one_ma, one_mb = SQRT_1MA, SQRT_1MB
    r = _ratio(one_mb, one_ma)
    s = _ratio(SQRT_B, SQRT_A)
    b_over_1ma = _ratio(SQRT_B, one_ma)
    one_mb_over_a = _ratio(one_mb, SQRT_A)

    def mirrored(f):
        return f, _mirror(f)

    def inverted(f):
        return f, fe_inverse(f)

    rows = {
        "id": (A - B, [(0, mirrored(ONE)), (0, mirrored(r)), (0, mirrored(s))]),
        "(0 1)": (A * B - A - B, [(0, inverted(one_mb)), (0, inverted(fe_inverse(one_ma))), (1, mirrored(s))]),
        "(1 inf)": (A + B - 1, [(1, mirrored(ONE)), (1, mirrored(b_over_1ma)), (1, mirrored(one_mb_over_a))]),
        "(0 1 inf)": (A - A * B - 1, [(1, inverted(one_mb)), (0, mirrored(b_over_1ma)),
                                      (1, inverted(fe_inverse(SQRT_A)))]),
        "(0 inf)": (A * B - 1, [(0, inverted(SQRT_B)), (1, mirrored(r)), (0, inverted(fe_inverse(SQRT_A)))]),
        "(0 inf 1)": (A * B - B + 1, [(1, inverted(SQRT_B)), (1, inverted(fe_inverse(one_ma))),
                                      (0, mirrored(one_mb_over_a))]),
    }
    out = []
    for target in LIFT_TARGETS:
        denominator, entries = rows[target]
        for bullet, (unit, (first, second)) in zip(BULLETS, entries):
            out.append(ReferenceEntry(target, bullet, unit, str(canonical(denominator)),
                                      _scaled_pair(unit, denominator, first, second)))
    return tuple(out)


def mu4_factor(computed: FunctionPair, expected: FunctionPair) -> Optional[int]:
    """k with computed = i**k * expected in both components, or None."""
    for k in range(4):
        u = mu4(k)
        if computed == (fe_mul(u, expected[0]), fe_mul(u, expected[1])):
            return k
    return None


def lift_table() -> List[NormalFunctionImage]:
    """Theta of the lifted elements on the canonical images, checked against the reference table.

    Raises:
        LiftTableMismatch: an entry agrees with its reference under no mu_4 factor.
    """
    canonical_by_bullet = {img.label.bullet: img.d_image for img in canonical_images()}
    reference = {(e.target, e.bullet): e for e in reference_table()}
    rows = []
    for label, target in zip(LIFT_TARGETS, lift_targets()):
        rho = lift_rho(target)
        for bullet in BULLETS:
            image = theta(rho, canonical_by_bullet[bullet])
            if mu4_factor(image, reference[(label, bullet)].d_image) is None:
                raise LiftTableMismatch(f"image of ({label}, xi_{bullet}) matches no mu_4 multiple of the table", {
                    "row": ["id", label],
                    "bullet": bullet,
                    "computed": [serialize_field_element(x) for x in image],
                })
            rows.append(NormalFunctionImage(CycleLabel(rho, bullet), image))
    return rows


# ---------------------------------------------------------------------------
# Factorization over the catalogs
# ---------------------------------------------------------------------------

F1_DENOMINATORS = (A - B, A + B - 1, A * B - A - B, A * B - B + 1, A * B - 1, A - A * B - 1)
F1_LABELS = ("1/(a-b)", "1/(a+b-1)", "1/(ab-a-b)", "1/(ab-b+1)", "1/(ab-1)", "1/(a-ab-1)")
F2_LABELS = ("1", "sqrt(b)/sqrt(a)", "sqrt(1-b)/sqrt(1-a)", "sqrt(1-b)/sqrt(a)", "sqrt(b)/sqrt(1-a)",
             "1/sqrt(1-a)", "sqrt(1-b)", "1/sqrt(a)", "sqrt(b)")


@lru_cache(maxsize=1)
def f2_catalog() -> Tuple[FieldElement, ...]:
    return (
        ONE,
        _ratio(SQRT_B, SQRT_A),
        _ratio(SQRT_1MB, SQRT_1MA),
        _ratio(SQRT_1MB, SQRT_A),
        _ratio(SQRT_B, SQRT_1MA),
        fe_inverse(SQRT_1MA),
        SQRT_1MB,
        fe_inverse(SQRT_A),
        SQRT_B,
    )


Signature = Tuple[int, int, int]


@lru_cache(maxsize=1)
def _catalog_lookup() -> Tuple[Dict[FieldElement, Signature], Dict[FieldElement, Signature]]:
    """2 i**k F1 F2 and 2 i**k F1 / F2 over the whole catalog, keyed by value."""
    first, second = {}, {}
    for i, denominator in enumerate(F1_DENOMINATORS):
        f1 = fe_from_rational(canonical(2 / denominator))
        for j, f2 in enumerate(f2_catalog()):
            for k in range(4):
                scaled = fe_mul(mu4(k), f1)
                first[fe_mul(scaled, f2)] = (k, i, j)
                second[fe_mul(scaled, fe_inverse(f2))] = (k, i, j)
    return first, second


def factor_first(x: FieldElement) -> Signature:
    """(unit, F1 index, F2 index) with x = 2 i**unit F1 F2.

    Raises:
        FactorizationFailure: x is outside the catalog.
    """
    found = _catalog_lookup()[0].get(x)
    if found is None:
        raise FactorizationFailure("first component does not factor over the catalog",
                                   {"component": serialize_field_element(x)})
    return found


def factor_second(x: FieldElement) -> Signature:
    found = _catalog_lookup()[1].get(x)
    if found is None:
        raise FactorizationFailure("second component does not factor over the mirrored catalog",
                                   {"component": serialize_field_element(x)})
    return found


def structural_rank(rows: Iterable[NormalFunctionImage]) -> int:
    """Number of distinct (F1, F2) classes among the first components."""
    return len({factor_first(row.first)[1:] for row in rows})


def numeric_rank(rows: Sequence[NormalFunctionImage], points: Sequence[BranchPoint],
                 threshold: float = RANK_THRESHOLD) -> int:
    """Singular-value rank of the first components evaluated at the points."""
    if len(points) < len(rows):
        raise ValueError(f"need at least {len(rows)} points, got {len(points)}")
    matrix = np.array([[fe_eval(row.first, p) for row in rows] for p in points], dtype=complex)
    s = np.linalg.svd(matrix, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s / s[0] > threshold))


def point_sets(seed: int, count: int = RANK_POINT_SETS, size: int = RANK_POINTS) -> List[List[BranchPoint]]:
    return [random_branch_points(np.random.default_rng(seed + 100 * k), size) for k in range(count)]


# ---------------------------------------------------------------------------
# Orbits
# ---------------------------------------------------------------------------

def subgroup_elements(subgroup: Subgroup) -> List[GXElement]:
    elems = gx_all()
    if subgroup == "H":
        return [g for g in elems if in_H(g)]
    if subgroup == "I":
        return [g for g in elems if in_I(g)]
    return list(elems)


def _unit_vector(k: int) -> List[int]:
    return [[1, 0], [0, 1], [-1, 0], [0, -1]][k]


def orbit_rank(subgroup: Subgroup = "full") -> Dict[str, object]:
    """Rank over Q of the span of Theta_rho(canonical images) for rho in the subgroup.

    Theta_rho depends on rho only through (zeta, tau), so those keys are
    deduplicated first. Each image is reduced to its catalog class; classes are
    independent over C, and within a class the image is (u_1 F1 F2, u_2 F1/F2)
    with units u_1, u_2, so the class contributes the Q-rank of its unit vectors.

    Raises:
        FactorizationFailure: an image leaves the catalog.
    """
    elements = subgroup_elements(subgroup)
    keys = {}
    for g in elements:
        keys.setdefault((g.zeta, g.tau1, g.tau2), g)
    classes: Dict[Tuple[int, int], set] = {}
    mirror_consistent = True
    images = 0
    for key in sorted(keys):
        rho = keys[key]
        for canonical_image in canonical_images():
            first, second = theta(rho, canonical_image.d_image)
            k1, i1, j1 = factor_first(first)
            k2, i2, j2 = factor_second(second)
            mirror_consistent = mirror_consistent and (i1, j1) == (i2, j2)
            classes.setdefault((i1, j1), set()).add(tuple(_unit_vector(k1) + _unit_vector(k2)))
            images += 1
    rank = sum(Matrix(sorted(vectors)).rank() for vectors in classes.values())
    return {
        "subgroup": subgroup,
        "elements": len(elements),
        "distinct_actions": len(keys),
        "images": len(elements) * len(BULLETS),
        "images_computed": images,
        "classes": len(classes),
        "rank": int(rank),
        "mirror_consistent": mirror_consistent,
    }


def orbit_rank_full() -> int:
    return orbit_rank("full")["rank"]


def table_rows(rows: Sequence[NormalFunctionImage]) -> List[Dict[str, object]]:
    """CSV/JSON rows: rho_label, bullet, components, F1_index, F2_index, zeta_class."""
    out = []
    for row in rows:
        unit, i, j = factor_first(row.first)
        out.append({
            "rho_label": row.label.rho.label,
            "bullet": row.label.bullet,
            "first_component": serialize_field_element(row.first),
            "second_component": serialize_field_element(row.second),
            "F1_index": i,
            "F2_index": j,
            "zeta_class": unit,
        })
    return out


# ---------------------------------------------------------------------------
# Checks
# ---------------------------------------------------------------------------

def check_canonical_images(settings: RunSettings) -> CheckResult:
    logger.info("🔍 Deriving the canonical images from the seed")
    images = canonical_images()
    seed = seed_image()
    difference = _pair_add(images[1].d_image, images[0].d_image, -1)
    ok = difference == seed and structural_rank(images) == CANONICAL_RANK
    rank = numeric_rank(images, point_sets(settings.seed, 1, CANONICAL_RANK + 2)[0])
    logger.info(f"📊 Canonical rank structural={structural_rank(images)} numeric={rank}")
    return verdict("canonical_images", ok and rank == CANONICAL_RANK,
                   {"numeric_rank": rank}, {"rank": CANONICAL_RANK})


def check_lifts(settings: RunSettings) -> CheckResult:
    """The six lifts are valid elements; the identity lifts to the identity."""
    lifts = [lift_rho(t) for t in lift_targets()]
    bad = [g.label for g in lifts if not gx_is_valid(g)]
    ok = not bad and lifts[0] == gx_identity() and lifts[1].zeta == 1
    return verdict("lifts", ok, {"invalid": bad, "labels": [g.label for g in lifts]},
                   {"lifts": [g.label for g in lifts]})


def check_lift_table(settings: RunSettings) -> CheckResult:
    logger.info("🔍 Regenerating the 18 lifted images")
    rows = lift_table()
    logger.info(f"✅ All {len(rows)} entries match the reference table up to mu_4")
    return verdict("lift_table", len(rows) == EXPECTED_RANK, {"rows": len(rows)}, {"rows": len(rows)})


def check_structural_rank(settings: RunSettings) -> CheckResult:
    rows = lift_table()
    full = structural_rank(rows)
    with_duplicate = structural_rank(rows + rows[:1])
    ok = full == EXPECTED_RANK and with_duplicate == EXPECTED_RANK
    return verdict("structural_rank", ok, {"rank": full, "with_duplicate": with_duplicate}, {"rank": full})


def check_numeric_rank(settings: RunSettings) -> CheckResult:
    """SVD rank at three independent point sets, agreeing with the structural rank on subsets."""
    logger.info(f"🔍 Numeric rank at {RANK_POINT_SETS} sets of {RANK_POINTS} points")
    rows = lift_table()
    sets = point_sets(settings.seed)
    ranks = [numeric_rank(rows, points) for points in sets]
    subsets = {n: (structural_rank(rows[:n]), numeric_rank(rows[:n], sets[0])) for n in (3, 6, 12, 18)}
    agree = all(s == n for s, n in subsets.values())
    extra = fe_scale(rows[0].first, K(3))
    padded = rows + [NormalFunctionImage(rows[0].label, (extra, rows[0].second))]
    padded_rank = numeric_rank(padded, sets[0])
    logger.info(f"📊 Numeric ranks {ranks}, subset agreement {agree}")
    ok = all(r == EXPECTED_RANK for r in ranks) and agree and padded_rank == EXPECTED_RANK
    details = {"ranks": ranks, "subsets": {str(k): list(v) for k, v in subsets.items()}, "padded": padded_rank}
    return verdict("numeric_rank", ok, details, details)


def check_theta_action(settings: RunSettings) -> CheckResult:
    """Theta_{rho sigma} = Theta_sigma o Theta_rho on the canonical images."""
    rng = np.random.default_rng(settings.seed + 20)
    for k in range(THETA_SAMPLES):
        g, h = gx_random(rng), gx_random(rng)
        for img in canonical_images():
            if theta(gx_mul(g, h), img.d_image) != theta(h, theta(g, img.d_image)):
                return verdict("theta_action", False, {"sample": k, "g": g.label, "h": h.label,
                                                       "bullet": img.label.bullet})
    return verdict("theta_action", True, {}, {"samples": THETA_SAMPLES})


def check_orbit_ranks(settings: RunSettings) -> CheckResult:
    logger.info("🔍 Computing orbit ranks over G_X, H and I")
    reports = {name: orbit_rank(name) for name in ("full", "H", "I")}
    expected = {"full": EXPECTED_RANK, "H": CANONICAL_RANK, "I": CANONICAL_RANK}
    for name, report in reports.items():
        logger.info(f"📊 Orbit of {name}: {report['images']} images, rank {report['rank']}")
    ok = all(reports[n]["rank"] == expected[n] and reports[n]["mirror_consistent"] for n in reports)
    return verdict("orbit_ranks", ok, reports, reports)
