# diffop_engine/tools.py
import logging
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Dict, Iterator, Mapping, Tuple

import numpy as np
from sympy.polys.fields import FracElement

from ...checks import CheckResult, verdict
from ...config import RunSettings
from ...errors import NonMobiusPullback, OperatorOrderExceeded
from ..cocycles.tools import chi, phi
from ..group_engine.tools import (
    SIGMA_ID,
    SIGMA_INDEX,
    SIGMA_POINTS,
    GXElement,
    SmallPerm,
    gt_factor_all,
    gt_identity,
    gx_identity,
    gx_mul,
    gx_random,
    tau_hom,
)
from ..rational_field.tools import (
    A,
    A_EL,
    B,
    ONE,
    SQRT_1MA,
    SQRT_1MB,
    SQRT_A,
    SQRT_B,
    ZERO,
    K,
    FieldElement,
    FieldHom,
    canonical,
    fe_add,
    fe_derive,
    fe_from_rational,
    fe_inverse,
    fe_mul,
    fe_neg,
    fe_pow,
    fe_scale,
    hom_apply,
    hom_then,
    random_element,
    serialize_field_element,
)

logging.basicConfig(level=logging.INFO, format='%(asctime)s | %(name)s | %(levelname)s | %(message)s')
logger = logging.getLogger("diffop_tools")

MAX_ORDER = 4
PROPERTY_SAMPLES = 100

Index = Tuple[int, int]


@dataclass(frozen=True)
class DifferentialOperator:
    """sum of coeff * d_a^i d_b^j, coefficients on the left; zero terms are never stored."""

    terms: Tuple[Tuple[Index, FieldElement], ...]

    @classmethod
    def from_mapping(cls, terms: Mapping[Index, FieldElement]) -> "DifferentialOperator":
        kept = []
        for idx in sorted(terms):
            if sum(idx) > MAX_ORDER:
                if not terms[idx].is_zero():
                    raise OperatorOrderExceeded(f"order {sum(idx)} exceeds {MAX_ORDER}", {"index": list(idx)})
                continue
            if not terms[idx].is_zero():
                kept.append((idx, terms[idx]))
        return cls(tuple(kept))

    def coeff(self, i: int, j: int) -> FieldElement:
        for idx, c in self.terms:
            if idx == (i, j):
                return c
        return ZERO

    def items(self) -> Iterator[Tuple[Index, FieldElement]]:
        return iter(self.terms)

    @property
    def order(self) -> int:
        return max((sum(idx) for idx, _ in self.terms), default=0)

    def describe(self) -> Dict[str, str]:
        return {f"d_a^{i} d_b^{j}": serialize_field_element(c) for (i, j), c in self.terms}


@dataclass(frozen=True)
class OperatorPair:
    first: DifferentialOperator
    second: DifferentialOperator


def mult(f: FieldElement) -> DifferentialOperator:
    return DifferentialOperator.from_mapping({(0, 0): f})


def d(var: str) -> DifferentialOperator:
    return DifferentialOperator.from_mapping({(1, 0) if var == "a" else (0, 1): ONE})


IDENTITY_OP = mult(ONE)


def op_add(D: DifferentialOperator, E: DifferentialOperator) -> DifferentialOperator:
    out: Dict[Index, FieldElement] = dict(D.terms)
    for idx, c in E.terms:
        out[idx] = fe_add(out.get(idx, ZERO), c)
    return DifferentialOperator.from_mapping(out)


def op_scale(f: FieldElement, D: DifferentialOperator) -> DifferentialOperator:
    """f * D (multiplication on the left)."""
    return DifferentialOperator.from_mapping({idx: fe_mul(f, c) for idx, c in D.terms})


def derive_n(f: FieldElement, i: int, j: int) -> FieldElement:
    for _ in range(i):
        f = fe_derive(f, "a")
    for _ in range(j):
        f = fe_derive(f, "b")
    return f


@lru_cache(maxsize=20_000)
def op_compose(D: DifferentialOperator, E: DifferentialOperator) -> DifferentialOperator:
    """D o E in left-normal form.

    d_a^i d_b^j (e d_a^k d_b^l) = sum_{p<=i, q<=j} C(i,p) C(j,q) (d_a^(i-p) d_b^(j-q) e) d_a^(p+k) d_b^(q+l)
    """
    out: Dict[Index, FieldElement] = {}
    for (i, j), c in D.terms:
        for (k, l), e in E.terms:
            for p in range(i + 1):
                for q in range(j + 1):
                    inner = derive_n(e, i - p, j - q)
                    if inner.is_zero():
                        continue
                    term = fe_mul(c, inner)
                    scale = comb(i, p) * comb(j, q)
                    if scale != 1:
                        term = fe_scale(term, K(scale))
                    idx = (p + k, q + l)
                    out[idx] = fe_add(out.get(idx, ZERO), term)
    return DifferentialOperator.from_mapping(out)


def op_apply(D: DifferentialOperator, f: FieldElement) -> FieldElement:
    """sum coeff_ij * d_a^i d_b^j f."""
    out = ZERO
    for (i, j), c in D.terms:
        out = fe_add(out, fe_mul(c, derive_n(f, i, j)))
    return out


def _pf_operator(var: str) -> DifferentialOperator:
    x = A if var == "a" else B
    return DifferentialOperator.from_mapping({
        (2, 0) if var == "a" else (0, 2): fe_from_rational(x * (1 - x)),
        (1, 0) if var == "a" else (0, 1): fe_from_rational(1 - 2 * x),
        (0, 0): fe_from_rational(K(-1) / 4),
    })


@lru_cache(maxsize=1)
def build_pf() -> OperatorPair:
    """D_1 = a(1-a) d_a^2 + (1-2a) d_a - 1/4 and its b-analogue."""
    return OperatorPair(_pf_operator("a"), _pf_operator("b"))


def _mobius_in(r: FracElement, gen: FracElement) -> bool:
    """Numerator and denominator of degree <= 1 in gen, free of the other variable, r non-constant."""
    gi = 0 if gen == A else 1
    for poly in (r.numer, r.denom):
        for monom, _ in poly.terms():
            if monom[gi] > 1 or monom[1 - gi] > 0:
                return False
    return bool(r.diff(gen).numer)


@lru_cache(maxsize=None)
def _chain_factor(image: FracElement, var: str) -> DifferentialOperator:
    """d/dx' = (dx'/dx)^-1 d/dx for x' = image."""
    gen = A if var == "a" else B
    if not _mobius_in(image, gen):
        raise NonMobiusPullback(f"pullback of {var} is not a Möbius function of {var}",
                                {"image": str(image)})
    inv = fe_inverse(fe_from_rational(canonical(image.diff(gen))))
    return op_scale(inv, d(var))


@lru_cache(maxsize=None)
def _chain_power(image: FracElement, var: str, n: int) -> DifferentialOperator:
    if n == 0:
        return IDENTITY_OP
    return op_compose(_chain_factor(image, var), _chain_power(image, var, n - 1))


def pullback_operator(D: DifferentialOperator, h: FieldHom) -> DifferentialOperator:
    """Operator D^h with D^h(h^# f) = h^#(D f): coefficients pulled back, d/da -> d/da'.

    Raises:
        NonMobiusPullback: h^#(a) is not a Möbius function of a (or the b-analogue).
    """
    out = DifferentialOperator(())
    for (i, j), c in D.terms:
        term = op_compose(_chain_power(h.a_image, "a", i), _chain_power(h.b_image, "b", j))
        out = op_add(out, op_scale(hom_apply(h, c), term))
    return out


def transformed_pf_operator(base: SmallPerm) -> DifferentialOperator:
    """The literal operators phi^3 D_1 phi^-1 for the three classes of base permutations."""
    label = base.label
    one_minus_a = 1 - A
    if label in ("id", "(0 1)"):
        coeffs = {(2, 0): A * one_minus_a, (1, 0): 1 - 2 * A}
    elif label in ("(1 inf)", "(0 1 inf)"):
        coeffs = {(2, 0): -A * one_minus_a ** 2, (1, 0): -one_minus_a ** 2}
    else:
        coeffs = {(2, 0): -A ** 2 * one_minus_a, (1, 0): A ** 2}
    coeffs[(0, 0)] = K(-1) / 4
    return DifferentialOperator.from_mapping({idx: fe_from_rational(canonical(r)) for idx, r in coeffs.items()})


@lru_cache(maxsize=None)
def _conjugated_pf(t: int, which: int) -> DifferentialOperator:
    """phi^3 o D_i o phi^-1 for the factor t on side `which`."""
    tau = (t, gt_identity()) if which == 1 else (gt_identity(), t)
    p = phi(tau, which)
    D = build_pf().first if which == 1 else build_pf().second
    return op_compose(mult(fe_pow(p, 3)), op_compose(D, mult(fe_inverse(p))))


def verify_transformation(tau: Tuple[int, int]) -> bool:
    """phi_i(tau)^3 D_i phi_i(tau)^-1 = D_i^tau for i = 1, 2."""
    h = tau_hom(*tau)
    pf = build_pf()
    return (_conjugated_pf(tau[0], 1) == pullback_operator(pf.first, h)
            and _conjugated_pf(tau[1], 2) == pullback_operator(pf.second, h))


def verify_pullback_intertwining(tau: Tuple[int, int], f: FieldElement) -> bool:
    """D_i^tau(tau^# f) = tau^#(D_i f)."""
    h = tau_hom(*tau)
    pf = build_pf()
    image = hom_apply(h, f)
    return all(op_apply(pullback_operator(D, h), image) == hom_apply(h, op_apply(D, f))
               for D in (pf.first, pf.second))


# ---------------------------------------------------------------------------
# Theta and Psi
# ---------------------------------------------------------------------------

FunctionPair = Tuple[FieldElement, FieldElement]


def theta(rho: GXElement, v: FunctionPair) -> FunctionPair:
    """(chi^-1 phi_1^-2 tau^#(v_1), chi^-1 phi_2^-2 tau^#(v_2))."""
    h = tau_hom(rho.tau1, rho.tau2)
    chi_inv = fe_inverse(chi(rho))
    out = []
    for which, comp in ((1, v[0]), (2, v[1])):
        factor = fe_mul(chi_inv, fe_pow(phi(rho.tau, which), -2))
        out.append(fe_mul(factor, hom_apply(h, comp)))
    return out[0], out[1]


def psi(rho: GXElement, f: FieldElement) -> FieldElement:
    """chi(rho)^-1 tau^#(f)."""
    return fe_mul(fe_inverse(chi(rho)), hom_apply(tau_hom(rho.tau1, rho.tau2), f))


def apply_pf(f: FieldElement) -> FunctionPair:
    pf = build_pf()
    return op_apply(pf.first, f), op_apply(pf.second, f)


def _find_gt(base_label: str, s_c: FieldElement, s_1mc: FieldElement) -> int:
    for t in gt_factor_all():
        if t.base.label == base_label and t.s_c == s_c and t.s_1mc == s_1mc:
            return t.index
    raise LookupError(f"no automorphism over {base_label} with the requested roots")


def rho_a() -> GXElement:
    """(id, id, tau^a, 1) with tau^a flipping sqrt(1-a) only."""
    t = _find_gt("id", SQRT_A, fe_neg(SQRT_1MA))
    return GXElement(SIGMA_ID, SIGMA_ID, t, gt_identity(), 0)


def rho_b() -> GXElement:
    """((1 inf), (1 inf), tau^b, tau^b, 1) with tau^b swapping sqrt(a) and sqrt(1-a) on both sides."""
    t = _find_gt("(0 1)", SQRT_1MA, SQRT_A)
    sigma = SIGMA_INDEX[SmallPerm.from_cycles(SIGMA_POINTS, "(1 inf)")]
    return GXElement(sigma, sigma, t, t, 0)


def seed_image() -> FunctionPair:
    """(2/(a-b)) (sqrt(1-b)/sqrt(1-a) - 1, 1 - sqrt(1-a)/sqrt(1-b))."""
    two_over = fe_from_rational(canonical(2 / (A - B)))
    ratio = fe_mul(SQRT_1MB, fe_inverse(SQRT_1MA))
    return (fe_mul(two_over, fe_add(ratio, fe_neg(ONE))),
            fe_mul(two_over, fe_add(ONE, fe_neg(fe_inverse(ratio)))))


# ---------------------------------------------------------------------------
# Checks
# ---------------------------------------------------------------------------

def _random_operator(rng: np.random.Generator) -> DifferentialOperator:
    idx = [(0, 0), (1, 0), (0, 1)]
    return DifferentialOperator.from_mapping({i: random_element(rng, max_terms=1) for i in idx
                                              if rng.random() < 0.8})


def check_pf_operators(settings: RunSettings) -> CheckResult:
    pf = build_pf()
    expected = {
        "d1_aa": pf.first.coeff(2, 0) == fe_from_rational(A * (1 - A)),
        "d2_b": pf.second.coeff(0, 1) == fe_from_rational(1 - 2 * B),
        "d1_bb_zero": pf.first.coeff(0, 2).is_zero(),
        "d1_const": op_apply(pf.first, ONE) == fe_from_rational(K(-1) / 4),
        "leibniz_da_a": op_compose(d("a"), mult(A_EL)) == op_add(op_scale(A_EL, d("a")), IDENTITY_OP),
    }
    bad = [k for k, ok in expected.items() if not ok]
    return verdict("pf_operators", not bad, {"failed": bad}, {"coefficients_checked": len(expected)})


def check_operator_ring(settings: RunSettings) -> CheckResult:
    """Associativity of composition and compatibility with application on random samples."""
    logger.info("🔍 Checking operator composition laws")
    rng = np.random.default_rng(settings.seed)
    for k in range(PROPERTY_SAMPLES):
        D, E, F = (_random_operator(rng) for _ in range(3))
        f = random_element(rng)
        if op_compose(op_compose(D, E), F) != op_compose(D, op_compose(E, F)):
            return verdict("operator_ring", False, {"sample": k, "law": "associativity"})
        if op_apply(op_compose(D, E), f) != op_apply(D, op_apply(E, f)):
            return verdict("operator_ring", False, {"sample": k, "law": "application"})
        g = random_element(rng)
        if op_compose(mult(f), mult(g)) != mult(fe_mul(f, g)):
            return verdict("operator_ring", False, {"sample": k, "law": "multiplication"})
    return verdict("operator_ring", True, {}, {"samples": PROPERTY_SAMPLES})


def check_transformation_all(settings: RunSettings) -> CheckResult:
    logger.info("🔍 Checking phi^3 D phi^-1 = D^tau on all 576 tau")
    for t1 in range(24):
        for t2 in range(24):
            if not verify_transformation((t1, t2)):
                tau = gt_factor_all()
                logger.error(f"❌ Transformation formula fails at ({tau[t1].label}, {tau[t2].label})")
                return verdict("transformation_all", False, {"tau": [tau[t1].label, tau[t2].label]})
    logger.info("✅ Transformation formula holds on all of G_T")
    return verdict("transformation_all", True, {}, {"elements": 576})


def check_transformed_operators(settings: RunSettings) -> CheckResult:
    """The three literal operators, one per class of base permutations."""
    for t in gt_factor_all():
        if _conjugated_pf(t.index, 1) != transformed_pf_operator(t.base):
            return verdict("transformed_operators", False, {"tau": t.label,
                                                            "computed": _conjugated_pf(t.index, 1).describe()})
    # the worked chain rule for a' = a/(a-1)
    t = next(t for t in gt_factor_all() if t.base.label == "(1 inf)")
    chain = _chain_factor(t.hom.a_image, "a")
    if chain != op_scale(fe_from_rational(canonical(-(A - 1) ** 2)), d("a")):
        return verdict("transformed_operators", False, {"chain_rule": chain.describe()})
    return verdict("transformed_operators", True, {}, {"classes": 3, "elements": 24})


def check_pullback_laws(settings: RunSettings) -> CheckResult:
    """Functoriality of pullback and D^tau(tau^# f) = tau^#(D f)."""
    logger.info("🔍 Checking pullback functoriality and intertwining")
    rng = np.random.default_rng(settings.seed + 1)
    pf = build_pf()
    for k in range(PROPERTY_SAMPLES):
        t, s = (tuple(int(x) for x in rng.integers(24, size=2)) for _ in range(2))
        h, h2 = tau_hom(*t), tau_hom(*s)
        for D in (pf.first, pf.second):
            if pullback_operator(pullback_operator(D, h), h2) != pullback_operator(D, hom_then(h, h2)):
                return verdict("pullback_laws", False, {"sample": k, "law": "functoriality", "tau": t, "tau2": s})
        f = random_element(rng)
        if not verify_pullback_intertwining(t, f):
            return verdict("pullback_laws", False, {"sample": k, "law": "intertwining", "tau": t,
                                                    "f": serialize_field_element(f)})
    return verdict("pullback_laws", True, {}, {"samples": PROPERTY_SAMPLES})


def check_theta_psi(settings: RunSettings) -> CheckResult:
    """Psi linearization, D(Psi f) = Theta(D f), Theta composition and the two worked images."""
    logger.info("🔍 Checking Theta and Psi")
    rng = np.random.default_rng(settings.seed + 2)
    for k in range(PROPERTY_SAMPLES):
        g, h = gx_random(rng), gx_random(rng)
        f = random_element(rng)
        if psi(gx_mul(g, h), f) != psi(h, psi(g, f)):
            return verdict("theta_psi", False, {"sample": k, "law": "psi_linearization",
                                                "g": g.label, "h": h.label})
        if apply_pf(psi(g, f)) != theta(g, apply_pf(f)):
            return verdict("theta_psi", False, {"sample": k, "law": "D_psi_equals_theta_D", "g": g.label})
        v = (random_element(rng), random_element(rng))
        if theta(gx_mul(g, h), v) != theta(h, theta(g, v)):
            return verdict("theta_psi", False, {"sample": k, "law": "theta_composition",
                                                "g": g.label, "h": h.label})
    seed = seed_image()
    if theta(gx_identity(), seed) != seed:
        return verdict("theta_psi", False, {"law": "identity"})
    two_over = fe_from_rational(canonical(2 / (A - B)))
    ratio = fe_mul(SQRT_1MB, fe_inverse(SQRT_1MA))
    expected_a = (fe_mul(two_over, fe_add(ONE, ratio)), fe_neg(fe_mul(two_over, fe_add(ONE, fe_inverse(ratio)))))
    two_over_b = fe_from_rational(canonical(2 / ((1 - A) - (1 - B))))
    root_ratio = fe_mul(SQRT_B, fe_inverse(SQRT_A))
    expected_b = (fe_mul(two_over_b, fe_add(root_ratio, fe_neg(ONE))),
                  fe_mul(two_over_b, fe_add(ONE, fe_neg(fe_inverse(root_ratio)))))
    if theta(rho_a(), seed) != expected_a:
        return verdict("theta_psi", False, {"law": "rho_a_image"})
    if theta(rho_b(), seed) != expected_b:
        return verdict("theta_psi", False, {"law": "rho_b_image"})
    return verdict("theta_psi", True, {}, {"samples": PROPERTY_SAMPLES})
