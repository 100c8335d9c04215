# cocycles/tools.py
import logging
from functools import lru_cache
from typing import Callable, Dict, List, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, Field

from ...checks import CheckResult, verdict
from ...config import RunSettings
from ..group_engine.tools import (
    BASE_ORDER,
    UNDERLINE,
    GXElement,
    gt_factor_all,
    gt_identity,
    gt_mul,
    gx_all,
    gx_generators,
    gx_inverse,
    gx_mul,
    gx_random,
    tau_hom,
)
from ..rational_field.tools import (
    A,
    ONE,
    SQRT_1MA,
    SQRT_A,
    SWAP_AB,
    FieldElement,
    fe_from_rational,
    fe_inverse,
    fe_mul,
    fe_neg,
    hom_apply,
    mu4,
    serialize_field_element,
)

logging.basicConfig(level=logging.INFO, format='%(asctime)s | %(name)s | %(levelname)s | %(message)s')
logger = logging.getLogger("cocycle_tools")

MAX_WITNESSES = 5
INVERSE_SAMPLES = 1000

# eta_1 in the variable a, keyed by the base permutation
ETA_A: Dict[str, FieldElement] = {
    "id": ONE,
    "(0 1)": fe_neg(ONE),
    "(1 inf)": fe_from_rational(1 - A),
    "(0 1 inf)": fe_from_rational(A - 1),
    "(0 inf)": fe_from_rational(A),
    "(0 inf 1)": fe_from_rational(-A),
}

# sqrt(a) sqrt(1-a) / (a^2 - a + 1)
_U_A = fe_mul(fe_mul(SQRT_A, SQRT_1MA), fe_from_rational(1 / (A ** 2 - A + 1)))


class CocycleReport(BaseModel):
    name: str
    pairs_checked: int = 0
    failures: List[List[str]] = Field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.failures


def eta_factor(base_label: str, which: int) -> FieldElement:
    value = ETA_A[base_label]
    return value if which == 1 else hom_apply(SWAP_AB, value)


def eta(rho: GXElement) -> FieldElement:
    """eta_1(underline rho1) * eta_2(underline rho2)."""
    return _eta_cached(rho.rho1, rho.rho2)


@lru_cache(maxsize=None)
def _eta_cached(r1: int, r2: int) -> FieldElement:
    return fe_mul(eta_factor(UNDERLINE[r1].label, 1), eta_factor(UNDERLINE[r2].label, 2))


@lru_cache(maxsize=None)
def phi_factor(t: int) -> FieldElement:
    """phi_1 of an automorphism acting on the a-variables: t^#(u) / u."""
    return fe_mul(hom_apply(gt_factor_all()[t].hom, _U_A), fe_inverse(_U_A))


@lru_cache(maxsize=None)
def phi_full(t1: int, t2: int, which: int) -> FieldElement:
    """The coboundary formula with the whole pullback of (t1, t2)."""
    u = _U_A if which == 1 else hom_apply(SWAP_AB, _U_A)
    return fe_mul(hom_apply(tau_hom(t1, t2), u), fe_inverse(u))


def phi(tau: Tuple[int, int], which: int) -> FieldElement:
    """phi_1 depends on the first factor only, phi_2 on the second."""
    if which == 1:
        return phi_factor(tau[0])
    return hom_apply(SWAP_AB, phi_factor(tau[1]))


@lru_cache(maxsize=None)
def _chi_cached(zeta: int, t1: int, t2: int) -> FieldElement:
    return fe_mul(mu4(zeta), fe_mul(phi((t1, t2), 1), phi((t1, t2), 2)))


def chi(rho: GXElement) -> FieldElement:
    """zeta * phi_1(tau) * phi_2(tau)."""
    return _chi_cached(rho.zeta, rho.tau1, rho.tau2)


def pullback_of(h: GXElement):
    """h^# on B acts through the tau-component only."""
    return tau_hom(h.tau1, h.tau2)


CocycleName = Literal["eta", "chi", "phi1", "phi2"]


def _cocycle_holds(value: Callable, g, h, mul: Callable, pull: Callable) -> bool:
    return value(mul(g, h)) == fe_mul(hom_apply(pull(h), value(g)), value(h))


def verify_cocycle(which: CocycleName, samples: Union[int, Literal["exhaustive"]] = 10_000,
                   seed: int = 0, include_generators: bool = True) -> CocycleReport:
    """Check value(gh) = h^#(value(g)) * value(h).

    eta and chi range over G_X: random pairs plus every pair of generators.
    phi1/phi2 range over G_T; "exhaustive" covers all 576**2 pairs.
    """
    report = CocycleReport(name=which)
    if which in ("phi1", "phi2"):
        k = 1 if which == "phi1" else 2
        elems = [(t1, t2) for t1 in range(24) for t2 in range(24)]

        def mul(g, h):
            return gt_mul(g[0], h[0]), gt_mul(g[1], h[1])

        def pull(h):
            return tau_hom(h[0], h[1])

        def value(t):
            return phi(t, k)

        if samples == "exhaustive":
            pairs = ((g, h) for g in elems for h in elems)
        else:
            rng = np.random.default_rng(seed)
            pairs = ((elems[int(rng.integers(576))], elems[int(rng.integers(576))]) for _ in range(samples))
        for g, h in pairs:
            report.pairs_checked += 1
            if not _cocycle_holds(value, g, h, mul, pull) and len(report.failures) < MAX_WITNESSES:
                report.failures.append([str(g), str(h)])
        return report

    value = eta if which == "eta" else chi
    if samples == "exhaustive":
        raise ValueError("exhaustive mode is only available for phi1/phi2")
    rng = np.random.default_rng(seed)
    pairs: List[Tuple[GXElement, GXElement]] = [(gx_random(rng), gx_random(rng)) for _ in range(samples)]
    if include_generators:
        gens = gx_generators()
        pairs.extend((g, h) for g in gens for h in gens)
    for g, h in pairs:
        report.pairs_checked += 1
        if not _cocycle_holds(value, g, h, gx_mul, pullback_of) and len(report.failures) < MAX_WITNESSES:
            report.failures.append([g.label, h.label])
    return report


def verify_eta_square() -> Optional[GXElement]:
    """First rho with chi(rho)^2 != eta(rho), or None."""
    for rho in gx_all():
        x = chi(rho)
        if fe_mul(x, x) != eta(rho):
            return rho
    return None


def verify_eta_sign_square() -> Optional[Tuple[int, int, int]]:
    """eta_i(underline rho_i) = sgn(underline rho_i) * phi_i(tau)^2 over G_Y.

    The identity depends on rho_i only through its underline, so the classes
    (base, t) cover all of G_Y. Returns the first failing (which, base index, t).
    """
    for t in gt_factor_all():
        base = t.base
        for which in (1, 2):
            tau = (t.index, gt_identity()) if which == 1 else (gt_identity(), t.index)
            p = phi(tau, which)
            square = fe_mul(p, p)
            expected = eta_factor(base.label, which)
            if base.sign == -1:
                expected = fe_neg(expected)
            if square != expected:
                return which, BASE_ORDER.index(base), t.index
    return None


# ---------------------------------------------------------------------------
# Checks
# ---------------------------------------------------------------------------

def check_eta_square(settings: RunSettings) -> CheckResult:
    logger.info("🔍 Checking chi(rho)^2 = eta(rho) on all of G_X")
    bad = verify_eta_square()
    if bad is not None:
        logger.error(f"❌ chi^2 != eta at {bad.label}")
        return verdict("eta_square", False, {"rho": bad.label,
                                             "chi": serialize_field_element(chi(bad)),
                                             "eta": serialize_field_element(eta(bad))})
    logger.info(f"✅ chi^2 = eta on {len(gx_all())} elements")
    return verdict("eta_square", True, {}, {"elements": len(gx_all())})


def check_eta_sign_square(settings: RunSettings) -> CheckResult:
    logger.info("🔍 Checking eta_i = sgn * phi_i^2 over G_Y")
    bad = verify_eta_sign_square()
    if bad is None:
        # every element of G_Y restricts to one of these classes on each side
        return verdict("eta_sign_square", True, {}, {"classes": 2 * len(gt_factor_all()), "G_Y": 9216})
    which, base, t = bad
    return verdict("eta_sign_square", False, {"which": which, "base": BASE_ORDER[base].label,
                                              "tau": gt_factor_all()[t].label})


def check_phi_separation(settings: RunSettings) -> CheckResult:
    """phi_1 only sees the first factor of tau, phi_2 only the second, on all 576 elements."""
    logger.info("🔍 Checking variable separation of phi_1, phi_2")
    for t1 in range(24):
        for t2 in range(24):
            for which in (1, 2):
                if phi_full(t1, t2, which) != phi((t1, t2), which):
                    return verdict("phi_separation", False, {"tau": [t1, t2], "which": which})
    return verdict("phi_separation", True, {}, {"elements": 576})


def check_phi_values(settings: RunSettings) -> CheckResult:
    """phi_i(tau) squares to 1, +-a or +-(1-a) (resp. b)."""
    allowed = {ONE, fe_from_rational(A), fe_from_rational(-A), fe_from_rational(1 - A), fe_from_rational(A - 1)}
    for t in range(24):
        p = phi_factor(t)
        if fe_mul(p, p) not in allowed:
            return verdict("phi_values", False, {"tau": gt_factor_all()[t].label,
                                                 "phi": serialize_field_element(p)})
    return verdict("phi_values", True, {}, {"elements": 24})


def _report_result(name: str, report: CocycleReport) -> CheckResult:
    logger.info(f"📊 {report.name}: {report.pairs_checked} pairs, {len(report.failures)} failures")
    return verdict(name, report.holds, report.model_dump(), {"pairs_checked": report.pairs_checked})


def check_chi_cocycle(settings: RunSettings) -> CheckResult:
    logger.info(f"🔍 Checking the cocycle identity for chi on {settings.samples} random pairs")
    return _report_result("chi_cocycle", verify_cocycle("chi", settings.samples, seed=settings.seed))


def check_eta_cocycle(settings: RunSettings) -> CheckResult:
    logger.info(f"🔍 Checking the cocycle identity for eta on {settings.samples} random pairs")
    return _report_result("eta_cocycle", verify_cocycle("eta", settings.samples, seed=settings.seed + 1))


def check_phi_cocycles(settings: RunSettings) -> CheckResult:
    logger.info("🔍 Checking phi_1, phi_2 cocycle identities on all of G_T x G_T")
    reports = [verify_cocycle(name, "exhaustive") for name in ("phi1", "phi2")]
    failing = [r for r in reports if not r.holds]
    if failing:
        return _report_result("phi_cocycles", failing[0])
    return verdict("phi_cocycles", True, {}, {"pairs_checked": sum(r.pairs_checked for r in reports)})


def check_chi_inverse(settings: RunSettings) -> CheckResult:
    """chi(rho^-1) = (rho^-1)^#(chi(rho))^-1."""
    rng = np.random.default_rng(settings.seed + 2)
    for k in range(INVERSE_SAMPLES):
        rho = gx_random(rng)
        inv = gx_inverse(rho)
        if chi(inv) != fe_inverse(hom_apply(pullback_of(inv), chi(rho))):
            return verdict("chi_inverse", False, {"sample": k, "rho": rho.label})
    return verdict("chi_inverse", True, {}, {"samples": INVERSE_SAMPLES})
