# rational_field/tools.py
import logging
from dataclasses import dataclass, field as dataclass_field
from functools import lru_cache
from typing import Dict, Iterator, List, Sequence, Tuple

import numpy as np
from sympy.polys.domains import QQ_I
from sympy.polys.fields import FracElement, field

from ...checks import CheckResult, verdict
from ...config import POLE_MARGIN, SAMPLE_REGION, RunSettings
from ...errors import DegenerateNorm, InvalidBranchPoint, InvalidHom, PoleAtPoint, ZeroInverse

logging.basicConfig(level=logging.INFO, format='%(asctime)s | %(name)s | %(levelname)s | %(message)s')
logger = logging.getLogger("field_tools")

# Base function field Q(i)(a, b)
K, A, B = field("a,b", QQ_I)
I_UNIT = QQ_I.imag_unit

# Slot index = bit mask over (sqrt(a), sqrt(1-a), sqrt(b), sqrt(1-b))
N_SLOTS = 16
SQRT_NAMES = ("sqrt(a)", "sqrt(1-a)", "sqrt(b)", "sqrt(1-b)")
RADICANDS = (A, 1 - A, B, 1 - B)

SQRT_TOL = 1e-14
LOCUS_TOL = 1e-12
POLE_TOL = 1e-13

FIELD_AXIOM_SAMPLES = 1000
PROPERTY_SAMPLES = 500


def canonical(f: FracElement) -> FracElement:
    """Cancelled fraction with a monic (lex-leading) denominator."""
    if not f.numer:
        return f.field.zero
    lc = f.denom.LC
    if lc == f.field.domain.one:
        return f
    return f.raw_new(f.numer.quo_ground(lc), f.denom.quo_ground(lc))


def _overlap_factor(mask: int) -> FracElement:
    out = K.one
    for bit in range(4):
        if mask >> bit & 1:
            out = out * RADICANDS[bit]
    return canonical(out)


OVERLAP = tuple(_overlap_factor(m) for m in range(N_SLOTS))


@dataclass(frozen=True)
class FieldElement:
    """Element of Q(i)(a,b)[sqrt(a), sqrt(1-a), sqrt(b), sqrt(1-b)] as 16 rational coefficients."""

    coeffs: Tuple[FracElement, ...]

    def __post_init__(self):
        if len(self.coeffs) != N_SLOTS:
            raise ValueError(f"expected {N_SLOTS} coefficient slots, got {len(self.coeffs)}")

    def terms(self) -> Iterator[Tuple[int, FracElement]]:
        for mask, c in enumerate(self.coeffs):
            if c:
                yield mask, c

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_part(self) -> FracElement:
        return self.coeffs[0]

    def __add__(self, other: "FieldElement") -> "FieldElement":
        return fe_add(self, _lift(other))

    __radd__ = __add__

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        return fe_add(self, fe_neg(_lift(other)))

    def __rsub__(self, other: "FieldElement") -> "FieldElement":
        return fe_add(_lift(other), fe_neg(self))

    def __neg__(self) -> "FieldElement":
        return fe_neg(self)

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        return fe_mul(self, _lift(other))

    __rmul__ = __mul__

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        return fe_mul(self, fe_inverse(_lift(other)))

    def __rtruediv__(self, other: "FieldElement") -> "FieldElement":
        return fe_mul(_lift(other), fe_inverse(self))

    def __pow__(self, n: int) -> "FieldElement":
        return fe_pow(self, n)

    def __repr__(self) -> str:
        return f"FieldElement({serialize_field_element(self)})"


def fe_from_rational(r) -> FieldElement:
    """Element with a single rational coefficient on the slot 1."""
    return fe_monomial(0, r)


def fe_monomial(mask: int, coeff=1) -> FieldElement:
    slots = [K.zero] * N_SLOTS
    slots[mask] = canonical(K(coeff) if not isinstance(coeff, FracElement) else coeff)
    return FieldElement(tuple(slots))


def fe_const(value) -> FieldElement:
    """Gaussian-rational constant; accepts ints, QQ_I elements and Python complex with integer parts.

    Raises:
        ValueError: a complex value with a non-integer real or imaginary part.
    """
    if isinstance(value, complex):
        if not (float(value.real).is_integer() and float(value.imag).is_integer()):
            raise ValueError(f"constant {value} is not a Gaussian integer")
        value = QQ_I(int(value.real), int(value.imag))
    return fe_monomial(0, K.ground_new(QQ_I.convert(value)))


def _lift(x) -> FieldElement:
    if isinstance(x, FieldElement):
        return x
    if isinstance(x, FracElement):
        return fe_from_rational(x)
    return fe_const(x)


ZERO = FieldElement(tuple([K.zero] * N_SLOTS))
ONE = fe_monomial(0, 1)
I_ELEMENT = fe_const(I_UNIT)
A_EL = fe_from_rational(A)
B_EL = fe_from_rational(B)
SQRT_A = fe_monomial(0b0001)
SQRT_1MA = fe_monomial(0b0010)
SQRT_B = fe_monomial(0b0100)
SQRT_1MB = fe_monomial(0b1000)


def mu4(k: int) -> FieldElement:
    """i**k as a constant."""
    return fe_const((QQ_I.one, I_UNIT, -QQ_I.one, -I_UNIT)[k % 4])


@lru_cache(maxsize=200_000)
def fe_add(x: FieldElement, y: FieldElement) -> FieldElement:
    """Coefficient-wise sum."""
    if x.is_zero():
        return y
    if y.is_zero():
        return x
    return FieldElement(tuple(canonical(p + q) for p, q in zip(x.coeffs, y.coeffs)))


def fe_neg(x: FieldElement) -> FieldElement:
    return FieldElement(tuple(-c for c in x.coeffs))


@lru_cache(maxsize=200_000)
def fe_mul(x: FieldElement, y: FieldElement) -> FieldElement:
    """Product with sqrt(u)*sqrt(u) reduced to u for each of the four radicands."""
    out = [K.zero] * N_SLOTS
    for i, ci in x.terms():
        for j, cj in y.terms():
            out[i ^ j] = out[i ^ j] + ci * cj * OVERLAP[i & j]
    return FieldElement(tuple(canonical(c) for c in out))


def fe_scale(x: FieldElement, r: FracElement) -> FieldElement:
    return FieldElement(tuple(canonical(c * r) for c in x.coeffs))


def fe_flip(x: FieldElement, bit: int) -> FieldElement:
    """Conjugate flipping the sign of one square root."""
    return FieldElement(tuple(-c if mask >> bit & 1 else c for mask, c in enumerate(x.coeffs)))


@lru_cache(maxsize=50_000)
def fe_inverse(x: FieldElement) -> FieldElement:
    """Inverse through the norm to Q(i)(a,b).

    Multiplying by the conjugate under each sign flip in turn leaves a norm that
    is invariant under all four flips, hence rational. The product of the
    conjugates divided by that norm is the inverse.

    Raises:
        ZeroInverse: x is zero.
        DegenerateNorm: the norm is not a nonzero rational function.
    """
    if x.is_zero():
        raise ZeroInverse("inverse of zero")
    conj = ONE
    norm = x
    for bit in range(4):
        c = fe_flip(norm, bit)
        conj = fe_mul(conj, c)
        norm = fe_mul(norm, c)
    if not norm.is_rational() or not norm.rational_part():
        raise DegenerateNorm("norm is not a nonzero rational function",
                             {"element": serialize_field_element(x)})
    return fe_scale(conj, canonical(1 / norm.rational_part()))


def fe_pow(x: FieldElement, n: int) -> FieldElement:
    if n < 0:
        return fe_pow(fe_inverse(x), -n)
    out = ONE
    base = x
    while n:
        if n & 1:
            out = fe_mul(out, base)
        base = fe_mul(base, base)
        n >>= 1
    return out


@lru_cache(maxsize=50_000)
def fe_derive(x: FieldElement, var: str) -> FieldElement:
    """Partial derivative in a or b.

    d sqrt(u)/du = sqrt(u)/(2u) for the two radicands of the variable; the
    sqrt(1-u) rule picks up the sign of d(1-u)/du.
    """
    if var not in ("a", "b"):
        raise ValueError(f"unknown variable {var!r}")
    gen, lo = (A, 0) if var == "a" else (B, 2)
    u = RADICANDS[lo]
    out = [K.zero] * N_SLOTS
    for mask, r in x.terms():
        log_deriv = K.zero
        if mask >> lo & 1:
            log_deriv = log_deriv + 1 / (2 * u)
        if mask >> (lo + 1) & 1:
            log_deriv = log_deriv - 1 / (2 * (1 - u))
        out[mask] = r.diff(gen) + r * log_deriv
    return FieldElement(tuple(canonical(c) for c in out))


def random_element(rng: np.random.Generator, max_terms: int = 2, nonzero: bool = True) -> FieldElement:
    """Sparse random element with small Gaussian-integer data; used by property checks."""
    denominators = [K.one, A - B, A + 1, B - 2, A * B - 1, 1 - A, A + B]
    slots = [K.zero] * N_SLOTS
    n_terms = int(rng.integers(1, max_terms + 1))
    for mask in rng.choice(N_SLOTS, size=n_terms, replace=False):
        cs = [QQ_I(int(rng.integers(-3, 4)), int(rng.integers(-2, 3))) for _ in range(3)]
        numer = K.ground_new(cs[0]) + A * cs[1] + B * cs[2]
        slots[int(mask)] = canonical(numer / denominators[int(rng.integers(len(denominators)))])
    x = FieldElement(tuple(slots))
    if nonzero and x.is_zero():
        return fe_monomial(int(rng.integers(N_SLOTS)), QQ_I(1, int(rng.integers(0, 2))))
    return x


class FieldHom:
    """Ring homomorphism given by the images of a, b and the four square roots.

    Images are checked on construction: a and b go to rational functions and
    every square-root image squares to the image of its radicand.
    """

    __slots__ = ("images", "_applied", "_monomials", "_rationals", "_hash")

    GENERATORS = ("a", "b") + SQRT_NAMES

    def __init__(self, a_image: FieldElement, b_image: FieldElement, sqrt_a: FieldElement,
                 sqrt_1ma: FieldElement, sqrt_b: FieldElement, sqrt_1mb: FieldElement,
                 validate: bool = True):
        self.images = (a_image, b_image, sqrt_a, sqrt_1ma, sqrt_b, sqrt_1mb)
        self._applied: Dict[FieldElement, FieldElement] = {}
        self._monomials: Dict[int, FieldElement] = {}
        self._rationals: Dict[FracElement, FracElement] = {}
        self._hash = hash(self.images)
        if validate:
            self._validate()

    def _validate(self):
        a_img, b_img = self.images[:2]
        for name, img in (("a", a_img), ("b", b_img)):
            if not img.is_rational():
                raise InvalidHom(f"image of {name} is not rational", {"generator": name})
        radicand_images = (a_img, ONE - a_img, b_img, ONE - b_img)
        for name, root, radicand in zip(SQRT_NAMES, self.images[2:], radicand_images):
            if fe_mul(root, root) != radicand:
                raise InvalidHom(f"image of {name} does not square to its radicand",
                                 {"generator": name, "image": serialize_field_element(root)})

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldHom) and self.images == other.images

    def __hash__(self) -> int:
        return self._hash

    @property
    def a_image(self) -> FracElement:
        return self.images[0].rational_part()

    @property
    def b_image(self) -> FracElement:
        return self.images[1].rational_part()

    def substitute(self, r: FracElement) -> FracElement:
        """r(image(a), image(b))."""
        cached = self._rationals.get(r)
        if cached is None:
            cached = substitute(r, self.a_image, self.b_image)
            self._rationals[r] = cached
        return cached

    def monomial(self, mask: int) -> FieldElement:
        cached = self._monomials.get(mask)
        if cached is None:
            cached = ONE
            for bit in range(4):
                if mask >> bit & 1:
                    cached = fe_mul(cached, self.images[2 + bit])
            self._monomials[mask] = cached
        return cached


def substitute_poly(poly, a_val: FracElement, b_val: FracElement) -> FracElement:
    """Two-generator polynomial evaluated at rational functions of any one field."""
    one = a_val.field.one
    a_pows: Dict[int, FracElement] = {0: one}
    b_pows: Dict[int, FracElement] = {0: one}
    total = a_val.field.zero
    for (i, j), c in poly.terms():
        if i not in a_pows:
            a_pows[i] = a_val ** i
        if j not in b_pows:
            b_pows[j] = b_val ** j
        total = total + a_pows[i] * b_pows[j] * c
    return total


def substitute(r: FracElement, a_val: FracElement, b_val: FracElement) -> FracElement:
    """r with its two generators replaced by a_val and b_val."""
    return canonical(substitute_poly(r.numer, a_val, b_val) / substitute_poly(r.denom, a_val, b_val))


def hom_apply(h: FieldHom, x: FieldElement) -> FieldElement:
    """Image of x under the ring homomorphism h."""
    cached = h._applied.get(x)
    if cached is not None:
        return cached
    out = ZERO
    for mask, r in x.terms():
        out = fe_add(out, fe_scale(h.monomial(mask), h.substitute(r)))
    h._applied[x] = out
    return out


def hom_then(first: FieldHom, second: FieldHom) -> FieldHom:
    """The homomorphism x -> second(first(x))."""
    return FieldHom(*(hom_apply(second, img) for img in first.images), validate=False)


IDENTITY_HOM = FieldHom(A_EL, B_EL, SQRT_A, SQRT_1MA, SQRT_B, SQRT_1MB)
SWAP_AB = FieldHom(B_EL, A_EL, SQRT_B, SQRT_1MB, SQRT_A, SQRT_1MA)


def _near(x: complex, y: complex) -> bool:
    return abs(x - y) <= LOCUS_TOL * max(1.0, abs(x), abs(y))


def _csqrt(v: complex) -> complex:
    return complex(np.sqrt(np.complex128(v)))


@dataclass(frozen=True)
class BranchPoint:
    """A point (a, b) of the parameter space with chosen values of the four square roots."""

    a: complex
    b: complex
    sqrt_a: complex
    sqrt_1ma: complex
    sqrt_b: complex
    sqrt_1mb: complex
    _roots: Tuple[complex, ...] = dataclass_field(init=False, repr=False, compare=False)

    def __post_init__(self):
        a, b = complex(self.a), complex(self.b)
        excluded = {
            "a=0": _near(a, 0), "a=1": _near(a, 1), "b=0": _near(b, 0), "b=1": _near(b, 1),
            "a=b": _near(a, b), "a=1-b": _near(a, 1 - b),
        }
        if not (excluded["b=0"] or excluded["b=1"]):
            excluded.update({
                "a=1/b": _near(a, 1 / b), "a=1/(1-b)": _near(a, 1 / (1 - b)),
                "a=(b-1)/b": _near(a, (b - 1) / b), "a=b/(b-1)": _near(a, b / (b - 1)),
            })
        hit = [name for name, bad in excluded.items() if bad]
        if hit:
            raise InvalidBranchPoint(f"point lies on excluded locus {hit[0]}",
                                     {"a": str(a), "b": str(b), "loci": hit})
        radicands = (a, 1 - a, b, 1 - b)
        roots = tuple(complex(r) for r in (self.sqrt_a, self.sqrt_1ma, self.sqrt_b, self.sqrt_1mb))
        for name, root, radicand in zip(SQRT_NAMES, roots, radicands):
            if abs(root * root - radicand) > SQRT_TOL * abs(radicand):
                raise InvalidBranchPoint(f"{name} does not square to its radicand",
                                         {"root": name, "value": str(root), "radicand": str(radicand)})
        object.__setattr__(self, "_roots", roots)

    @classmethod
    def principal(cls, a: complex, b: complex) -> "BranchPoint":
        a, b = complex(a), complex(b)
        return cls(a, b, _csqrt(a), _csqrt(1 - a), _csqrt(b), _csqrt(1 - b))

    @property
    def roots(self) -> Tuple[complex, ...]:
        return self._roots

    def shifted(self, da: complex = 0.0, db: complex = 0.0) -> "BranchPoint":
        """Nearby point whose roots continue the current ones."""
        a, b = complex(self.a) + da, complex(self.b) + db
        picks = []
        for radicand, old in zip((a, 1 - a, b, 1 - b), self._roots):
            root = _csqrt(radicand)
            picks.append(root if abs(root - old) <= abs(root + old) else -root)
        return BranchPoint(a, b, *picks)

    def with_signs(self, signs: Sequence[int]) -> "BranchPoint":
        return BranchPoint(self.a, self.b, *(s * r for s, r in zip(signs, self._roots)))

    def monomial_value(self, mask: int) -> complex:
        value = 1.0 + 0j
        for bit in range(4):
            if mask >> bit & 1:
                value *= self._roots[bit]
        return value

    def as_dict(self) -> Dict[str, str]:
        return {"a": repr(complex(self.a)), "b": repr(complex(self.b))}


def random_branch_points(rng: np.random.Generator, n: int) -> List[BranchPoint]:
    """Principal-branch points with a, b in the negative sampling interval, away from poles."""
    lo, hi = SAMPLE_REGION
    points: List[BranchPoint] = []
    while len(points) < n:
        a, b = rng.uniform(lo, hi, size=2)
        if abs(a - b) < POLE_MARGIN or abs(a * b - 1) < POLE_MARGIN:
            continue
        points.append(BranchPoint.principal(float(a), float(b)))
    return points


def _gauss_to_complex(c) -> complex:
    return complex(float(c.x), float(c.y))


def _eval_poly(poly, a: complex, b: complex) -> Tuple[complex, float]:
    total = 0j
    scale = 0.0
    for (i, j), c in poly.terms():
        term = _gauss_to_complex(c) * a ** i * b ** j
        total += term
        scale += abs(term)
    return total, scale


def eval_rational(r: FracElement, a: complex, b: complex) -> complex:
    num, _ = _eval_poly(r.numer, a, b)
    den, scale = _eval_poly(r.denom, a, b)
    if abs(den) <= POLE_TOL * scale:
        raise PoleAtPoint("denominator vanishes at point",
                          {"denominator": str(r.denom), "a": str(a), "b": str(b)})
    return num / den


def fe_eval(x: FieldElement, p: BranchPoint) -> complex:
    """Numeric value at a branch point.

    Raises:
        PoleAtPoint: a coefficient denominator vanishes at (p.a, p.b).
    """
    a, b = complex(p.a), complex(p.b)
    return sum((eval_rational(r, a, b) * p.monomial_value(mask) for mask, r in x.terms()), 0j)


def monomial_name(mask: int) -> str:
    parts = [name for bit, name in enumerate(SQRT_NAMES) if mask >> bit & 1]
    return "*".join(parts) if parts else "1"


def serialize_field_element(x: FieldElement) -> str:
    """Canonical prefix form.

    element  := "0" | "(+ " term (" " term)* ")"
    term     := "(* [" numer "/" denom "] " monomial ")"
    monomial := "1" | sqrt names joined by "*"

    Terms follow the slot order (1, sqrt(a), sqrt(1-a), sqrt(a)*sqrt(1-a)) times
    the b analogues; numer/denom are the canonical (monic-denominator) polynomials.
    """
    terms = [f"(* [{r.numer}/{r.denom}] {monomial_name(mask)})" for mask, r in x.terms()]
    if not terms:
        return "0"
    return "(+ " + " ".join(terms) + ")"


# ---------------------------------------------------------------------------
# Checks
# ---------------------------------------------------------------------------

def check_field_axioms(settings: RunSettings) -> CheckResult:
    """Associativity, commutativity and distributivity on random triples, exact."""
    logger.info("🔍 Checking field axioms on random triples")
    rng = np.random.default_rng(settings.seed)
    for k in range(FIELD_AXIOM_SAMPLES):
        x, y, z = (random_element(rng) for _ in range(3))
        laws = {
            "add_assoc": fe_add(fe_add(x, y), z) == fe_add(x, fe_add(y, z)),
            "mul_assoc": fe_mul(fe_mul(x, y), z) == fe_mul(x, fe_mul(y, z)),
            "add_comm": fe_add(x, y) == fe_add(y, x),
            "mul_comm": fe_mul(x, y) == fe_mul(y, x),
            "distrib": fe_mul(x, fe_add(y, z)) == fe_add(fe_mul(x, y), fe_mul(x, z)),
        }
        broken = [law for law, ok in laws.items() if not ok]
        if broken:
            logger.error(f"❌ Field axiom {broken[0]} fails on sample {k}")
            return verdict("field_axioms", False, {"sample": k, "law": broken[0],
                                                   "x": serialize_field_element(x),
                                                   "y": serialize_field_element(y),
                                                   "z": serialize_field_element(z)})
    logger.info(f"✅ Field axioms hold on {FIELD_AXIOM_SAMPLES} triples")
    return verdict("field_axioms", True, {}, {"samples": FIELD_AXIOM_SAMPLES})


def check_inverse(settings: RunSettings) -> CheckResult:
    logger.info("🔍 Checking x * inverse(x) = 1")
    rng = np.random.default_rng(settings.seed + 1)
    for k in range(PROPERTY_SAMPLES):
        x = random_element(rng, max_terms=3)
        if fe_mul(x, fe_inverse(x)) != ONE:
            return verdict("inverse", False, {"sample": k, "x": serialize_field_element(x)})
    logger.info(f"✅ Inverses verified on {PROPERTY_SAMPLES} elements")
    return verdict("inverse", True, {}, {"samples": PROPERTY_SAMPLES})


def check_leibniz(settings: RunSettings) -> CheckResult:
    logger.info("🔍 Checking the Leibniz rule for both partials")
    rng = np.random.default_rng(settings.seed + 2)
    for k in range(PROPERTY_SAMPLES):
        x, y = random_element(rng), random_element(rng)
        for var in ("a", "b"):
            lhs = fe_derive(fe_mul(x, y), var)
            rhs = fe_add(fe_mul(fe_derive(x, var), y), fe_mul(x, fe_derive(y, var)))
            if lhs != rhs:
                return verdict("leibniz", False, {"sample": k, "var": var,
                                                  "x": serialize_field_element(x),
                                                  "y": serialize_field_element(y)})
    logger.info(f"✅ Leibniz rule holds on {PROPERTY_SAMPLES} pairs")
    return verdict("leibniz", True, {}, {"samples": PROPERTY_SAMPLES})


def check_hom_multiplicative(settings: RunSettings) -> CheckResult:
    """h(xy) = h(x)h(y) for the swap and a sign-flip/Möbius homomorphism."""
    logger.info("🔍 Checking ring-homomorphism property")
    rng = np.random.default_rng(settings.seed + 3)
    flip = FieldHom(fe_add(ONE, fe_neg(A_EL)), B_EL, SQRT_1MA, SQRT_A, SQRT_B, fe_neg(SQRT_1MB))
    homs = {"swap_ab": SWAP_AB, "reflect_a": flip}
    for k in range(PROPERTY_SAMPLES):
        x, y = random_element(rng), random_element(rng)
        for name, h in homs.items():
            if hom_apply(h, fe_mul(x, y)) != fe_mul(hom_apply(h, x), hom_apply(h, y)):
                return verdict("hom_multiplicative", False, {"sample": k, "hom": name,
                                                             "x": serialize_field_element(x),
                                                             "y": serialize_field_element(y)})
    logger.info(f"✅ Homomorphism property holds on {PROPERTY_SAMPLES} pairs")
    return verdict("hom_multiplicative", True, {}, {"samples": PROPERTY_SAMPLES})


def check_eval_compatible(settings: RunSettings) -> CheckResult:
    """Evaluation commutes with + and * to relative 1e-12."""
    logger.info("🔍 Checking numeric evaluation against arithmetic")
    rng = np.random.default_rng(settings.seed + 4)
    points = random_branch_points(rng, settings.points)
    worst = 0.0
    for k in range(100):
        x, y = random_element(rng), random_element(rng)
        for p in points:
            try:
                ex, ey = fe_eval(x, p), fe_eval(y, p)
                es, em = fe_eval(fe_add(x, y), p), fe_eval(fe_mul(x, y), p)
            except PoleAtPoint:
                continue
            scale_s = max(abs(ex) + abs(ey), 1e-300)
            scale_m = max(abs(ex * ey), 1e-300)
            worst = max(worst, abs(es - (ex + ey)) / scale_s, abs(em - ex * ey) / scale_m)
    ok = worst <= 1e-12
    logger.info(f"📊 Worst relative evaluation mismatch {worst:.3e}")
    return verdict("eval_compatible", ok, {"worst_relative": worst}, {"worst_relative": worst})


def check_derivative_fd(settings: RunSettings) -> CheckResult:
    """d/da of sqrt(1-a)/sqrt(1-b) against central differences."""
    logger.info("🔍 Checking exact derivative against finite differences")
    rng = np.random.default_rng(settings.seed + 5)
    f = fe_mul(SQRT_1MA, fe_inverse(SQRT_1MB))
    df = fe_derive(f, "a")
    expected = fe_neg(fe_mul(SQRT_1MA, fe_inverse(fe_scale(SQRT_1MB, 2 * (1 - A)))))
    if df != expected:
        return verdict("derivative_fd", False, {"derivative": serialize_field_element(df)})
    h = 1e-5
    worst = 0.0
    for p in random_branch_points(rng, settings.points):
        fd = (fe_eval(f, p.shifted(da=h)) - fe_eval(f, p.shifted(da=-h))) / (2 * h)
        exact = fe_eval(df, p)
        worst = max(worst, abs(fd - exact) / abs(exact))
    logger.info(f"📊 Derivative finite-difference error {worst:.3e}")
    return verdict("derivative_fd", worst <= 1e-8, {"worst_relative": worst}, {"worst_relative": worst})


def monomial_matrix(p: BranchPoint) -> np.ndarray:
    """16x16 evaluations of the monomials over all sign choices of the roots at one (a, b)."""
    rows = []
    for signs_mask in range(N_SLOTS):
        q = p.with_signs([-1 if signs_mask >> bit & 1 else 1 for bit in range(4)])
        rows.append([q.monomial_value(m) for m in range(N_SLOTS)])
    return np.array(rows, dtype=complex)


def check_monomial_independence(settings: RunSettings) -> CheckResult:
    logger.info("🔍 Checking linear independence of the 16 monomials")
    rng = np.random.default_rng(settings.seed + 6)
    p = random_branch_points(rng, 1)[0]
    cond = float(np.linalg.cond(monomial_matrix(p)))
    logger.info(f"📊 Monomial matrix condition number {cond:.3e}")
    return verdict("monomial_independence", cond < 1e6, {"condition": cond}, {"condition": cond})
