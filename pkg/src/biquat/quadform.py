"""Diagonal quadratic forms and bilinear 2-fold Pfister forms.

Decisions are tri-state (``yes``/``no``/``unknown`` and
``isotropic``/``anisotropic``/``unknown``): when no complete procedure is
implemented for a field the answer is ``unknown`` rather than a guess.

Coverage:

* finite fields of odd characteristic: decided by dimension and discriminant;
* characteristic 2 (diagonal forms are totally singular): decided by linear
  algebra over the subfield of squares;
* the rationals: decided by local invariants (Hilbert symbols) at the real
  place, at 2 and at the primes dividing the coefficients;
* rational function fields of odd characteristic: only easy cases.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from sympy import symbols
from sympy.solvers.diophantine.diophantine import diop_ternary_quadratic_normal

from . import linalg as la
from .exactfield import (
    FieldDescriptor,
    FieldElement,
    f2_vector,
    factor_int,
    same_square_class,
    sqrt_if_square,
)

YES, NO, UNKNOWN = "yes", "no", "unknown"
ISOTROPIC, ANISOTROPIC = "isotropic", "anisotropic"

NONSINGULAR, TOTALLY_SINGULAR = "nonsingular", "totally_singular"

WITNESS_HEIGHT = 50
ENUMERATION_LIMIT = 10**6
RANDOM_TRIALS = 2000


class FormError(ValueError):
    pass


@dataclass(frozen=True)
class DiagonalQuadraticForm:
    """The form ``sum a_i x_i^2``, written ``<a_1,...,a_n>_q``."""

    coefficients: tuple[FieldElement, ...]
    field: FieldDescriptor

    @classmethod
    def of(cls, field: FieldDescriptor, coefficients: Sequence) -> "DiagonalQuadraticForm":
        return cls(tuple(field(c) for c in coefficients), field)

    @property
    def dim(self) -> int:
        return len(self.coefficients)

    @property
    def singularity(self) -> str:
        if self.field.characteristic == 2:
            return TOTALLY_SINGULAR
        if any(c.is_zero() for c in self.coefficients):
            return UNKNOWN
        return NONSINGULAR

    def __str__(self):
        return "<" + ",".join(map(str, self.coefficients)) + ">_q"

    def __call__(self, v: Sequence[FieldElement]) -> FieldElement:
        return evaluate(self, v)

    def scaled(self, alpha) -> "DiagonalQuadraticForm":
        alpha = self.field(alpha)
        return DiagonalQuadraticForm(tuple(alpha * c for c in self.coefficients), self.field)

    def __add__(self, other: "DiagonalQuadraticForm") -> "DiagonalQuadraticForm":
        """Orthogonal sum."""
        _same_field(self, other)
        return DiagonalQuadraticForm(self.coefficients + other.coefficients, self.field)

    def determinant(self) -> FieldElement:
        d = self.field.one
        for c in self.coefficients:
            d = d * c
        return d


@dataclass(frozen=True)
class BilinearPfisterForm:
    """``<<a_1,...,a_n>> = <1,a_1> (x) ... (x) <1,a_n>``."""

    slots: tuple[FieldElement, ...]

    @classmethod
    def of(cls, field: FieldDescriptor, slots: Sequence) -> "BilinearPfisterForm":
        return cls(tuple(field(s) for s in slots))

    @property
    def field(self) -> FieldDescriptor:
        return self.slots[0].field

    def __str__(self):
        return "<<" + ",".join(map(str, self.slots)) + ">>"

    def diagonal(self) -> tuple[FieldElement, ...]:
        """Diagonal entries ``(1, a_1, a_2, a_1 a_2, ...)``."""
        entries = [self.field.one]
        for a in self.slots:
            entries = entries + [e * a for e in entries]
        return tuple(entries)


@dataclass(frozen=True)
class IsotropyVerdict:
    status: str
    witness: Optional[tuple[FieldElement, ...]] = None

    def __post_init__(self):
        if self.witness is not None and all(w.is_zero() for w in self.witness):
            raise FormError("isotropy witness must be nonzero")


def _same_field(q1, q2):
    if q1.field != q2.field:
        raise FormError(f"forms over different fields: {q1.field} vs {q2.field}")


def evaluate(q: DiagonalQuadraticForm, v: Sequence[FieldElement]) -> FieldElement:
    if len(v) != q.dim:
        raise FormError(f"vector of length {len(v)} for a form of dimension {q.dim}")
    acc = q.field.zero
    for a, x in zip(q.coefficients, v):
        x = q.field(x)
        acc = acc + a * x * x
    return acc


def polar(q: DiagonalQuadraticForm, u: Sequence, v: Sequence) -> FieldElement:
    """``b_q(u, v) = q(u + v) - q(u) - q(v)``."""
    if len(u) != q.dim or len(v) != q.dim:
        raise FormError("dimension mismatch")
    w = [q.field(a) + q.field(b) for a, b in zip(u, v)]
    return evaluate(q, w) - evaluate(q, u) - evaluate(q, v)


# ---------------------------------------------------------------------------
# Characteristic 2: linear algebra over the subfield of squares


def frobenius_coordinates(x: FieldElement) -> list[FieldElement]:
    """Square roots of the F^2-coordinates of ``x``.

    ``sum x_i^2 a_i = 0`` is equivalent to ``sum x_i r(a_i) = 0`` where ``r``
    is this map, so questions over F^2 become ordinary linear algebra over F.
    """
    return [sqrt_if_square(c) for c in f2_vector(x)]


def f2_span_rank(elements: Sequence[FieldElement]) -> int:
    rows = [frobenius_coordinates(e) for e in elements]
    return la.rank(rows) if rows else 0


def same_f2_span(xs: Sequence[FieldElement], ys: Sequence[FieldElement]) -> bool:
    r = f2_span_rank(list(xs) + list(ys))
    return r == f2_span_rank(xs) == f2_span_rank(ys)


def _char2_isotropy(q: DiagonalQuadraticForm) -> IsotropyVerdict:
    cols = [frobenius_coordinates(a) for a in q.coefficients]
    kernel = la.nullspace(la.transpose(cols))
    if kernel:
        return IsotropyVerdict(ISOTROPIC, tuple(kernel[0]))
    return IsotropyVerdict(ANISOTROPIC)


def _char2_represent(q: DiagonalQuadraticForm, c: FieldElement) -> Optional[tuple]:
    cols = [frobenius_coordinates(a) for a in q.coefficients]
    sol = la.solve(la.transpose(cols), frobenius_coordinates(c))
    return None if sol is None else tuple(sol)


# ---------------------------------------------------------------------------
# Hilbert symbols and local invariants over Q


def _int_class(x: FieldElement) -> int:
    """An integer in the square class of a nonzero rational."""
    v = x.value if isinstance(x, FieldElement) else Fraction(x)
    if v == 0:
        raise FormError("Hilbert symbol of zero")
    return v.numerator * v.denominator


def _split_p(n: int, p: int) -> tuple[int, int]:
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e, n


def _legendre(u: int, p: int) -> int:
    r = pow(u % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else 1


def hilbert_symbol(a, b, place) -> int:
    """Hilbert symbol ``(a, b)_v`` over Q at ``place`` (``"infinity"`` or a prime)."""
    a, b = _int_class(a), _int_class(b)
    if place in ("infinity", "inf", math.inf):
        return -1 if a < 0 and b < 0 else 1
    p = int(place)
    alpha, u = _split_p(a, p)
    beta, v = _split_p(b, p)
    if p != 2:
        eps = (p - 1) // 2
        s = (-1) ** (alpha * beta * eps)
        if beta % 2:
            s *= _legendre(u, p)
        if alpha % 2:
            s *= _legendre(v, p)
        return s

    def e(x):
        return ((x - 1) // 2) % 2

    def w(x):
        return ((x * x - 1) // 8) % 2

    return (-1) ** ((e(u) * e(v) + alpha * w(v) + beta * w(u)) % 2)


def _prime_factors(n: int) -> set[int]:
    return {p for p, _ in factor_int(n)} if n else set()


def relevant_places(values: Sequence[FieldElement]) -> list:
    """``infinity``, 2 and every prime dividing a numerator or denominator."""
    primes = {2}
    for x in values:
        primes |= _prime_factors(_int_class(x))
    return ["infinity"] + sorted(primes)


def is_local_square(x, place) -> bool:
    n = _int_class(x)
    if place == "infinity":
        return n > 0
    e, u = _split_p(n, place)
    if e % 2:
        return False
    if place == 2:
        return u % 8 == 1
    return _legendre(u, place) == 1


def hasse_invariant(coefficients: Sequence[FieldElement], place) -> int:
    s = 1
    for a, b in itertools.combinations(coefficients, 2):
        s *= hilbert_symbol(a, b, place)
    return s


def locally_isotropic(coefficients: Sequence[FieldElement], place) -> bool:
    """Isotropy of a nondegenerate diagonal form over the completion at ``place``."""
    n = len(coefficients)
    if place == "infinity":
        signs = {c.value > 0 for c in coefficients}
        return len(signs) == 2
    if n <= 1:
        return False
    d = coefficients[0].field.one
    for c in coefficients:
        d = d * c
    if n == 2:
        return is_local_square(-d, place)
    eps = hasse_invariant(coefficients, place)
    if n == 3:
        return hilbert_symbol(-1, -d, place) == eps
    if n == 4:
        return not is_local_square(d, place) or eps == hilbert_symbol(-1, -1, place)
    return True


def _rational_isotropic(q: DiagonalQuadraticForm) -> bool:
    places = relevant_places(q.coefficients)
    return all(locally_isotropic(q.coefficients, v) for v in places)


# ---------------------------------------------------------------------------
# Witness search


def _candidates(field: FieldDescriptor, seed: int) -> list[FieldElement]:
    if field.is_finite:
        return field.elements()
    if field.kind == "rationals":
        vals = [field.zero]
        for n in range(1, WITNESS_HEIGHT + 1):
            vals += [field(n), field(-n)]
        return vals
    rng = random.Random(seed)
    return [field.zero, field.one, -field.one] + [field.random(rng, 2) for _ in range(8)]


def _solve_for_values(coeffs, target, cands, seed) -> Optional[tuple]:
    """``x`` with ``sum coeffs_i x_i^2 = target``; all but the last coordinate are searched."""
    depth = len(coeffs) - 1
    if len(cands) ** depth <= ENUMERATION_LIMIT:
        tuples = itertools.product(cands, repeat=depth)
    else:
        rng = random.Random(seed)
        tuples = (tuple(rng.choice(cands) for _ in range(depth)) for _ in range(RANDOM_TRIALS))
    last = coeffs[-1]
    for xs in tuples:
        rest = target
        for a, x in zip(coeffs, xs):
            if not x.is_zero():
                rest = rest - a * x * x
        r = sqrt_if_square(rest / last)
        if r is not None:
            return tuple(xs) + (r,)
    return None


def _legendre_normal_form(ints: list[int]) -> tuple[list[int], list[Fraction]]:
    """Squarefree, pairwise coprime coefficients ``b`` and scales ``s`` such that
    ``sum a_i (s_i X_i)^2`` is a multiple of ``sum b_i X_i^2``."""
    a = list(ints)
    scale = [Fraction(1)] * 3
    for _ in range(64):
        g = math.gcd(*a)
        a = [x // g for x in a]
        changed = False
        for i in range(3):
            for p, e in factor_int(a[i]):
                if e >= 2:
                    k = e // 2
                    a[i] //= p ** (2 * k)
                    scale[i] /= p**k
                    changed = True
        for i, j in ((0, 1), (0, 2), (1, 2)):
            g = math.gcd(a[i], a[j])
            if g > 1:
                k = 3 - i - j
                a[i], a[j], a[k] = a[i] // g, a[j] // g, a[k] * g
                scale[i] /= g
                scale[j] /= g
                changed = True
        if not changed:
            return a, scale
    raise FormError("coefficient normalisation did not terminate")


def _rational_ternary_zero(q: DiagonalQuadraticForm) -> Optional[tuple]:
    """Exact zero of a ternary form over Q by solving Legendre's equation."""
    den = math.lcm(*(c.value.denominator for c in q.coefficients))
    ints = [int(c.value * den) for c in q.coefficients]
    b, scale = _legendre_normal_form(ints)
    x, y, z = symbols("x y z", integer=True)
    sol = diop_ternary_quadratic_normal(b[0] * x**2 + b[1] * y**2 + b[2] * z**2)
    if sol[0] is None:
        return None
    w = tuple(q.field(s * int(v)) for s, v in zip(scale, sol))
    if all(c.is_zero() for c in w) or not evaluate(q, w).is_zero():
        return None
    return w


def find_isotropic_vector(q: DiagonalQuadraticForm, seed: int = 0) -> Optional[tuple]:
    """A nonzero zero of ``q`` (nondegenerate, char != 2).

    Ternary forms over Q are solved exactly; everything else is a bounded search.
    """
    field = q.field
    if field.kind == "rationals" and q.dim == 3:
        w = _rational_ternary_zero(q)
        if w is not None:
            return w
    cands = _candidates(field, seed)
    a = q.coefficients
    n = q.dim
    # Normalise the first nonzero coordinate to 1.
    for lead in range(n - 1):
        tail = _solve_for_values(a[lead + 1:], -a[lead], cands, seed)
        if tail is not None:
            return (field.zero,) * lead + (field.one,) + tail
    return None


# ---------------------------------------------------------------------------
# Isotropy


def isotropy(q: DiagonalQuadraticForm, seed: int = 0) -> IsotropyVerdict:
    field = q.field
    zero_at = next((i for i, c in enumerate(q.coefficients) if c.is_zero()), None)
    if zero_at is not None:
        w = [field.zero] * q.dim
        w[zero_at] = field.one
        return IsotropyVerdict(ISOTROPIC, tuple(w))
    if q.dim <= 1:
        return IsotropyVerdict(ANISOTROPIC)
    if field.characteristic == 2:
        return _char2_isotropy(q)
    if q.dim == 2:
        a, b = q.coefficients
        r = sqrt_if_square(-b / a)
        if r is None:
            return IsotropyVerdict(ANISOTROPIC)
        return IsotropyVerdict(ISOTROPIC, (r, field.one))
    if field.is_finite:
        # Every form of dimension >= 3 over a finite field is isotropic.
        return IsotropyVerdict(ISOTROPIC, find_isotropic_vector(q, seed))
    if field.kind == "rationals":
        if not _rational_isotropic(q):
            return IsotropyVerdict(ANISOTROPIC)
        return IsotropyVerdict(ISOTROPIC, find_isotropic_vector(q, seed))
    w = find_isotropic_vector(q, seed)
    if w is not None:
        return IsotropyVerdict(ISOTROPIC, w)
    return IsotropyVerdict(UNKNOWN)


def represents(q: DiagonalQuadraticForm, c, seed: int = 0) -> tuple[str, Optional[tuple]]:
    """Whether ``q`` takes the nonzero value ``c``; returns (yes/no/unknown, witness)."""
    field = q.field
    c = field(c)
    if c.is_zero():
        raise FormError("represents() needs a nonzero value")
    if field.characteristic == 2:
        sol = _char2_represent(q, c)
        return (NO, None) if sol is None else (YES, sol)
    nz = [i for i, a in enumerate(q.coefficients) if not a.is_zero()]
    if not nz:
        return NO, None
    core = DiagonalQuadraticForm(tuple(q.coefficients[i] for i in nz), field)
    # an isotropic core represents every value, and its zero gives a witness directly
    inner = isotropy(core, seed) if core.dim >= 2 else None
    if inner is not None and inner.status == ISOTROPIC and inner.witness is not None:
        verdict = IsotropyVerdict(ISOTROPIC, inner.witness + (field.zero,))
    else:
        verdict = isotropy(core + DiagonalQuadraticForm((-c,), field), seed)
    if verdict.status != ISOTROPIC:
        return (NO if verdict.status == ANISOTROPIC else UNKNOWN), None
    w = verdict.witness
    if w is not None:
        w = _value_from_isotropic(core, c, w)
    if w is not None:
        full = [field.zero] * q.dim
        for i, x in zip(nz, w):
            full[i] = x
        w = tuple(full)
    return YES, w


def _value_from_isotropic(q, c, w) -> Optional[tuple]:
    """Turn a zero ``(x, z)`` of ``q + <-c>`` into ``y`` with ``q(y) = c``."""
    field = q.field
    x, z = w[:-1], w[-1]
    if not z.is_zero():
        inv = z.inverse()
        return tuple(xi * inv for xi in x)
    # x is isotropic for q: move along x from a vector w0 with b(x, w0) != 0.
    for i in range(q.dim):
        e = [field.zero] * q.dim
        e[i] = field.one
        b = polar(q, x, e)
        if not b.is_zero():
            t = (c - evaluate(q, e)) / b
            return tuple(t * xi + ei for xi, ei in zip(x, e))
    return None


# ---------------------------------------------------------------------------
# Isometry


def _nondegenerate_part(q):
    nz = tuple(a for a in q.coefficients if not a.is_zero())
    return DiagonalQuadraticForm(nz, q.field), q.dim - len(nz)


def isometric(q1: DiagonalQuadraticForm, q2: DiagonalQuadraticForm) -> str:
    _same_field(q1, q2)
    if q1.dim != q2.dim:
        return NO
    field = q1.field
    if field.characteristic == 2:
        return YES if same_f2_span(q1.coefficients, q2.coefficients) else NO
    n1, r1 = _nondegenerate_part(q1)
    n2, r2 = _nondegenerate_part(q2)
    if r1 != r2:
        return NO
    if n1.dim == 0 or sorted(map(str, n1.coefficients)) == sorted(map(str, n2.coefficients)):
        return YES
    if not same_square_class(n1.determinant(), n2.determinant()):
        return NO
    if field.is_finite:
        return YES
    if field.kind == "rationals":
        neg1 = sum(1 for a in n1.coefficients if a.value < 0)
        neg2 = sum(1 for a in n2.coefficients if a.value < 0)
        if neg1 != neg2:
            return NO
        places = relevant_places(n1.coefficients + n2.coefficients)
        same = all(hasse_invariant(n1.coefficients, v) == hasse_invariant(n2.coefficients, v) for v in places)
        return YES if same else NO
    if n1.dim == 1:
        return YES  # same determinant class
    return UNKNOWN


# ---------------------------------------------------------------------------
# Bilinear Pfister forms in characteristic 2


def _check_pfister(b: BilinearPfisterForm):
    if b.field.characteristic != 2:
        raise FormError("bilinear Pfister comparison is implemented in characteristic 2")
    if len(b.slots) != 2:
        raise FormError("only 2-fold Pfister forms are supported")
    if any(s.is_zero() for s in b.slots):
        raise FormError("Pfister slots must be nonzero")


def pfister_isotropy(b: BilinearPfisterForm) -> IsotropyVerdict:
    """A bilinear form is isotropic iff ``b(x, x) = 0`` for some ``x != 0``."""
    _check_pfister(b)
    return _char2_isotropy(DiagonalQuadraticForm(b.diagonal(), b.field))


def pfister_isometric(b1: BilinearPfisterForm, b2: BilinearPfisterForm) -> str:
    """Isometry of 2-fold bilinear Pfister forms in characteristic 2.

    Isometric Pfister forms have isometric pure subforms ``<a, b, ab>``, and a
    diagonal bilinear form in characteristic 2 has value set equal to the
    F^2-span of its entries.  For 2-fold forms the converse holds as well
    (common-slot argument), so equality of the spans of ``{a, b, ab}``
    decides isometry.  For isotropic forms this span contains 1 and coincides
    with the value space of the whole form.
    """
    _check_pfister(b1)
    _check_pfister(b2)
    if b1.field != b2.field:
        raise FormError("Pfister forms over different fields")
    return YES if same_f2_span(b1.diagonal()[1:], b2.diagonal()[1:]) else NO


def pfister_replace(b: BilinearPfisterForm, lam) -> BilinearPfisterForm:
    """``<<a, b>> -> <<a, b + a^-1 lam^2>>`` (valid for isotropic forms)."""
    _check_pfister(b)
    lam = b.field(lam)
    alpha, beta = b.slots
    if pfister_isotropy(b).status != ISOTROPIC:
        raise FormError(f"{b} is anisotropic; the slot replacement needs an isotropic form")
    new_beta = beta + alpha.inverse() * lam * lam
    if new_beta.is_zero():
        raise FormError("replacement produces a zero slot")
    return BilinearPfisterForm((alpha, new_beta))
