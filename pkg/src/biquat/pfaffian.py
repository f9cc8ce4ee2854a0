"""Pfaffian, pfaffian adjoint and the invariants built on them.

For an orthogonal involution ``sigma`` on a biquaternion algebra ``A`` the
pfaffian is a quadratic form ``q`` on the 6-dimensional space of alternating
elements with ``q(x)^2 = d nrd(x)``; the adjoint ``p`` is the linear map with
``x p(x) = p(x) x = q(x)`` and ``p^2 = d``.  When ``sigma`` decomposes (``d = 1``)
the eigenspaces of ``p`` give two 3-dimensional pieces ``alt+`` and ``alt-``.
Everything downstream (Pfister invariant, metabolicity, classification) is
read off those pieces.
"""

from __future__ import annotations

import dataclasses
import itertools
import random
from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

import numpy as np

from . import linalg as la
from .csalg import (
    ORTHOGONAL,
    AlgebraElement,
    AlgebraError,
    Involution,
    alt_space,
    candidate_combinations,
    centralizer,
    discriminant,
    invert,
    nrd,
    reduced_charpoly_fast,
)
from .exactfield import FieldElement, sqrt_if_square
from .quadform import (
    ANISOTROPIC,
    ISOTROPIC,
    NO,
    UNKNOWN,
    YES,
    BilinearPfisterForm,
    DiagonalQuadraticForm,
    hilbert_symbol,
    isometric,
    isotropy,
    pfister_isometric,
    relevant_places,
    represents,
)

ENUMERATION_LIMIT = 10**6
UNIT_RETRIES = 20
BASIS_RETRIES = 40

ISOMORPHIC, NOT_ISOMORPHIC = "isomorphic", "not_isomorphic"


class PfaffianError(ValueError):
    """Input violates a precondition or an internal consistency check failed."""


class MetabolicDisagreement(AssertionError):
    pass


@dataclass(frozen=True)
class SignAnchor:
    """Records how the sign of the pfaffian was fixed."""

    index: int
    element: AlgebraElement
    value: FieldElement
    rule: str


@dataclass(frozen=True)
class PfaffianPackage:
    sigma: Involution
    alt_basis: tuple[AlgebraElement, ...]
    d: FieldElement
    q_values: tuple[FieldElement, ...]
    polar_matrix: tuple[tuple[FieldElement, ...], ...]
    p_matrix: tuple[tuple[FieldElement, ...], ...]
    anchor: SignAnchor
    alt_plus: tuple[AlgebraElement, ...] = ()
    alt_minus: tuple[AlgebraElement, ...] = ()
    q_plus: Optional[DiagonalQuadraticForm] = None
    q_minus: Optional[DiagonalQuadraticForm] = None
    coords: la.SpanCoordinates = dc_field(default=None, compare=False, repr=False)

    @property
    def algebra(self):
        return self.sigma.algebra

    @property
    def field(self):
        return self.sigma.algebra.field

    @property
    def is_split(self) -> bool:
        return bool(self.alt_plus)

    @property
    def Q_plus(self) -> tuple[AlgebraElement, ...]:
        return (self.algebra.one,) + self.alt_plus

    @property
    def Q_minus(self) -> tuple[AlgebraElement, ...]:
        return (self.algebra.one,) + self.alt_minus

    # -- coordinates on alt ------------------------------------------------

    def coordinates(self, x: AlgebraElement) -> list[FieldElement]:
        c = self.coords.coordinates(x.coords)
        if c is None:
            raise PfaffianError("element is not alternating")
        return c

    def element(self, coeffs: Sequence[FieldElement]) -> AlgebraElement:
        return AlgebraElement(self.algebra, self.coords.combine([self.field(c) for c in coeffs]))

    def random_alt(self, rng: random.Random, height: int = 2) -> AlgebraElement:
        return self.element([self.field.random(rng, height) for _ in range(6)])

    # -- the form and the adjoint -----------------------------------------

    def q_of_coords(self, c: Sequence[FieldElement]) -> FieldElement:
        acc = self.field.zero
        for i in range(6):
            if c[i].is_zero():
                continue
            acc = acc + c[i] * c[i] * self.q_values[i]
            for j in range(i + 1, 6):
                if not c[j].is_zero():
                    acc = acc + c[i] * c[j] * self.polar_matrix[i][j]
        return acc

    def q(self, x: AlgebraElement) -> FieldElement:
        return self.q_of_coords(self.coordinates(x))

    def polar(self, x: AlgebraElement, y: AlgebraElement) -> FieldElement:
        cx, cy = self.coordinates(x), self.coordinates(y)
        acc = self.field.zero
        for i in range(6):
            for j in range(6):
                acc = acc + cx[i] * cy[j] * self.polar_matrix[i][j]
        return acc

    def p(self, x: AlgebraElement) -> AlgebraElement:
        return self.element(la.matvec([list(r) for r in self.p_matrix], self.coordinates(x)))


def _scalar(x: AlgebraElement, what: str) -> FieldElement:
    s = x.scalar_part()
    if s is None:
        raise PfaffianError(f"{what} is not central")
    return s


def invertible_alt_basis(sigma: Involution, seed: int = 0) -> list[AlgebraElement]:
    """A basis of alt(A, sigma) made of units (deterministic for a given seed)."""
    alt = alt_space(sigma)
    chosen: list[AlgebraElement] = []
    for x in candidate_combinations(alt, random.Random(seed)):
        if nrd(x).is_zero():
            continue
        rows = [c.coords for c in chosen] + [x.coords]
        if la.rank(rows) == len(rows):
            chosen.append(x)
            if len(chosen) == len(alt):
                return chosen
    raise PfaffianError("no basis of alternating units found within the retry budget")


def compute_pfaffian(sigma: Involution, d: Optional[FieldElement] = None, seed: int = 0) -> PfaffianPackage:
    """Pfaffian ``q`` with ``q(x)^2 = d nrd(x)`` and its adjoint.

    ``d`` defaults to the canonical discriminant representative (1 when
    ``sigma`` decomposes).  The sign is fixed by giving the first basis
    element ``e1`` the canonical square root of ``d nrd(e1)``.
    """
    alg = sigma.algebra
    if alg.degree != 4:
        raise PfaffianError("the pfaffian is defined here for biquaternion algebras")
    if sigma.type != ORTHOGONAL:
        raise PfaffianError("orthogonal involution required")
    field = alg.field
    d = discriminant(sigma, seed) if d is None else field(d)
    if d.is_zero():
        raise PfaffianError("d must be nonzero")
    basis = invertible_alt_basis(sigma, seed)
    e1 = basis[0]
    n1 = nrd(e1)
    s0 = sqrt_if_square(d * n1)
    if s0 is None:
        raise PfaffianError("d nrd(e1) is not a square, so d does not represent the discriminant")
    anchor = SignAnchor(0, e1, s0, "canonical square root of d*nrd(e1)")

    if field.characteristic == 2:

        def qval(x):
            r = sqrt_if_square(d * nrd(x))
            if r is None:
                raise PfaffianError("d nrd restricted to alt is not a square")
            return r

    else:
        e1_inv = invert(e1)
        two_s0 = s0 + s0
        scale = d * n1

        def qval(x):
            # d nrd(e1 + t x) = (s0 + s1 t + s2 t^2)^2 with s2 = q(x)
            c = reduced_charpoly_fast(e1_inv * x)
            big = [scale * (c[k] if k % 2 == 0 else -c[k]) for k in range(5)]
            s1 = big[1] / two_s0
            s2 = (big[2] - s1 * s1) / two_s0
            if s2 * s2 != big[4] or (s1 + s1) * s2 != big[3]:
                raise PfaffianError("d nrd restricted to alt is not the square of a quadratic form")
            return s2

    qv = [qval(e) for e in basis]
    if qv[0] != s0:
        raise PfaffianError("sign anchor is inconsistent")
    polar = [[field.zero] * 6 for _ in range(6)]
    for i in range(6):
        polar[i][i] = qv[i] + qv[i]
        for j in range(i + 1, 6):
            b = qval(basis[i] + basis[j]) - qv[i] - qv[j]
            polar[i][j] = polar[j][i] = b
    coords = la.SpanCoordinates([e.coords for e in basis])
    cols = []
    for e, v in zip(basis, qv):
        img = invert(e) * v
        c = coords.coordinates(img.coords)
        if c is None:
            raise PfaffianError("pfaffian adjoint leaves alt(A, sigma)")
        cols.append(c)
    pmat = la.transpose(cols)
    sq = la.matmul(pmat, pmat)
    for i in range(6):
        for j in range(6):
            if sq[i][j] != (d if i == j else field.zero):
                raise PfaffianError("adjoint does not square to d")
    return PfaffianPackage(
        sigma=sigma,
        alt_basis=tuple(basis),
        d=d,
        q_values=tuple(qv),
        polar_matrix=tuple(tuple(r) for r in polar),
        p_matrix=tuple(tuple(r) for r in pmat),
        anchor=anchor,
        coords=coords,
    )


# ---------------------------------------------------------------------------
# alt+ / alt-


def _multiplicative_basis(pkg: PfaffianPackage, space: list[AlgebraElement], seed: int):
    """A basis ``(u, v, uv)`` of ``space`` (alt+ or alt-) with ``u`` a unit.

    Not every unit extends: a nilpotent ``v`` can give ``uv`` in ``F v`` when
    ``u^2`` is a square, and in characteristic 2 a unit ``u = 1 + n`` with
    ``n`` in the socle of ``F + alt+`` never extends.  Both ``u`` and the
    second vector are therefore searched.
    """
    alg = pkg.algebra
    span = la.SpanCoordinates([alg.one.coords] + [x.coords for x in space])
    units = 0
    for u in candidate_combinations(space, random.Random(seed)):
        alpha = _scalar(u * u, "square of an element of alt+-")
        if alpha.is_zero():
            continue
        units += 1
        if units > UNIT_RETRIES:
            break
        for u2 in candidate_combinations(space, random.Random(seed + 1), budget=BASIS_RETRIES):
            if la.rank([u.coords, u2.coords]) != 2:
                continue
            c = span.coordinates((u * u2).coords)
            if c is None:
                raise PfaffianError("u u' leaves F + alt+-")
            v = u2 - u * (c[0] / alpha)
            w = u * v
            if la.rank([u.coords, v.coords, w.coords]) != 3:
                continue
            cw = span.coordinates(w.coords)
            if cw is None or not cw[0].is_zero():
                raise PfaffianError("uv is not in alt+-")
            return u, v, w
    if units == 0:
        raise PfaffianError("no unit in alt+- within the retry budget")
    raise PfaffianError("no basis (u, v, uv) found within the retry budget")


def split_plus_minus(pkg: PfaffianPackage, seed: int = 0) -> PfaffianPackage:
    """Add alt+-, diagonal bases ``(u, v, uv)`` and ``q+-`` to the package."""
    if not pkg.d.is_one():
        raise PfaffianError("splitting needs a decomposable involution (d = 1)")
    alg = pkg.algebra
    field = pkg.field
    pm = [list(r) for r in pkg.p_matrix]
    eye = la.identity(field, 6)
    plus_c = la.nullspace([[a - b for a, b in zip(r, e)] for r, e in zip(pm, eye)])
    minus_c = la.nullspace([[a + b for a, b in zip(r, e)] for r, e in zip(pm, eye)])
    if len(plus_c) != 3 or len(minus_c) != 3:
        raise PfaffianError(f"eigenspaces of dimensions {len(plus_c)} and {len(minus_c)}, expected 3 and 3")
    plus = _multiplicative_basis(pkg, [pkg.element(c) for c in plus_c], seed)
    minus = _multiplicative_basis(pkg, [pkg.element(c) for c in minus_c], seed)
    qp = tuple(pkg.q(x) for x in plus)
    qm = tuple(pkg.q(x) for x in minus)
    for x, v in zip(plus, qp):
        if _scalar(x * x, "x^2") != v:
            raise PfaffianError("q+ (x) != x^2 on alt+")
    for x, v in zip(minus, qm):
        if _scalar(x * x, "x^2") != -v:
            raise PfaffianError("q- (x) != -x^2 on alt-")
    if field.characteristic == 2:
        if la.rank([x.coords for x in plus + minus]) != 3:
            raise PfaffianError("alt+ != alt- in characteristic 2")
        for x, y in itertools.combinations(plus, 2):
            if x * y != y * x:
                raise PfaffianError("Q+ is not commutative")
    else:
        qplus = (alg.one,) + plus
        cent = centralizer(alg, list(qplus))
        qminus = [alg.one.coords] + [x.coords for x in minus]
        if len(cent) != 4 or la.rank([c.coords for c in cent] + qminus) != 4:
            raise PfaffianError("the centralizer of Q+ is not Q-")
        prods = [(a * b).coords for a in qplus for b in (alg.one,) + minus]
        if la.rank(prods) != alg.dim:
            raise PfaffianError("Q+ Q- does not span A")
    return dataclasses.replace(
        pkg,
        alt_plus=plus,
        alt_minus=minus,
        q_plus=DiagonalQuadraticForm(qp, field),
        q_minus=DiagonalQuadraticForm(qm, field),
    )


def pfaffian_package(sigma: Involution, seed: int = 0) -> PfaffianPackage:
    """compute_pfaffian followed by split_plus_minus when ``sigma`` decomposes."""
    pkg = compute_pfaffian(sigma, seed=seed)
    return split_plus_minus(pkg, seed) if pkg.d.is_one() else pkg


def _require_split(pkg):
    if not pkg.d.is_one():
        raise PfaffianError("decomposable involution required")
    if not pkg.is_split:
        raise PfaffianError("call split_plus_minus first")


# ---------------------------------------------------------------------------
# Pfister invariant (characteristic 2)


def alternating_generators(pkg: PfaffianPackage, basis=None) -> tuple[AlgebraElement, AlgebraElement]:
    """Generators ``x, y`` of ``F + alt+`` with ``x``, ``y``, ``xy`` alternating.

    Starts from a basis ``(x, y, z)`` of alt+ with ``x^2 y^2 = z^2``.  Writing
    ``xy = a + bx + cy + dz``, a nonzero ``a`` is removed by replacing ``y``
    with ``y + x^-2 a x``.
    """
    if pkg.field.characteristic != 2:
        raise PfaffianError("the Pfister invariant is defined in characteristic 2")
    _require_split(pkg)
    x, y, z = basis if basis is not None else pkg.alt_plus
    alpha = _scalar(x * x, "x^2")
    span = la.SpanCoordinates([pkg.algebra.one.coords, x.coords, y.coords, z.coords])
    c = span.coordinates((x * y).coords)
    if c is None:
        raise PfaffianError("xy is not in F + alt+")
    a = c[0]
    if not a.is_zero():
        y = y + x * (a / alpha)
    if not span.coordinates((x * y).coords)[0].is_zero():
        raise PfaffianError("x y' is not alternating")
    return x, y


def pfister_invariant(pkg: PfaffianPackage, basis=None) -> BilinearPfisterForm:
    x, y = alternating_generators(pkg, basis)
    return BilinearPfisterForm((_scalar(x * x, "x^2"), _scalar(y * y, "y^2")))


# ---------------------------------------------------------------------------
# Exhaustive enumeration over finite fields


class _Encoded:
    """Finite-field elements as numpy integers."""

    def __init__(self, field):
        self.field = field
        if field.kind == "prime":
            self.p = field.p
            self.table = None
        elif field.kind == "binary":
            self.table = np.array(field._bin_tables[0], dtype=np.int64)
        else:
            raise PfaffianError("enumeration needs a finite field")

    def enc(self, x: FieldElement) -> int:
        return int(x.value)

    def dec(self, i) -> FieldElement:
        return self.field._cls(self.field, int(i))

    def mul(self, a, b):
        if self.table is None:
            return (a * b) % self.p
        return self.table[a, b]

    def add(self, a, b):
        if self.table is None:
            return (a + b) % self.p
        return a ^ b


def enumerate_alt_squares(pkg: PfaffianPackage):
    """All coordinate vectors ``c`` on alt and the squares of the corresponding elements.

    Returns ``(coeffs, squares)``: integer arrays of shapes ``(N, 6)`` and
    ``(N, dim A)`` in the field's integer encoding.
    """
    field = pkg.field
    if not field.is_finite or field.order ** 6 > ENUMERATION_LIMIT:
        raise PfaffianError("alt is too large to enumerate")
    enc = _Encoded(field)
    q = field.order
    coeffs = np.array(list(itertools.product(range(q), repeat=6)), dtype=np.int64)
    basis = pkg.alt_basis
    n = pkg.algebra.dim
    acc = np.zeros((len(coeffs), n), dtype=np.int64)
    for i in range(6):
        for j in range(i, 6):
            prod = basis[i] * basis[j]
            if i != j:
                prod = prod + basis[j] * basis[i]
            vec = np.array([enc.enc(c) for c in prod.coords], dtype=np.int64)
            if not vec.any():
                continue
            coef = enc.mul(coeffs[:, i], coeffs[:, j])
            acc = enc.add(acc, enc.mul(coef[:, None], vec[None, :]))
    return coeffs, acc


def find_unit_square_exhaustive(pkg: PfaffianPackage) -> tuple[bool, Optional[AlgebraElement]]:
    """Decide whether some ``u`` in alt has ``u^2 = 1`` by enumerating alt."""
    coeffs, squares = enumerate_alt_squares(pkg)
    target = np.zeros(squares.shape[1], dtype=np.int64)
    target[0] = 1
    hits = np.nonzero((squares == target).all(axis=1))[0]
    if len(hits) == 0:
        return False, None
    enc = _Encoded(pkg.field)
    return True, pkg.element([enc.dec(v) for v in coeffs[hits[0]]])


# ---------------------------------------------------------------------------
# Metabolicity


@dataclass(frozen=True)
class CriterionVerdict:
    verdict: Optional[bool]
    method: str


@dataclass(frozen=True)
class MetabolicCertificate:
    """Verdicts of the four equivalent metabolicity criteria, with witnesses.

    1. some ``u`` in alt has ``u^2 = 1`` (a metabolic idempotent exists);
    2. ``Q+`` or ``Q-`` splits;
    3. ``q+`` represents 1 or ``q-`` represents -1;
    4. ``q+`` or ``q-`` is isotropic.
    """

    verdict: Optional[bool]
    criteria: tuple[tuple[int, CriterionVerdict], ...]
    unit_square: Optional[AlgebraElement] = None
    isotropic_vector: Optional[AlgebraElement] = None
    split_witness: Optional[AlgebraElement] = None
    idempotent: Optional[AlgebraElement] = None

    def criterion(self, k: int) -> CriterionVerdict:
        return dict(self.criteria)[k]


def _status_bool(status: str) -> Optional[bool]:
    return {ISOTROPIC: True, ANISOTROPIC: False, YES: True, NO: False}.get(status)


def _either(a: Optional[bool], b: Optional[bool]) -> Optional[bool]:
    if a or b:
        return True
    if a is False and b is False:
        return False
    return None


def _combine(basis, coeffs):
    x = basis[0].algebra.zero
    for c, b in zip(coeffs, basis):
        x = x + c * b
    return x


def _norm_form(pkg, basis):
    """Diagonal norm form of ``F + span(basis)`` for a basis ``(u, v, uv)``."""
    field = pkg.field
    u, v, _ = basis
    a, b = _scalar(u * u, "u^2"), _scalar(v * v, "v^2")
    if field.characteristic == 2:
        # F + alt+ is commutative: (c0 + c1 u + c2 v + c3 uv)^2 = c0^2 + c1^2 a + c2^2 b + c3^2 ab
        return DiagonalQuadraticForm((field.one, a, b, a * b), field)
    return DiagonalQuadraticForm((field.one, -a, -b, a * b), field)


def is_metabolic(pkg: PfaffianPackage, seed: int = 0) -> MetabolicCertificate:
    alg = pkg.algebra
    field = pkg.field
    sigma = pkg.sigma
    if not pkg.d.is_one():
        no = CriterionVerdict(False, "discriminant is nontrivial, so sigma is not metabolic")
        return MetabolicCertificate(False, tuple((k, no) for k in (1, 2, 3, 4)))
    if not pkg.is_split:
        pkg = split_plus_minus(pkg, seed)
    plus, minus = pkg.alt_plus, pkg.alt_minus
    char2 = field.characteristic == 2

    # (4) isotropy of q+ / q-
    iso_p = isotropy(pkg.q_plus, seed)
    iso_m = iso_p if char2 else isotropy(pkg.q_minus, seed)
    c4 = CriterionVerdict(_either(_status_bool(iso_p.status), _status_bool(iso_m.status)), "isotropy of q+ and q-")
    iso_vec = None
    for verdict, basis in ((iso_p, plus), (iso_m, minus)):
        if verdict.status == ISOTROPIC and verdict.witness is not None:
            iso_vec = _combine(basis, verdict.witness)
            if iso_vec.is_zero() or not pkg.q(iso_vec).is_zero():
                raise PfaffianError("isotropy witness does not check")
            break

    # (3) 1 in D(q+) or -1 in D(q-)
    rep_p, wit_p = represents(pkg.q_plus, field.one, seed)
    rep_m, wit_m = (rep_p, wit_p) if char2 else represents(pkg.q_minus, -field.one, seed)
    c3 = CriterionVerdict(_either(_status_bool(rep_p), _status_bool(rep_m)), "q+ represents 1 or q- represents -1")
    unit = None
    if rep_p == YES and wit_p is not None:
        unit = _combine(plus, wit_p)
    elif rep_m == YES and wit_m is not None:
        unit = _combine(minus, wit_m)

    # (2) Q+ or Q- splits
    split_witness = None
    verdicts = []
    for basis in (plus,) if char2 else (plus, minus):
        nf = _norm_form(pkg, basis)
        iso = isotropy(nf, seed)
        verdicts.append(_status_bool(iso.status))
        if iso.status == ISOTROPIC and iso.witness is not None and split_witness is None:
            z = _combine((alg.one,) + tuple(basis), iso.witness)
            if char2:
                ok = not z.is_zero() and (z * z).is_zero()
            else:
                ok = not z.is_zero() and (z * sigma(z)).is_zero()
            if not ok:
                raise PfaffianError("split witness does not check")
            split_witness = z
    c2 = CriterionVerdict(
        _either(verdicts[0], verdicts[-1]) if len(verdicts) == 2 else verdicts[0],
        "nonzero nilpotent in Q+" if char2 else "isotropy of the norm forms of Q+ and Q-",
    )

    # (1) u in alt with u^2 = 1
    if field.is_finite and field.order ** 6 <= ENUMERATION_LIMIT:
        found, u = find_unit_square_exhaustive(pkg)
        c1 = CriterionVerdict(found, "exhaustive search of alt for u^2 = 1")
        if unit is None:
            unit = u
    elif unit is not None:
        c1 = CriterionVerdict(True, "u from a representation of +-1")
    else:
        # every u with u^2 = 1 lies in alt+ or alt-, where u^2 = q+(u) or -q-(u)
        c1 = CriterionVerdict(c3.verdict, "reduced to representations of +-1 on alt+ and alt-")

    table = ((1, c1), (2, c2), (3, c3), (4, c4))
    decided = {v.verdict for _, v in table if v.verdict is not None}
    if len(decided) > 1:
        detail = ", ".join(f"({k}) {v.verdict}" for k, v in table)
        raise MetabolicDisagreement(f"metabolicity criteria disagree: {detail}")
    verdict = decided.pop() if decided and all(v.verdict is not None for _, v in table) else None

    idem = None
    if unit is not None:
        if unit * unit != alg.one:
            raise PfaffianError("u^2 != 1 for the metabolic witness")
        pkg.coordinates(unit)
        if not char2:
            half = field(2).inverse()
            idem = (alg.one + unit) * half
            if idem * idem != idem or sigma(idem) != alg.one - idem:
                raise PfaffianError("(1 + u)/2 is not a hyperbolic idempotent")
    return MetabolicCertificate(verdict, table, unit, iso_vec, split_witness, idem)


# ---------------------------------------------------------------------------
# Classification


@dataclass(frozen=True)
class Comparison:
    verdict: str
    evidence: tuple[str, ...]


def _quaternion_invariants(pkg, place) -> int:
    """Local invariant of A = Q+ (x) Q- at ``place`` (product of Hilbert symbols)."""
    s = 1
    for basis in (pkg.alt_plus, pkg.alt_minus):
        u, v, _ = basis
        s *= hilbert_symbol(_scalar(u * u, "u^2"), _scalar(v * v, "v^2"), place)
    return s


def _norm_split(pkg) -> Optional[bool]:
    """Whether both Q+ and Q- split (so A is a matrix algebra)."""
    out = []
    for basis in (pkg.alt_plus, pkg.alt_minus):
        out.append(_status_bool(isotropy(_norm_form(pkg, basis)).status))
    if all(out):
        return True
    return None


def algebra_evidence(pkg1: PfaffianPackage, pkg2: PfaffianPackage) -> tuple[str, str]:
    """(yes/no/unknown, reason) for ``A1 = A2`` as F-algebras."""
    a1, a2 = pkg1.algebra, pkg2.algebra
    field = a1.field
    if a1 is a2 or a1.table == a2.table:
        return YES, "identical structure constants"
    if field.is_finite:
        return YES, "central simple algebras over a finite field are split"
    if a1.split and a2.split:
        return YES, "both algebras are matrix algebras"
    if field.kind == "rationals" and field.characteristic != 2:
        vals = []
        for pkg in (pkg1, pkg2):
            for basis in (pkg.alt_plus, pkg.alt_minus):
                u, v, _ = basis
                vals += [_scalar(u * u, "u^2"), _scalar(v * v, "v^2")]
        for place in relevant_places(vals):
            if _quaternion_invariants(pkg1, place) != _quaternion_invariants(pkg2, place):
                return NO, f"local invariants differ at {place}"
        return YES, "local invariants agree at every place"
    if field.characteristic != 2 and _norm_split(pkg1) and _norm_split(pkg2):
        return YES, "both algebras split (Q+ and Q- split)"
    return UNKNOWN, "no algebra identification available"


def compare_involutions(pkg1: PfaffianPackage, pkg2: PfaffianPackage) -> Comparison:
    if pkg1.field != pkg2.field:
        raise PfaffianError("involutions over different fields")
    for pkg in (pkg1, pkg2):
        _require_split(pkg)
    alg, reason = algebra_evidence(pkg1, pkg2)
    evidence = [f"A = A': {alg} ({reason})"]
    if pkg1.field.characteristic == 2:
        b1, b2 = pfister_invariant(pkg1), pfister_invariant(pkg2)
        forms = pfister_isometric(b1, b2)
        evidence.append(
            f"Pfister invariants {b1} and {b2} " + ("are isometric" if forms == YES else "differ")
        )
        evidence.append("criterion: A = A' and isometric Pfister invariants")
    else:
        # an isomorphism that flips the sign of the pfaffian sends alt+ onto alt'-
        # and q+ onto -q'-
        same = isometric(pkg1.q_plus, pkg2.q_plus)
        swapped = isometric(pkg1.q_plus, pkg2.q_minus.scaled(-1))
        evidence.append(f"q+ vs q'+: {same}; q+ vs -q'-: {swapped}")
        evidence.append("criterion: A = A' and q+ isometric to q'+ or -q'-")
        if YES in (same, swapped):
            forms = YES
        elif same == NO and swapped == NO:
            forms = NO
        else:
            forms = UNKNOWN
    if alg == NO or forms == NO:
        return Comparison(NOT_ISOMORPHIC, tuple(evidence))
    if alg == YES and forms == YES:
        return Comparison(ISOMORPHIC, tuple(evidence))
    return Comparison(UNKNOWN, tuple(evidence))


def transpose_type_test(pkg: PfaffianPackage) -> Optional[bool]:
    """Whether ``(A, sigma)`` is isomorphic to ``M_4(F)`` with the transpose (None if undecided)."""
    _require_split(pkg)
    field = pkg.field
    if field.characteristic == 2:
        target = DiagonalQuadraticForm.of(field, [1, 1, 1])
        return isometric(pkg.q_plus, target) == YES
    neg = DiagonalQuadraticForm.of(field, [-1, -1, -1])
    pos = DiagonalQuadraticForm.of(field, [1, 1, 1])
    a, b = isometric(pkg.q_plus, neg), isometric(pkg.q_minus, pos)
    if a == NO or b == NO:
        return False
    if a == YES and b == YES:
        return True
    return None


__all__ = [
    "AlgebraError",
    "Comparison",
    "CriterionVerdict",
    "MetabolicCertificate",
    "PfaffianError",
    "PfaffianPackage",
    "SignAnchor",
    "algebra_evidence",
    "alternating_generators",
    "compare_involutions",
    "compute_pfaffian",
    "is_metabolic",
    "pfaffian_package",
    "pfister_invariant",
    "split_plus_minus",
    "transpose_type_test",
]
