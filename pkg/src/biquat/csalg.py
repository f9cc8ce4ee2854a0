"""Central simple algebras of degree 2 and 4 given by structure constants.

An algebra stores, for every pair of basis vectors, the product as a sparse
coordinate list.  Basis vector 0 is always the unit.  Algebras built from
matrices (``M_2``, ``M_4`` and tensor products of those) additionally keep the
basis matrices so elements convert to and from explicit matrices.

Involutions are linear maps stored by the images of the basis vectors.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Callable, Optional, Sequence

from . import linalg as la
from .exactfield import FieldDescriptor, FieldElement, sqrt_if_square, square_class_rep

ORTHOGONAL = "orthogonal"
SYMPLECTIC = "symplectic"

ALT_UNIT_BUDGET = 200


class AlgebraError(ValueError):
    """Invalid construction data (non-associative table, bad involution, ...)."""


class AlgebraElement:
    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: "StructureAlgebra", coords: Sequence[FieldElement]):
        self.algebra = algebra
        self.coords = tuple(coords)

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            other = self.algebra.scalar(other)
        return AlgebraElement(self.algebra, [a + b for a, b in zip(self.coords, other.coords)])

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            other = self.algebra.scalar(other)
        return AlgebraElement(self.algebra, [a - b for a, b in zip(self.coords, other.coords)])

    def __rsub__(self, other):
        return self.algebra.scalar(other) - self

    def __neg__(self):
        return AlgebraElement(self.algebra, [-a for a in self.coords])

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return self.algebra.mul(self, other)
        c = self.algebra.field(other)
        return AlgebraElement(self.algebra, [a * c for a in self.coords])

    def __rmul__(self, other):
        c = self.algebra.field(other)
        return AlgebraElement(self.algebra, [c * a for a in self.coords])

    def __eq__(self, other):
        if isinstance(other, AlgebraElement):
            return self.coords == other.coords
        return self == self.algebra.scalar(other)

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return f"AlgebraElement({', '.join(map(str, self.coords))})"

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    def scalar_part(self) -> Optional[FieldElement]:
        """The scalar ``c`` if this element equals ``c * 1``, else None."""
        if all(c.is_zero() for c in self.coords[1:]):
            return self.coords[0]
        return None

    def is_scalar(self) -> bool:
        return self.scalar_part() is not None


class StructureAlgebra:
    """Associative unital algebra of dimension 4 or 16 over an exact field."""

    def __init__(
        self,
        field: FieldDescriptor,
        table,
        label: str,
        matrix_basis: Optional[list[la.Matrix]] = None,
        split: Optional[bool] = None,
        factors: tuple = (),
        check: bool = True,
    ):
        self.field = field
        self.dim = len(table)
        self.degree = {4: 2, 16: 4}.get(self.dim)
        if self.degree is None:
            raise AlgebraError(f"dimension must be 4 or 16, got {self.dim}")
        self.label = label
        self.matrix_basis = matrix_basis
        # True when known to be a full matrix algebra; None when undecided.
        self.split = True if matrix_basis is not None else split
        self.factors = factors
        one, mone = field.one, -field.one
        self._table = [
            [[(k, c, 1 if c == one else -1 if c == mone else 0) for k, c in entry] for entry in row]
            for row in table
        ]
        self.table = table
        if check:
            self.check_associative()
            if any(self.basis(0) * self.basis(i) != self.basis(i) for i in range(self.dim)):
                raise AlgebraError("basis vector 0 is not a left unit")
            if any(self.basis(i) * self.basis(0) != self.basis(i) for i in range(self.dim)):
                raise AlgebraError("basis vector 0 is not a right unit")

    def __repr__(self):
        return f"StructureAlgebra({self.label} over {self.field})"

    # -- elements ----------------------------------------------------------

    def element(self, coords: Sequence) -> AlgebraElement:
        if len(coords) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates")
        return AlgebraElement(self, [self.field(c) for c in coords])

    def basis(self, i: int) -> AlgebraElement:
        coords = [self.field.zero] * self.dim
        coords[i] = self.field.one
        return AlgebraElement(self, coords)

    def basis_elements(self) -> list[AlgebraElement]:
        return [self.basis(i) for i in range(self.dim)]

    @cached_property
    def one(self) -> AlgebraElement:
        return self.basis(0)

    @cached_property
    def zero(self) -> AlgebraElement:
        return AlgebraElement(self, [self.field.zero] * self.dim)

    def scalar(self, c) -> AlgebraElement:
        c = self.field(c)
        return AlgebraElement(self, [c] + [self.field.zero] * (self.dim - 1))

    def random_element(self, rng: random.Random, height: int = 2) -> AlgebraElement:
        return AlgebraElement(self, [self.field.random(rng, height) for _ in range(self.dim)])

    # -- multiplication ----------------------------------------------------

    def mul(self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        res = [None] * self.dim
        ynz = [(j, yj) for j, yj in enumerate(y.coords) if not yj.is_zero()]
        for i, xi in enumerate(x.coords):
            if xi.is_zero():
                continue
            row = self._table[i]
            for j, yj in ynz:
                xy = xi * yj
                for k, c, code in row[j]:
                    t = xy if code == 1 else -xy if code == -1 else xy * c
                    res[k] = t if res[k] is None else res[k] + t
        zero = self.field.zero
        return AlgebraElement(self, [zero if r is None else r for r in res])

    def left_matrix(self, x: AlgebraElement) -> la.Matrix:
        """Matrix of ``y -> x y`` in the basis (columns are images of basis vectors)."""
        cols = [self.mul(x, self.basis(j)).coords for j in range(self.dim)]
        return la.transpose(cols)

    def right_matrix(self, x: AlgebraElement) -> la.Matrix:
        cols = [self.mul(self.basis(j), x).coords for j in range(self.dim)]
        return la.transpose(cols)

    def check_associative(self):
        b = self.basis_elements()
        prods = [[self.mul(b[i], b[j]) for j in range(self.dim)] for i in range(self.dim)]
        for i, j, k in itertools.product(range(self.dim), repeat=3):
            if self.mul(prods[i][j], b[k]) != self.mul(b[i], prods[j][k]):
                raise AlgebraError(f"table is not associative on basis triple {(i, j, k)}")

    # -- matrix model ------------------------------------------------------

    @cached_property
    def _flat_inverse(self):
        if self.matrix_basis is None:
            raise AlgebraError(f"{self.label} has no matrix model")
        cols = [[e for row in m for e in row] for m in self.matrix_basis]
        inv = la.inverse(la.transpose(cols))
        if inv is None:
            raise AlgebraError("basis matrices are linearly dependent")
        return inv

    def from_matrix(self, m: Sequence[Sequence]) -> AlgebraElement:
        flat = [self.field(e) for row in m for e in row]
        return AlgebraElement(self, la.matvec(self._flat_inverse, flat))

    def to_matrix(self, x: AlgebraElement) -> la.Matrix:
        if self.matrix_basis is None:
            raise AlgebraError(f"{self.label} has no matrix model")
        n = self.degree
        out = la.zeros(self.field, n, n)
        for c, m in zip(x.coords, self.matrix_basis):
            if c.is_zero():
                continue
            for r in range(n):
                for s in range(n):
                    if not m[r][s].is_zero():
                        out[r][s] = out[r][s] + c * m[r][s]
        return out

    def matrix_unit(self, i: int, j: int) -> AlgebraElement:
        """The matrix unit with a 1 in row ``i``, column ``j`` (1-based)."""
        n = self.degree
        m = la.zeros(self.field, n, n)
        m[i - 1][j - 1] = self.field.one
        return self.from_matrix(m)


# ---------------------------------------------------------------------------
# Constructions


def algebra_from_matrices(field: FieldDescriptor, mats: list[la.Matrix], label: str) -> StructureAlgebra:
    """Structure constants of the algebra spanned by ``mats`` (``mats[0]`` the identity)."""
    len(mats[0])
    cols = [[e for row in m for e in row] for m in mats]
    inv = la.inverse(la.transpose(cols))
    if inv is None:
        raise AlgebraError("basis matrices are linearly dependent")
    table = []
    for a in mats:
        row = []
        for b in mats:
            flat = [e for r in la.matmul(a, b) for e in r]
            coords = la.matvec(inv, flat)
            row.append([(k, c) for k, c in enumerate(coords) if not c.is_zero()])
        table.append(row)
    return StructureAlgebra(field, table, label, matrix_basis=mats, check=False)


def matrix_algebra(field: FieldDescriptor, n: int) -> StructureAlgebra:
    """``M_n(F)`` in the basis ``I, E_ij ((i, j) != (1, 1))``."""
    mats = [la.identity(field, n)]
    for i in range(n):
        for j in range(n):
            if (i, j) != (0, 0):
                m = la.zeros(field, n, n)
                m[i][j] = field.one
                mats.append(m)
    return algebra_from_matrices(field, mats, f"M{n}")


def quaternion_algebra(field: FieldDescriptor, a, b) -> StructureAlgebra:
    """``(a, b)_F`` in characteristic != 2: ``i^2 = a, j^2 = b, ji = -ij``; basis 1, i, j, ij."""
    a, b = field(a), field(b)
    if field.characteristic == 2:
        raise AlgebraError("use quaternion_algebra_char2 in characteristic 2")
    if a.is_zero() or b.is_zero():
        raise AlgebraError("degenerate quaternion symbol")
    one = field.one
    # products e_r e_s for basis 1, i, j, k = ij
    t = {
        (1, 1): [(0, a)], (1, 2): [(3, one)], (1, 3): [(2, a)],
        (2, 1): [(3, -one)], (2, 2): [(0, b)], (2, 3): [(1, -b)],
        (3, 1): [(2, -a)], (3, 2): [(1, b)], (3, 3): [(0, -a * b)],
    }
    table = _quaternion_table(t, one)
    return StructureAlgebra(field, table, f"({a},{b})", factors=(("quaternion", a, b),))


def quaternion_algebra_char2(field: FieldDescriptor, a, b) -> StructureAlgebra:
    """``[a, b)_F`` in characteristic 2: ``u^2 + u = a, v^2 = b, vu = (u + 1) v``; basis 1, u, v, uv."""
    a, b = field(a), field(b)
    if field.characteristic != 2:
        raise AlgebraError("[a, b) symbols need characteristic 2")
    if b.is_zero():
        raise AlgebraError("degenerate quaternion symbol")
    one = field.one
    t = {
        (1, 1): [(0, a), (1, one)], (1, 2): [(3, one)], (1, 3): [(2, a), (3, one)],
        (2, 1): [(2, one), (3, one)], (2, 2): [(0, b)], (2, 3): [(0, b), (1, b)],
        (3, 1): [(2, a)], (3, 2): [(1, b)], (3, 3): [(0, a * b)],
    }
    table = _quaternion_table(t, one)
    return StructureAlgebra(field, table, f"[{a},{b})", factors=(("quaternion2", a, b),))


def _quaternion_table(t, one):
    table = []
    for r in range(4):
        row = []
        for s in range(4):
            if r == 0:
                row.append([(s, one)])
            elif s == 0:
                row.append([(r, one)])
            else:
                row.append([(k, c) for k, c in t[(r, s)] if not c.is_zero()])
        table.append(row)
    return table


def tensor_algebra(a1: StructureAlgebra, a2: StructureAlgebra) -> StructureAlgebra:
    """``A1 (x) A2`` with basis ``e_i (x) f_j`` at index ``i * dim(A2) + j``."""
    if a1.field != a2.field:
        raise AlgebraError("tensor factors over different fields")
    if a1.dim != 4 or a2.dim != 4:
        raise AlgebraError("tensor products are built from two degree-2 factors")
    n2 = a2.dim
    table = []
    for i1, i2 in itertools.product(range(a1.dim), range(n2)):
        row = []
        for j1, j2 in itertools.product(range(a1.dim), range(n2)):
            entry = {}
            for k1, c1 in a1.table[i1][j1]:
                for k2, c2 in a2.table[i2][j2]:
                    k = k1 * n2 + k2
                    entry[k] = entry.get(k, a1.field.zero) + c1 * c2
            row.append([(k, c) for k, c in sorted(entry.items()) if not c.is_zero()])
        table.append(row)
    mats = None
    if a1.matrix_basis is not None and a2.matrix_basis is not None:
        mats = [_kron(m1, m2) for m1 in a1.matrix_basis for m2 in a2.matrix_basis]
    split = True if mats is not None else None
    return StructureAlgebra(
        a1.field,
        table,
        f"{a1.label}(x){a2.label}",
        matrix_basis=mats,
        split=split,
        factors=(a1, a2),
        check=False,
    )


def _kron(m1, m2):
    n1, n2 = len(m1), len(m2)
    return [[m1[i // n2][j // n2] * m2[i % n2][j % n2] for j in range(n1 * n2)] for i in range(n1 * n2)]


# ---------------------------------------------------------------------------
# Reduced characteristic polynomial, norm and trace


def _poly_mul(p, q):
    zero = p[0].field.zero
    out = [zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a.is_zero():
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return out


def _poly_pow(p, r):
    out = p
    for _ in range(r - 1):
        out = _poly_mul(out, p)
    return out


def extract_reduced_poly(chi: list[FieldElement], degree: int) -> list[FieldElement]:
    """Monic ``P`` of ``degree`` with ``P^r = chi`` where ``r = len(chi) - 1 / degree``."""
    field = chi[0].field
    r = (len(chi) - 1) // degree
    if field.characteristic == 2:
        coeffs = []
        for i in range(degree + 1):
            if any(not chi[r * i + j].is_zero() for j in range(1, r) if r * i + j < len(chi)):
                raise AlgebraError("characteristic polynomial is not an r-th power")
            root = sqrt_if_square(chi[r * i], fourth=(r == 4)) if r in (2, 4) else None
            if root is None:
                raise AlgebraError("coefficient has no root of the required order")
            coeffs.append(root)
    else:
        inv_r = field(r).inverse()
        coeffs = [field.one]
        for k in range(1, degree + 1):
            trial = coeffs + [field.zero] * (degree + 1 - len(coeffs))
            t = _poly_pow(trial[: k + 1], r)[k]
            coeffs.append((chi[k] - t) * inv_r)
    if _poly_pow(coeffs, r) != list(chi):
        raise AlgebraError("characteristic polynomial is not an r-th power")
    return coeffs


def charpoly_left(x: AlgebraElement) -> list[FieldElement]:
    """Characteristic polynomial of left multiplication by ``x`` (Berkowitz)."""
    f = x.algebra.field
    return la.berkowitz(x.algebra.left_matrix(x), f.one, f.zero)


def reduced_charpoly(x: AlgebraElement) -> list[FieldElement]:
    """Reduced characteristic polynomial ``[1, c_1, ..., c_m]`` (highest degree first).

    Computed from the characteristic polynomial of the regular representation,
    which is its ``m``-th power.
    """
    return extract_reduced_poly(charpoly_left(x), x.algebra.degree)


def _minimal_poly_if_regular(x: AlgebraElement) -> Optional[list[FieldElement]]:
    """``[1, c_1, ..., c_m]`` if ``1, x, ..., x^{m-1}`` are independent, else None.

    For such ``x`` the minimal polynomial has degree ``m`` and therefore is the
    reduced characteristic polynomial.
    """
    alg = x.algebra
    m = alg.degree
    powers = [alg.one, x]
    while len(powers) <= m:
        powers.append(powers[-1] * x)
    rows = [[p.coords[i] for p in powers] for i in range(alg.dim)]
    r, pivots = la.rref(rows)
    if pivots != list(range(m)):
        return None
    sol = [row[m] for row in r]
    return [alg.field.one] + [-c for c in reversed(sol)]


def reduced_charpoly_fast(x: AlgebraElement) -> list[FieldElement]:
    """Same result as :func:`reduced_charpoly`, by the cheapest applicable route.

    Regular elements use the minimal polynomial, algebras with a matrix model
    use the characteristic polynomial of the matrix, and everything else
    reduces the regular representation to Hessenberg form.
    """
    poly = _minimal_poly_if_regular(x)
    if poly is not None:
        return poly
    alg = x.algebra
    if alg.matrix_basis is not None:
        f = alg.field
        return la.berkowitz(alg.to_matrix(x), f.one, f.zero)
    return extract_reduced_poly(la.charpoly_hessenberg(alg.left_matrix(x)), alg.degree)


def nrd(x: AlgebraElement) -> FieldElement:
    """Reduced norm."""
    poly = reduced_charpoly_fast(x)
    return poly[-1] if x.algebra.degree % 2 == 0 else -poly[-1]


def trd(x: AlgebraElement) -> FieldElement:
    """Reduced trace."""
    return -reduced_charpoly_fast(x)[1]


def invert(x: AlgebraElement) -> Optional[AlgebraElement]:
    """Two-sided inverse of ``x`` or None when ``x`` is a zero divisor."""
    alg = x.algebra
    sol = la.solve(alg.left_matrix(x), alg.one.coords)
    if sol is None:
        return None
    y = AlgebraElement(alg, sol)
    if alg.mul(y, x) != alg.one:
        raise AlgebraError("left inverse is not a right inverse")
    return y


# ---------------------------------------------------------------------------
# Involutions


@dataclass
class Involution:
    """An involution of the first kind, stored by the images of the basis."""

    algebra: StructureAlgebra
    images: tuple[AlgebraElement, ...]
    kind: tuple = ()
    type: str = dc_field(default="")

    def __call__(self, x: AlgebraElement) -> AlgebraElement:
        field = self.algebra.field
        acc = [field.zero] * self.algebra.dim
        for c, img in zip(x.coords, self.images):
            if c.is_zero():
                continue
            acc = [a + c * b for a, b in zip(acc, img.coords)]
        return AlgebraElement(self.algebra, acc)

    @property
    def matrix(self) -> la.Matrix:
        return la.transpose([img.coords for img in self.images])

    @property
    def label(self) -> str:
        return _kind_label(self.kind)


def _kind_label(kind) -> str:
    if not kind:
        return "?"
    head, *rest = kind
    if head == "tensor":
        return f"{_kind_label(rest[0])}(x){_kind_label(rest[1])}"
    if head == "conjugate":
        return f"Int(a)*{_kind_label(rest[0])}*Int(a)^-1"
    if rest:
        return f"{head}({', '.join(map(str, rest[0] if isinstance(rest[0], tuple) else rest))})"
    return head


def make_involution(algebra, images, kind, validate: str = "full") -> Involution:
    """Validate ``images`` as an involution and compute its type.

    ``validate`` is ``full`` (order 2, antiautomorphism, fixes the field),
    ``order`` (order 2 and unit only) or ``none``.
    """
    sigma = Involution(algebra, tuple(images), kind)
    if validate != "none":
        if sigma(algebra.one) != algebra.one:
            raise AlgebraError("involution does not fix 1")
        for b in algebra.basis_elements():
            if sigma(sigma(b)) != b:
                raise AlgebraError("sigma^2 is not the identity")
    if validate == "full":
        b = algebra.basis_elements()
        for i in range(algebra.dim):
            for j in range(algebra.dim):
                if sigma(b[i] * b[j]) != sigma.images[j] * sigma.images[i]:
                    raise AlgebraError("map is not an antiautomorphism")
    sigma.type = involution_type(sigma)
    return sigma


def involution_from_map(algebra, fn: Callable[[AlgebraElement], AlgebraElement], kind, validate="full"):
    return make_involution(algebra, [fn(b) for b in algebra.basis_elements()], kind, validate)


def canonical_involution(q: StructureAlgebra) -> Involution:
    """``gamma(x) = trd(x) - x`` on a quaternion algebra."""
    if q.degree != 2:
        raise AlgebraError("canonical involution needs a quaternion algebra")
    return involution_from_map(q, lambda x: q.scalar(trd(x)) - x, ("canonical",))


def t_alpha(m2: StructureAlgebra, alpha) -> Involution:
    """``T_alpha [[a, b], [c, d]] = [[a, c/alpha], [b alpha, d]]`` on ``M_2(F)``."""
    field = m2.field
    alpha = field(alpha)
    if alpha.is_zero():
        raise AlgebraError("T_alpha needs alpha != 0")
    if m2.degree != 2 or m2.matrix_basis is None:
        raise AlgebraError("T_alpha is defined on M_2(F)")
    inv = alpha.inverse()

    def fn(x):
        (a, b), (c, d) = m2.to_matrix(x)
        return m2.from_matrix([[a, c * inv], [b * alpha, d]])

    return involution_from_map(m2, fn, ("t_alpha", alpha))


def transpose_involution(alg: StructureAlgebra) -> Involution:
    if alg.matrix_basis is None:
        raise AlgebraError("transpose needs a matrix model")
    return involution_from_map(alg, lambda x: alg.from_matrix(la.transpose(alg.to_matrix(x))), ("transpose",))


def adjoint_diag(alg: StructureAlgebra, coefficients: Sequence) -> Involution:
    """Adjoint involution ``X -> D^-1 X^T D`` of the diagonal form ``<a_1, ..., a_n>``."""
    if alg.matrix_basis is None:
        raise AlgebraError("adjoint involutions need a matrix model")
    coeffs = [alg.field(c) for c in coefficients]
    if len(coeffs) != alg.degree or any(c.is_zero() for c in coeffs):
        raise AlgebraError(f"need {alg.degree} nonzero coefficients")

    def fn(x):
        m = la.transpose(alg.to_matrix(x))
        n = alg.degree
        return alg.from_matrix([[m[i][j] * coeffs[j] / coeffs[i] for j in range(n)] for i in range(n)])

    return involution_from_map(alg, fn, ("adjoint_diag", tuple(coeffs)))


def int_gamma(q: StructureAlgebra, s: AlgebraElement) -> Involution:
    """``Int(s) o gamma`` on a quaternion algebra; needs ``gamma(s) = +-s`` and ``s`` invertible."""
    gamma = canonical_involution(q)
    s_inv = invert(s)
    if s_inv is None:
        raise AlgebraError("int_gamma needs an invertible s")
    gs = gamma(s)
    if gs != s and gs != -s:
        raise AlgebraError("gamma(s) != +-s, so Int(s) o gamma has order > 2")
    return involution_from_map(q, lambda x: s * gamma(x) * s_inv, ("int_gamma", s.coords))


def tensor_involution(s1: Involution, s2: Involution, alg: StructureAlgebra) -> Involution:
    """``s1 (x) s2`` on ``alg = A1 (x) A2`` (built by :func:`tensor_algebra`)."""
    n2 = s2.algebra.dim
    images = []
    for i1 in range(s1.algebra.dim):
        for i2 in range(n2):
            c1, c2 = s1.images[i1].coords, s2.images[i2].coords
            images.append(AlgebraElement(alg, [c1[k // n2] * c2[k % n2] for k in range(alg.dim)]))
    return make_involution(alg, images, ("tensor", s1.kind, s2.kind), validate="order")


def symmetric_space(sigma: Involution) -> list[AlgebraElement]:
    alg = sigma.algebra
    rows = [[a - b for a, b in zip(sigma(e).coords, e.coords)] for e in alg.basis_elements()]
    kernel = la.nullspace(la.transpose(rows))
    return [AlgebraElement(alg, v) for v in kernel]


def alt_space(sigma: Involution) -> list[AlgebraElement]:
    """Canonical basis of ``alt(A, sigma) = {a - sigma(a)}``."""
    alg = sigma.algebra
    vecs = [(e - sigma(e)).coords for e in alg.basis_elements()]
    return [AlgebraElement(alg, v) for v in la.row_space(vecs)]


def in_span(vectors: Sequence[AlgebraElement], x: AlgebraElement) -> bool:
    rows = [v.coords for v in vectors]
    return la.rank(rows + [x.coords]) == la.rank(rows) if rows else x.is_zero()


def involution_type(sigma: Involution) -> str:
    """Orthogonal or symplectic.

    Characteristic != 2: orthogonal iff the symmetric elements have dimension
    ``n(n+1)/2``.  Characteristic 2: symplectic iff ``1`` is alternating.
    """
    alg = sigma.algebra
    n = alg.degree
    if alg.field.characteristic == 2:
        return SYMPLECTIC if in_span(alt_space(sigma), alg.one) else ORTHOGONAL
    dim_sym = len(symmetric_space(sigma))
    if dim_sym == n * (n + 1) // 2:
        return ORTHOGONAL
    if dim_sym == n * (n - 1) // 2:
        return SYMPLECTIC
    raise AlgebraError(f"symmetric space of dimension {dim_sym} fits no involution type")


def candidate_combinations(basis: Sequence[AlgebraElement], rng: random.Random, budget: int = ALT_UNIT_BUDGET):
    """Basis vectors, then pairwise sums, then seeded random combinations."""
    yield from basis
    for a, b in itertools.combinations(basis, 2):
        yield a + b
    field = basis[0].algebra.field
    for _ in range(budget):
        coeffs = [field.random(rng, 2) for _ in basis]
        x = basis[0].algebra.zero
        for c, b in zip(coeffs, basis):
            x = x + c * b
        if not x.is_zero():
            yield x


def find_alternating_unit(sigma: Involution, seed: int = 0) -> AlgebraElement:
    basis = alt_space(sigma)
    for x in candidate_combinations(basis, random.Random(seed)):
        if not nrd(x).is_zero():
            return x
    raise AlgebraError("no invertible alternating element found within the retry budget")


def discriminant(sigma: Involution, seed: int = 0) -> FieldElement:
    """Square-class representative of ``(-1)^m nrd(x)`` for an alternating unit ``x``."""
    if sigma.type != ORTHOGONAL:
        raise AlgebraError("discriminant needs an orthogonal involution")
    x = find_alternating_unit(sigma, seed)
    m = sigma.algebra.degree // 2
    value = nrd(x)
    return square_class_rep(-value if m % 2 else value)


def is_decomposable(sigma: Involution) -> bool:
    """A biquaternion orthogonal involution decomposes iff its discriminant is trivial."""
    if sigma.algebra.degree != 4:
        raise AlgebraError("decomposability is decided for biquaternion algebras")
    return discriminant(sigma).is_one()


def centralizer(alg: StructureAlgebra, elements: Sequence[AlgebraElement]) -> list[AlgebraElement]:
    """Basis of ``{x : x s = s x for all s}``."""
    if not elements:
        return alg.basis_elements()
    rows = []
    for s in elements:
        lm, rm = alg.left_matrix(s), alg.right_matrix(s)
        # x s - s x = (R_s - L_s) x
        rows.extend([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(rm, lm)])
    return [AlgebraElement(alg, v) for v in la.nullspace(rows)]


def conjugate_involution(sigma: Involution, a: AlgebraElement, validate: str = "order") -> Involution:
    """``Int(a) o sigma o Int(a)^-1``; ``x -> a x a^-1`` maps ``(A, sigma)`` onto the result."""
    a_inv = invert(a)
    if a_inv is None:
        raise AlgebraError("conjugating element is not invertible")
    alg = sigma.algebra
    # Int(a) sigma Int(a)^-1 (x) = (a sigma(a)) sigma(x) (a sigma(a))^-1
    g = a * sigma(a)
    g_inv = sigma(a_inv) * a_inv
    images = [g * img * g_inv for img in sigma.images]
    return make_involution(alg, images, ("conjugate", sigma.kind, a.coords), validate=validate)


# ---------------------------------------------------------------------------
# Construction descriptions


@dataclass(frozen=True)
class FactorSpec:
    """One degree-2 factor: ``matrix`` (M_2), ``quaternion`` (a, b) or ``quaternion2`` [a, b).

    ``involution`` is ``canonical``, ``int_gamma`` (``params`` = coordinates of
    ``s``) or ``t_alpha`` (``params`` = (alpha,)).
    """

    symbol: str
    a: Optional[FieldElement] = None
    b: Optional[FieldElement] = None
    involution: str = "canonical"
    params: tuple = ()


@dataclass(frozen=True)
class AlgebraSpec:
    """Either one or two factors with per-factor involutions, or ``M_n`` with a global involution."""

    field: FieldDescriptor
    factors: tuple[FactorSpec, ...] = ()
    matrix_degree: Optional[int] = None
    global_involution: Optional[str] = None
    coefficients: tuple = ()


def _build_factor(field, f: FactorSpec):
    if f.symbol == "matrix":
        q = matrix_algebra(field, 2)
    elif f.symbol == "quaternion":
        q = quaternion_algebra(field, f.a, f.b)
    elif f.symbol == "quaternion2":
        q = quaternion_algebra_char2(field, f.a, f.b)
    else:
        raise AlgebraError(f"unknown factor symbol {f.symbol!r}")
    if f.involution == "canonical":
        sigma = canonical_involution(q)
    elif f.involution == "t_alpha":
        if q.matrix_basis is None:
            raise AlgebraError("t_alpha needs a matrix factor")
        sigma = t_alpha(q, f.params[0])
    elif f.involution == "int_gamma":
        sigma = int_gamma(q, q.element(f.params))
    else:
        raise AlgebraError(f"unknown factor involution {f.involution!r}")
    return q, sigma


def build_algebra(spec: AlgebraSpec) -> tuple[StructureAlgebra, Involution]:
    """Build the algebra and involution described by ``spec`` (validated)."""
    field = spec.field
    if spec.matrix_degree is not None:
        alg = matrix_algebra(field, spec.matrix_degree)
        if spec.global_involution == "transpose":
            sigma = transpose_involution(alg)
        elif spec.global_involution == "adjoint_diag":
            sigma = adjoint_diag(alg, spec.coefficients)
        else:
            raise AlgebraError(f"unknown global involution {spec.global_involution!r}")
        return alg, sigma
    if len(spec.factors) == 1:
        return _build_factor(field, spec.factors[0])
    if len(spec.factors) != 2:
        raise AlgebraError("an algebra needs one or two factors")
    (q1, s1), (q2, s2) = (_build_factor(field, f) for f in spec.factors)
    alg = tensor_algebra(q1, q2)
    sigma = tensor_involution(s1, s2, alg)
    return alg, sigma
