"""Dense exact linear algebra over a :class:`~biquat.exactfield.FieldDescriptor`.

Matrices are lists of rows of field elements.  Vectors are lists.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .exactfield import FieldDescriptor, FieldElement

Matrix = list[list[FieldElement]]


def zeros(field: FieldDescriptor, rows: int, cols: int) -> Matrix:
    return [[field.zero] * cols for _ in range(rows)]


def identity(field: FieldDescriptor, n: int) -> Matrix:
    m = zeros(field, n, n)
    for i in range(n):
        m[i][i] = field.one
    return m


def transpose(a: Sequence[Sequence[FieldElement]]) -> Matrix:
    return [list(col) for col in zip(*a)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return [[_dot(row, col) for col in bt] for row in a]


def matvec(a: Matrix, v: Sequence[FieldElement]) -> list[FieldElement]:
    return [_dot(row, v) for row in a]


def _dot(u, v):
    acc = None
    for x, y in zip(u, v):
        if x.is_zero() or y.is_zero():
            continue
        acc = x * y if acc is None else acc + x * y
    return acc if acc is not None else u[0].field.zero


def rref(a: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns (input is not modified)."""
    m = [list(row) for row in a]
    if not m:
        return m, []
    nrows, ncols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if not m[i][c].is_zero()), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(a: Matrix) -> int:
    return len(rref(a)[1]) if a else 0


def row_space(vectors: Sequence[Sequence[FieldElement]]) -> Matrix:
    """Canonical (RREF) basis of the span of ``vectors``."""
    if not vectors:
        return []
    return rref([list(v) for v in vectors])[0]


def nullspace(a: Matrix, ncols: Optional[int] = None, field: Optional[FieldDescriptor] = None) -> Matrix:
    """Basis of ``{x : a x = 0}``, one basis vector per free column."""
    if not a:
        if ncols is None or field is None:
            raise ValueError("empty matrix needs ncols and field")
        return identity(field, ncols)
    field = a[0][0].field
    ncols = len(a[0])
    r, pivots = rref(a)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [field.zero] * ncols
        v[fcol] = field.one
        for row, pc in zip(r, pivots):
            v[pc] = -row[fcol]
        basis.append(v)
    return basis


def solve(a: Matrix, b: Sequence[FieldElement]) -> Optional[list[FieldElement]]:
    """One solution of ``a x = b`` or None if inconsistent."""
    field = b[0].field
    ncols = len(a[0])
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    r, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [field.zero] * ncols
    for row, pc in zip(r, pivots):
        x[pc] = row[ncols]
    return x


def det(a: Matrix) -> FieldElement:
    """Determinant by Gaussian elimination."""
    m = [list(row) for row in a]
    n = len(m)
    field = m[0][0].field
    result = field.one
    for c in range(n):
        piv = next((i for i in range(c, n) if not m[i][c].is_zero()), None)
        if piv is None:
            return field.zero
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            result = -result
        result = result * m[c][c]
        inv = m[c][c].inverse()
        for i in range(c + 1, n):
            if not m[i][c].is_zero():
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return result


def inverse(a: Matrix) -> Optional[Matrix]:
    n = len(a)
    field = a[0][0].field
    aug = [list(row) + e for row, e in zip(a, identity(field, n))]
    r, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        return None
    return [row[n:] for row in r]


def berkowitz(a: Sequence[Sequence], one, zero) -> list:
    """Coefficients of ``det(X I - a)``, leading coefficient first.

    Division free, so entries may come from any commutative ring whose
    elements support ``+``, ``-`` and ``*`` (``one``/``zero`` are that ring's
    units).
    """
    n = len(a)
    if n == 0:
        return [one]
    # Build up from the trailing 1x1 block: vect holds the charpoly of the
    # trailing (k x k) principal submatrix.
    vect = [one, -a[n - 1][n - 1]]
    for k in range(n - 2, -1, -1):
        size = n - k  # size of the current principal block
        akk = a[k][k]
        row = [a[k][j] for j in range(k + 1, n)]
        col = [a[i][k] for i in range(k + 1, n)]
        sub = [[a[i][j] for j in range(k + 1, n)] for i in range(k + 1, n)]
        # Toeplitz column: 1, -a_kk, -R C, -R S C, -R S^2 C, ...
        diags = [one, -akk]
        v = col
        for _ in range(size - 1):
            s = zero
            for r_, c_ in zip(row, v):
                s = s + r_ * c_
            diags.append(-s)
            v = [_ring_dot(srow, v, zero) for srow in sub]
        # Multiply the (size+1) x size lower-triangular Toeplitz matrix by vect.
        new = []
        for i in range(size + 1):
            s = zero
            for j in range(min(i + 1, size)):
                s = s + diags[i - j] * vect[j]
            new.append(s)
        vect = new
    return vect


def _ring_dot(u, v, zero):
    s = zero
    for x, y in zip(u, v):
        s = s + x * y
    return s


class SpanCoordinates:
    """Coordinates with respect to a fixed linearly independent family."""

    def __init__(self, vectors: Sequence[Sequence[FieldElement]]):
        self.vectors = [list(v) for v in vectors]
        _, pivots = rref(self.vectors)
        if len(pivots) != len(self.vectors):
            raise ValueError("vectors are linearly dependent")
        self.pivots = pivots
        square = [[v[p] for v in self.vectors] for p in pivots]
        self._inv = inverse(square)

    def __len__(self):
        return len(self.vectors)

    def combine(self, coeffs: Sequence[FieldElement]) -> list[FieldElement]:
        zero = self.vectors[0][0].field.zero
        out = [zero] * len(self.vectors[0])
        for c, v in zip(coeffs, self.vectors):
            if not c.is_zero():
                out = [a + c * b for a, b in zip(out, v)]
        return out

    def coordinates(self, x: Sequence[FieldElement]) -> Optional[list[FieldElement]]:
        """Coefficients of ``x`` or None when ``x`` is outside the span."""
        coeffs = matvec(self._inv, [x[p] for p in self.pivots])
        if self.combine(coeffs) != list(x):
            return None
        return coeffs


def charpoly_hessenberg(a: Matrix) -> list[FieldElement]:
    """Coefficients of ``det(X I - a)`` (leading first) via reduction to Hessenberg form.

    Uses field divisions, O(n^3); a faster alternative to :func:`berkowitz`
    over fields.
    """
    n = len(a)
    field = a[0][0].field
    h = [list(row) for row in a]
    for m in range(1, n - 1):
        i = next((r for r in range(m, n) if not h[r][m - 1].is_zero()), None)
        if i is None:
            continue
        if i != m:
            h[i], h[m] = h[m], h[i]
            for row in h:
                row[i], row[m] = row[m], row[i]
        inv = h[m][m - 1].inverse()
        for r in range(m + 1, n):
            u = h[r][m - 1] * inv
            if u.is_zero():
                continue
            h[r] = [x - u * y for x, y in zip(h[r], h[m])]
            for row in h:
                row[m] = row[m] + u * row[r]
    # p_k = charpoly of the leading k x k block, coefficients lowest first
    polys = [[field.one]]
    for m in range(1, n + 1):
        prev = polys[m - 1]
        cur = [field.zero] + prev  # X * p_{m-1}
        hmm = h[m - 1][m - 1]
        for k, c in enumerate(prev):
            cur[k] = cur[k] - hmm * c
        prod = field.one
        for i in range(1, m):
            prod = prod * h[m - i][m - i - 1]
            coef = h[m - i - 1][m - 1] * prod
            if coef.is_zero():
                continue
            for k, c in enumerate(polys[m - i - 1]):
                cur[k] = cur[k] - coef * c
        polys.append(cur)
    return list(reversed(polys[n]))
