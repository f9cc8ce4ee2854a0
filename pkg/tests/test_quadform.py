import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from biquat.exactfield import field_from_name, prime_field
from biquat.quadform import (
    ANISOTROPIC,
    ISOTROPIC,
    NO,
    YES,
    BilinearPfisterForm,
    DiagonalQuadraticForm,
    FormError,
    hilbert_symbol,
    isometric,
    isotropy,
    pfister_isometric,
    pfister_isotropy,
    pfister_replace,
    represents,
)

from strategies import FIELDS, elements

Q = field_from_name("Q")
F2t = field_from_name("F2t")
F2st = field_from_name("F2st")
s, t = F2st.gens()
(x_t,) = F2t.gens()


def form(field, coeffs):
    return DiagonalQuadraticForm.of(field, coeffs)


# -- brute-force oracles over small prime fields -----------------------------


def brute_isotropic(p, coeffs):
    for v in itertools.product(range(p), repeat=len(coeffs)):
        if any(v) and sum(c * x * x for c, x in zip(coeffs, v)) % p == 0:
            return True
    return False


def brute_isometric(p, a, b):
    """Search for M with M^T diag(a) M = diag(b)."""
    n = len(a)
    for entries in itertools.product(range(p), repeat=n * n):
        m = [entries[i * n:(i + 1) * n] for i in range(n)]
        ok = True
        for i in range(n):
            for j in range(i, n):
                val = sum(a[k] * m[k][i] * m[k][j] for k in range(n)) % p
                if val != (b[i] if i == j else 0) % p:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return True
    return False


@pytest.mark.parametrize("p", [3, 5, 7])
def test_isotropy_matches_enumeration(p):
    field = prime_field(p)
    for n in (1, 2, 3):
        for coeffs in itertools.product(range(1, p), repeat=n):
            got = isotropy(form(field, coeffs)).status
            assert got == (ISOTROPIC if brute_isotropic(p, coeffs) else ANISOTROPIC), coeffs


@pytest.mark.parametrize("p, n", [(3, 2), (5, 2), (7, 2), (3, 3)])
def test_isometry_matches_enumeration(p, n):
    field = prime_field(p)
    pool = list(itertools.product(range(1, p), repeat=n))
    for a, b in itertools.combinations(pool, 2):
        expected = YES if brute_isometric(p, a, b) else NO
        assert isometric(form(field, a), form(field, b)) == expected, (a, b)


# -- the rationals ------------------------------------------------------------


def _local_solvable(a, b, p):
    """Primitive solution of z^2 = a x^2 + b y^2 modulo a high power of p."""
    k = 5 if p == 2 else 3
    m = p ** k
    squares = {}
    for x in range(m):
        squares.setdefault(x * x % m, []).append(x)
    for x in range(m):
        for y in range(m):
            rhs = (a * x * x + b * y * y) % m
            for z in squares.get(rhs, ()):
                if x % p or y % p or z % p:
                    return True
    return False


SMALL = [-10, -7, -6, -5, -3, -2, -1, 1, 2, 3, 5, 6, 7, 10]


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_hilbert_symbol_matches_local_solvability(p):
    for a, b in itertools.combinations_with_replacement(SMALL, 2):
        expected = 1 if _local_solvable(a, b, p) else -1
        assert hilbert_symbol(Q(a), Q(b), p) == expected, (a, b, p)


@given(st.integers(-300, 300).filter(bool), st.integers(-300, 300).filter(bool))
def test_hilbert_product_formula(a, b):
    places = ["infinity", 2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97]
    primes = [p for p in places[2:] if a % p == 0 or b % p == 0]
    # prime factors above 97 are left over as single primes (|a|, |b| <= 300)
    rest_a, rest_b = abs(a), abs(b)
    for p in places[1:]:
        while rest_a % p == 0:
            rest_a //= p
        while rest_b % p == 0:
            rest_b //= p
    big = sorted({n for n in (rest_a, rest_b) if n > 1})
    prod = 1
    for v in ["infinity", 2] + primes + big:
        prod *= hilbert_symbol(Q(a), Q(b), v)
    assert prod == 1


def test_rational_examples():
    assert isotropy(form(Q, [1, 1, 1])).status == ANISOTROPIC
    assert isotropy(form(Q, [1, 1, -2])).status == ISOTROPIC
    assert isotropy(form(Q, [1, 1, 1, 1])).status == ANISOTROPIC
    assert isotropy(form(Q, [1, 1, 1, -7])).status == ANISOTROPIC
    assert isotropy(form(Q, [1, 1, 1, -3])).status == ISOTROPIC
    assert isometric(form(Q, [1, 1]), form(Q, [2, 2])) == YES
    assert isometric(form(Q, [1, 1]), form(Q, [3, 3])) == NO
    assert isometric(form(Q, [-1, -1, -1]), form(Q, [-1, -2, -2])) == YES
    assert hilbert_symbol(Q(-1), Q(-1), "infinity") == -1
    assert hilbert_symbol(Q(-1), Q(-1), 2) == -1


@given(st.lists(st.sampled_from(SMALL), min_size=2, max_size=4), st.integers(0, 1000))
def test_isotropy_witnesses_are_zeros(coeffs, seed):
    q = form(Q, coeffs)
    v = isotropy(q, seed)
    if v.status == ISOTROPIC and v.witness is not None:
        assert q(v.witness) == Q(0)


@given(st.lists(st.sampled_from(SMALL), min_size=1, max_size=3), st.sampled_from(SMALL))
def test_represents_witness(coeffs, c):
    q = form(Q, coeffs)
    status, w = represents(q, c)
    if status == YES and w is not None:
        assert q(w) == Q(c)


# -- isometry as an equivalence relation --------------------------------------


@pytest.mark.parametrize("name", ["F3", "F5", "Q", "F2t", "F2st", "F4"])
def test_isometry_is_an_equivalence(name):
    field = FIELDS[name]
    nz = elements(field, nonzero=True)

    @given(st.lists(nz, min_size=3, max_size=3), st.lists(nz, min_size=3, max_size=3), st.lists(nz, min_size=3, max_size=3), nz)
    def check(a, b, c, lam):
        qa, qb, qc = (DiagonalQuadraticForm(tuple(x), field) for x in (a, b, c))
        assert isometric(qa, qa) == YES
        assert isometric(qa, qb) == isometric(qb, qa)
        if isometric(qa, qb) == YES and isometric(qb, qc) == YES:
            assert isometric(qa, qc) == YES
        # rescaling a coordinate by a nonzero square changes nothing
        scaled = DiagonalQuadraticForm((a[0] * lam * lam,) + tuple(a[1:]), field)
        assert isometric(qa, scaled) == YES
        # and permuting coordinates changes nothing
        assert isometric(qa, DiagonalQuadraticForm(tuple(reversed(a)), field)) == YES

    check()


# -- characteristic 2 ---------------------------------------------------------


def test_char2_examples():
    assert isotropy(form(F2st, [s, t, s * t])).status == ANISOTROPIC
    assert isotropy(form(F2t, [1, x_t])).status == ANISOTROPIC
    v = isotropy(form(F2t, [1, x_t, x_t + 1]))
    assert v.status == ISOTROPIC and form(F2t, [1, x_t, x_t + 1])(v.witness) == F2t.zero
    assert isometric(form(F2t, [1, x_t]), form(F2t, [1, x_t + 1])) == YES
    assert isometric(form(F2st, [s, t]), form(F2st, [s + 1, t])) == NO


def test_pfister_examples():
    one = F2st.one
    assert pfister_isometric(BilinearPfisterForm((s, t)), BilinearPfisterForm((s + one, t))) == NO
    assert pfister_isometric(BilinearPfisterForm((s, t)), BilinearPfisterForm((t, s))) == YES
    assert pfister_isometric(BilinearPfisterForm((s, t)), BilinearPfisterForm((s * t, t))) == YES
    b1, b2 = BilinearPfisterForm.of(F2t, [1, x_t]), BilinearPfisterForm.of(F2t, [1, x_t + 1])
    assert pfister_isometric(b1, b2) == YES
    assert pfister_isotropy(BilinearPfisterForm((s, t))).status == ANISOTROPIC
    assert pfister_isotropy(b1).status == ISOTROPIC
    assert str(BilinearPfisterForm((s, t))) == "<<s,t>>"
    with pytest.raises(FormError):
        pfister_replace(BilinearPfisterForm((s, t)), one)
    with pytest.raises(FormError):
        BilinearPfisterForm.of(Q, [1, 2]) and pfister_isotropy(BilinearPfisterForm.of(Q, [1, 2]))


@given(elements(F2st, nonzero=True), elements(F2st, nonzero=True), elements(F2st, nonzero=True))
def test_pfister_slot_moves(a, b, c):
    base = BilinearPfisterForm((a, b))
    assert pfister_isometric(base, BilinearPfisterForm((b, a))) == YES
    assert pfister_isometric(base, BilinearPfisterForm((a * c * c, b))) == YES
    # <<a, b>> = <<a, ab>> holds for bilinear Pfister forms in characteristic 2
    assert pfister_isometric(base, BilinearPfisterForm((a, a * b))) == YES


@given(elements(F2st, nonzero=True), elements(F2st), elements(F2st))
def test_slot_replacement_on_isotropic_forms(a, lam, mu):
    # b = a + mu^2 makes 1 + a + b a square, hence <<a, b>> isotropic unless mu = 0
    b = a + mu * mu
    if b.is_zero():
        return
    form_ = BilinearPfisterForm((a, b))
    if pfister_isotropy(form_).status != ISOTROPIC:
        return
    new_b = b + a.inverse() * lam * lam
    if new_b.is_zero():
        return
    assert pfister_isometric(form_, pfister_replace(form_, lam)) == YES
