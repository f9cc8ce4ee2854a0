import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from biquat import linalg as la
from biquat.exactfield import field_from_name

from strategies import FIELDS


def random_matrix(field, n, rng):
    return [[field.random(rng, 2) for _ in range(n)] for _ in range(n)]


def det_by_permutations(a):
    import itertools

    n = len(a)
    field = a[0][0].field
    total = field.zero
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = field.one
        for i in range(n):
            term = term * a[i][perm[i]]
        total = total - term if inversions % 2 else total + term
    return total


@pytest.mark.parametrize("name", ["Q", "F5", "F2", "F4", "F2st", "F3t"])
@given(seed=st.integers(0, 10**6), n=st.integers(1, 5))
def test_charpolys_agree_and_match_det(name, seed, n):
    field = FIELDS[name]
    a = random_matrix(field, n, random.Random(seed))
    chi = la.berkowitz(a, field.one, field.zero)
    assert chi == la.charpoly_hessenberg(a)
    sign = field.one if n % 2 == 0 else -field.one
    assert chi[-1] == sign * la.det(a)
    assert la.det(a) == det_by_permutations(a)


@pytest.mark.parametrize("name", ["Q", "F3", "F2st"])
@given(seed=st.integers(0, 10**6))
def test_inverse_and_solve(name, seed):
    field = FIELDS[name]
    rng = random.Random(seed)
    a = random_matrix(field, 4, rng)
    inv = la.inverse(a)
    if la.det(a).is_zero():
        assert inv is None
        return
    assert la.matmul(a, inv) == la.identity(field, 4)
    b = [field.random(rng, 2) for _ in range(4)]
    x = la.solve(a, b)
    assert la.matvec(a, x) == b


def test_nullspace_and_span_coordinates():
    Q = field_from_name("Q")
    rows = [[Q(1), Q(2), Q(3)], [Q(2), Q(4), Q(6)]]
    ker = la.nullspace(rows)
    assert len(ker) == 2
    for v in ker:
        assert la.matvec(rows, v) == [Q(0), Q(0)]
    span = la.SpanCoordinates([[Q(1), Q(0), Q(1)], [Q(0), Q(1), Q(1)]])
    assert span.coordinates([Q(2), Q(3), Q(5)]) == [Q(2), Q(3)]
    assert span.coordinates([Q(1), Q(1), Q(1)]) is None
    with pytest.raises(ValueError):
        la.SpanCoordinates([[Q(1), Q(1)], [Q(2), Q(2)]])
