"""Ready-made algebras with involution used by tests, scripts and the CLI."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Optional

from .csalg import (
    ORTHOGONAL,
    AlgebraElement,
    AlgebraSpec,
    FactorSpec,
    Involution,
    StructureAlgebra,
    build_algebra,
    conjugate_involution,
    invert,
)
from .exactfield import FieldDescriptor, field_from_name, is_square
from .quadform import YES, DiagonalQuadraticForm, hilbert_symbol, isometric, relevant_places


def transpose_m4(field: FieldDescriptor) -> Involution:
    return build_algebra(AlgebraSpec(field, matrix_degree=4, global_involution="transpose"))[1]


def adjoint_m4(field: FieldDescriptor, coefficients) -> Involution:
    spec = AlgebraSpec(field, matrix_degree=4, global_involution="adjoint_diag", coefficients=tuple(coefficients))
    return build_algebra(spec)[1]


def t_alpha_tensor(field: FieldDescriptor, alpha, beta) -> Involution:
    """``T_alpha (x) T_beta`` on ``M_2 (x) M_2``."""
    spec = AlgebraSpec(
        field,
        (
            FactorSpec("matrix", involution="t_alpha", params=(field(alpha),)),
            FactorSpec("matrix", involution="t_alpha", params=(field(beta),)),
        ),
    )
    return build_algebra(spec)[1]


def gamma_tensor(field: FieldDescriptor, sym1, sym2) -> Involution:
    """``gamma (x) gamma`` on ``(a, b) (x) (c, d)`` (characteristic != 2)."""
    spec = AlgebraSpec(
        field,
        (
            FactorSpec("quaternion", field(sym1[0]), field(sym1[1])),
            FactorSpec("quaternion", field(sym2[0]), field(sym2[1])),
        ),
    )
    return build_algebra(spec)[1]


def random_conjugate(sigma: Involution, rng: random.Random, height: int = 2) -> Involution:
    alg = sigma.algebra
    while True:
        a = alg.random_element(rng, height)
        if invert(a) is not None:
            return conjugate_involution(sigma, a)


def mild_conjugator(alg: StructureAlgebra, rng: random.Random) -> AlgebraElement:
    """A unit with small entries: a product of two transvections on matrix models.

    Fully random conjugators blow up coefficient sizes over function fields.
    """
    if alg.matrix_basis is None:
        while True:
            a = alg.random_element(rng, 1)
            if invert(a) is not None:
                return a
    n = alg.degree
    field = alg.field
    a = alg.one
    for _ in range(2):
        i, j = rng.sample(range(1, n + 1), 2)
        if field.kind == "function_field":
            c = field(rng.randrange(1, field.p))
        else:
            c = field.random(rng, 1, nonzero=True)
        a = a * (alg.one + alg.matrix_unit(i, j) * c)
    return a


@dataclass(frozen=True)
class Instance:
    name: str
    build: Callable[[], Involution]
    transpose_class: Optional[bool] = None


def curated() -> list[Instance]:
    """The instances exercised by the acceptance suite."""
    Q = field_from_name("Q")
    F5 = field_from_name("F5")
    F2st = field_from_name("F2st")
    F4 = field_from_name("F4")
    s, t = F2st.gens()
    return [
        Instance("transpose-M4-Q", lambda: transpose_m4(Q), True),
        Instance("transpose-M4-F5", lambda: transpose_m4(F5), True),
        Instance("T2xT3-F5", lambda: t_alpha_tensor(F5, 2, 3), True),
        Instance("gamma-gamma-Q", lambda: gamma_tensor(Q, (-1, -1), (-1, -3)), False),
        Instance("TsxTt-F2st", lambda: t_alpha_tensor(F2st, s, t), False),
        Instance("T1xT1-F4", lambda: t_alpha_tensor(F4, 1, 1), True),
    ]


@dataclass(frozen=True)
class Sample:
    """A random instance with what is known about it by construction.

    ``slots`` are (alpha, beta) for ``T_alpha (x) T_beta``; ``transpose_class``
    is whether the instance is isomorphic to the transpose on ``M_4``
    (None when not known independently).
    """

    sigma: Involution
    label: str
    slots: Optional[tuple] = None
    transpose_class: Optional[bool] = None


def _square_det(coeffs) -> bool:
    d = coeffs[0].field.one
    for c in coeffs:
        d = d * c
    return is_square(d)


def _pfister_is_sum_of_four_squares(a, b) -> Optional[bool]:
    """Whether <1, a, b, ab> is isometric to <1, 1, 1, 1> (None if undecided)."""
    f = a.field
    if f.is_finite:
        return True
    if f.characteristic == 2:
        return is_square(a) and is_square(b)
    if f.kind == "rationals":
        return isometric(DiagonalQuadraticForm((f.one, a, b, a * b), f), DiagonalQuadraticForm.of(f, [1, 1, 1, 1])) == YES
    return True if is_square(a) and is_square(b) else None


def _rational_split(symbols) -> bool:
    vals = [x for pair in symbols for x in pair]
    for place in relevant_places(vals):
        s = 1
        for a, b in symbols:
            s *= hilbert_symbol(a, b, place)
        if s != 1:
            return False
    return True


def random_instance(field: FieldDescriptor, rng: random.Random, conjugate: bool = True) -> Sample:
    """A random orthogonal involution on a biquaternion algebra over ``field``.

    Kinds: ``T_a (x) T_b`` (all fields), diagonal adjoints on ``M_4`` (possibly
    with nontrivial discriminant), the transpose, and ``gamma (x) gamma`` in
    characteristic != 2 for perfect fields.  Conjugation keeps the class.
    """
    if field.kind == "rationals":
        pool = [field(x) for x in (-1, 1, -2, 2, 3, -3, 5, 6)]
        pick = lambda: rng.choice(pool)  # noqa: E731
    elif field.is_finite:
        elems = [x for x in field.elements() if not x.is_zero()]
        pick = lambda: rng.choice(elems)  # noqa: E731
    else:
        pick = lambda: field.random(rng, 1, nonzero=True)  # noqa: E731
    kinds = ["t_alpha", "adjoint", "transpose"]
    if field.characteristic != 2 and field.is_perfect:
        kinds.append("gamma")
    kind = rng.choice(kinds)
    slots = None
    if kind == "t_alpha":
        a, b = pick(), pick()
        sigma, slots = t_alpha_tensor(field, a, b), (a, b)
        cls = _pfister_is_sum_of_four_squares(a, b)
        label = f"T_{a} (x) T_{b}"
    elif kind == "transpose":
        sigma, cls, label = transpose_m4(field), True, "transpose"
    elif kind == "adjoint":
        c = [pick() for _ in range(4)]
        if rng.random() < 0.5:
            c[3] = c[0] * c[1] * c[2]
        sigma = adjoint_m4(field, c)
        label = f"adjoint <{', '.join(map(str, c))}>"
        if field.characteristic != 2 and not _square_det(c):
            cls = False
        elif field.characteristic == 2:
            cls = True if field.is_perfect else None
        else:
            c0 = c[0]
            cls = _pfister_is_sum_of_four_squares(c0 * c[1], c0 * c[2])
    else:
        s1, s2 = (pick(), pick()), (pick(), pick())
        sigma = gamma_tensor(field, s1, s2)
        label = f"gamma (x) gamma on {s1} (x) {s2}"
        if field.is_finite:
            cls = True
        else:
            cls = None if _rational_split((s1, s2)) else False
    if sigma.type != ORTHOGONAL:
        raise AssertionError("random instance is not orthogonal")
    if conjugate and rng.random() < 0.3:
        sigma = conjugate_involution(sigma, mild_conjugator(sigma.algebra, rng))
        label = f"conjugate of {label}"
    return Sample(sigma, label, slots, cls)


def random_finite_instance(field: FieldDescriptor, rng: random.Random, conjugate: bool = True) -> Involution:
    """A random orthogonal involution on a degree-4 algebra over a finite field.

    Mixes tensor products of ``T_alpha``, ``gamma (x) gamma`` (odd
    characteristic), diagonal adjoints (possibly with nontrivial discriminant)
    and random conjugates of these.
    """
    elems = [x for x in field.elements() if not x.is_zero()]
    kinds = ["t_alpha", "adjoint"] + (["gamma"] if field.characteristic != 2 else [])
    kind = rng.choice(kinds)
    if kind == "t_alpha":
        sigma = t_alpha_tensor(field, rng.choice(elems), rng.choice(elems))
    elif kind == "adjoint":
        sigma = adjoint_m4(field, [rng.choice(elems) for _ in range(4)])
    else:
        sigma = gamma_tensor(field, (rng.choice(elems), rng.choice(elems)), (rng.choice(elems), rng.choice(elems)))
    if sigma.type != ORTHOGONAL:
        raise AssertionError("random instance is not orthogonal")
    if conjugate and rng.random() < 0.5:
        sigma = random_conjugate(sigma, rng)
    return sigma
