"""The two involutions ``T_s (x) T_t`` and ``T_(s+1) (x) T_t`` on ``M_4(F_2(s, t))``.

They have isomorphic subalgebras ``F + alt+`` but are not isomorphic as
algebras with involution, which shows that in characteristic 2 the
Pfister invariant carries more information than ``Q+``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import linalg as la
from .csalg import AlgebraElement, alt_space, in_span
from .exactfield import function_field
from .instances import t_alpha_tensor
from .pfaffian import NOT_ISOMORPHIC, PfaffianPackage, compare_involutions, pfaffian_package, pfister_invariant
from .quadform import ANISOTROPIC, NO, YES, BilinearPfisterForm, pfister_isometric, pfister_isotropy


@dataclass(frozen=True)
class ExampleResult:
    lines: tuple[str, ...]
    ok: bool

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _generators(pkg: PfaffianPackage, alpha):
    """``u = (E12 + alpha E21) (x) 1`` and ``v = 1 (x) (E12 + t E21)`` as elements of ``A``."""
    alg = pkg.algebra
    s_, t_ = alg.field.gens()
    u = alg.matrix_unit(1, 3) + alg.matrix_unit(2, 4) + (alg.matrix_unit(3, 1) + alg.matrix_unit(4, 2)) * alpha
    v = alg.matrix_unit(1, 2) + alg.matrix_unit(3, 4) + (alg.matrix_unit(2, 1) + alg.matrix_unit(4, 3)) * t_
    return u, v


def _in_phi(pkg: PfaffianPackage, x: AlgebraElement) -> bool:
    return in_span((pkg.algebra.one,) + pkg.alt_plus, x)


def check_f_map(pkg1: PfaffianPackage, pkg2: PfaffianPackage, gens1, gens2) -> list[str]:
    """Problems with ``f: 1, u, v, uv -> 1, u' + 1, v', (u' + 1) v'`` (empty if none)."""
    problems = []
    alg = pkg1.algebra
    u, v = gens1
    u2, v2 = gens2
    src = [alg.one, u, v, u * v]
    img = [alg.one, u2 + alg.one, v2, (u2 + alg.one) * v2]
    for name, (pkg, elems) in {"Phi(A, sigma)": (pkg1, src), "Phi(A, sigma')": (pkg2, img)}.items():
        if any(not _in_phi(pkg, x) for x in elems):
            problems.append(f"basis of {name} leaves F + alt+")
        if la.rank([x.coords for x in elems]) != 4:
            problems.append(f"basis of {name} is dependent")
    coords = la.SpanCoordinates([x.coords for x in src])

    def f(x):
        c = coords.coordinates(x.coords)
        if c is None:
            raise ValueError("element outside F[u, v]")
        acc = alg.zero
        for ci, y in zip(c, img):
            acc = acc + ci * y
        return acc

    if f(alg.one) != alg.one:
        problems.append("f is not unital")
    for a, b in itertools.product(src, repeat=2):
        if f(a * b) != f(a) * f(b):
            problems.append("f is not multiplicative")
            break
    return problems


def reproduce_example(seed: int = 0) -> ExampleResult:
    F = function_field(2, ("s", "t"))
    s, t = F.gens()
    one = F.one
    pkg1 = pfaffian_package(t_alpha_tensor(F, s, t), seed=seed)
    pkg2 = pfaffian_package(t_alpha_tensor(F, s + one, t), seed=seed)
    form = BilinearPfisterForm((s, t))
    shifted = BilinearPfisterForm((s + one, t))

    aniso = pfister_isotropy(form).status == ANISOTROPIC
    pf1, pf2 = pfister_invariant(pkg1), pfister_invariant(pkg2)
    identified = pfister_isometric(pf1, form) == YES and pfister_isometric(pf2, shifted) == YES
    distinct = identified and pfister_isometric(pf1, pf2) == NO
    cmp = compare_involutions(pkg1, pkg2)
    not_iso = cmp.verdict == NOT_ISOMORPHIC

    gens1, gens2 = _generators(pkg1, s), _generators(pkg2, s + one)
    problems = []
    for pkg, (u, v), alpha in ((pkg1, gens1, s), (pkg2, gens2, s + one)):
        alt = alt_space(pkg.sigma)
        for x in (u, v, u * v):
            if not in_span(alt, x) or not _in_phi(pkg, x):
                problems.append("u, v, uv are not alternating elements of F + alt+")
        if u * u != pkg.algebra.scalar(alpha) or v * v != pkg.algebra.scalar(t):
            problems.append("u^2, v^2 are not the expected slots")
    problems += check_f_map(pkg1, pkg2, gens1, gens2)
    phi_iso = not problems

    lines = (
        f"<<s,t>> anisotropic over F2(s,t): {_yes(aniso)}",
        f"Pf(A,sigma) = {pf1}, Pf(A,sigma') = {pf2}: {_yes(identified)}",
        f"Pf(A,sigma) and Pf(A,sigma') not isometric: {_yes(distinct)}",
        f"(A,sigma) and (A,sigma') not isomorphic: {_yes(not_iso)} ({cmp.evidence[1]})",
        "Phi(A,sigma) -> Phi(A,sigma') via f(u) = u'+1, f(v) = v' is an isomorphism: "
        + (_yes(phi_iso) if phi_iso else "no (" + "; ".join(problems) + ")"),
        f"anisotropic: {_yes(aniso)}; Pf distinct: {_yes(distinct)}; not isomorphic: {_yes(not_iso)}; "
        f"Phi isomorphic: {_yes(phi_iso)}",
    )
    return ExampleResult(lines, aniso and identified and distinct and not_iso and phi_iso)
