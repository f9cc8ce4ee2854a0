"""Seeded property checks of the structure theory, keyed by short labels.

Each check takes a :class:`Trial` and returns True (pass) or None (not
applicable / undecided), raising AssertionError on a failure.  The labels:

=========  ==============================================================
pf         q(x)^2 = d nrd(x), x p(x) = p(x) x = q(x), p^2 = d
iso        p is an isometry of q; polar identity b(x, y) = x p(y) + y p(x)
rema       alt+ and alt- are mutually orthogonal complements and commute
x2         {x in alt : x^2 central} = alt+ u alt-
q          Q+ and Q- are the expected subalgebras
bas        diagonal bases (u, v, uv) and the norm forms of Q+-
jay        conjugate involutions have matching q+- (char != 2)
pfq        Pfister invariant versus q+ (char 2)
pfister    Pf isometry versus q+ isometry; Pf of T_a (x) T_b (char 2)
char       conjugate involutions compare isomorphic (char 2)
lem        <<a, b>> and <<a + 1, b>> differ when anisotropic (char 2)
repl       <<a, b>> = <<a, b + a^-1 l^2>> when isotropic (char 2)
hyp        the four metabolicity criteria agree
metab      metabolic idempotents e satisfy (e - sigma(e))^2 = 1
final      metabolic iff some alternating u has u^2 = 1
m4         transpose-type test against the known class
=========  ==============================================================
"""

from __future__ import annotations

import itertools
import random
import traceback
from dataclasses import dataclass, field as dc_field
from typing import Callable, Optional

import numpy as np

from . import linalg as la
from .csalg import AlgebraElement, Involution, centralizer, conjugate_involution, nrd
from .exactfield import FieldDescriptor
from .instances import Sample, mild_conjugator, random_instance, t_alpha_tensor
from .pfaffian import (
    ENUMERATION_LIMIT,
    ISOMORPHIC,
    NOT_ISOMORPHIC,
    PfaffianPackage,
    _Encoded,
    _multiplicative_basis,
    alternating_generators,
    compare_involutions,
    enumerate_alt_squares,
    find_unit_square_exhaustive,
    is_metabolic,
    pfaffian_package,
    pfister_invariant,
    transpose_type_test,
)
from .quadform import (
    NO,
    YES,
    BilinearPfisterForm,
    DiagonalQuadraticForm,
    FormError,
    isometric,
    pfister_isometric,
    pfister_isotropy,
    pfister_replace,
)

CHAR2_ONLY = ("pfq", "pfister", "char", "lem", "repl")
ODD_ONLY = ("jay",)
CHECK_ORDER = (
    "pf", "iso", "rema", "x2", "q", "bas", "jay", "pfq", "pfister",
    "char", "lem", "repl", "hyp", "metab", "final", "m4",
)


@dataclass
class VerifyConfig:
    field: FieldDescriptor
    trials: int
    seed: int = 0
    samples: int = 8  # random alternating elements per instance
    idempotent_trials: int = 2  # trials that enumerate M_4(F_2) for metabolic idempotents


@dataclass
class Tally:
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    failures: list = dc_field(default_factory=list)


@dataclass
class Trial:
    index: int
    sample: Sample
    pkg: PfaffianPackage
    rng: random.Random
    config: VerifyConfig
    previous: Optional["Trial"] = None
    _cert: object = None

    @property
    def sigma(self) -> Involution:
        return self.sample.sigma

    @property
    def split(self) -> bool:
        return self.pkg.is_split

    @property
    def char2(self) -> bool:
        return self.pkg.field.characteristic == 2

    def alt_samples(self):
        return [self.pkg.random_alt(self.rng, 2) for _ in range(self.config.samples)]

    def certificate(self):
        if self._cert is None:
            self._cert = is_metabolic(self.pkg, seed=self.config.seed)
        return self._cert


def _span(elements) -> la.SpanCoordinates:
    return la.SpanCoordinates([e.coords for e in elements])


def _same_span(xs, ys) -> bool:
    rx = la.rank([x.coords for x in xs])
    return rx == la.rank([y.coords for y in ys]) == la.rank([x.coords for x in xs] + [y.coords for y in ys])


# ---------------------------------------------------------------------------
# checks


def check_pf(t: Trial):
    pkg, one = t.pkg, t.pkg.algebra.one
    for x in t.alt_samples():
        qx = pkg.q(x)
        assert qx * qx == pkg.d * nrd(x), "q(x)^2 != d nrd(x)"
        px = pkg.p(x)
        assert x * px == one * qx and px * x == one * qx, "x p(x) != q(x)"
        assert pkg.p(px) == x * pkg.d, "p^2 != d"
    return True


def check_iso(t: Trial):
    if not t.split:
        return None
    pkg = t.pkg
    xs, ys = t.alt_samples(), t.alt_samples()
    for x, y in zip(xs, ys):
        assert pkg.q(pkg.p(x)) == pkg.q(x), "q(p(x)) != q(x)"
        assert pkg.algebra.one * pkg.polar(x, y) == x * pkg.p(y) + y * pkg.p(x), "polar identity fails"
    return True


def check_rema(t: Trial):
    if not t.split:
        return None
    pkg = t.pkg
    for a in pkg.alt_plus:
        for b in pkg.alt_minus:
            assert pkg.polar(a, b).is_zero(), "alt+ is not orthogonal to alt-"
            assert a * b == b * a, "alt+ and alt- do not commute"
    # alt+ is all of (alt-)^perp, not just inside it
    gram = [list(r) for r in pkg.polar_matrix]
    rows = [la.matvec(gram, pkg.coordinates(b)) for b in pkg.alt_minus]
    perp = [pkg.element(c) for c in la.nullspace(rows)]
    assert _same_span(perp, pkg.alt_plus), "(alt-)^perp != alt+"
    return True


def _encoded_p(t: Trial, coeffs):
    enc = _Encoded(t.pkg.field)
    pm = [[enc.enc(c) for c in row] for row in t.pkg.p_matrix]
    out = np.zeros_like(coeffs)
    for i in range(6):
        for j in range(6):
            if pm[i][j]:
                out[:, i] = enc.add(out[:, i], enc.mul(np.int64(pm[i][j]), coeffs[:, j]))
    neg = coeffs if enc.table is not None else (-coeffs) % enc.p
    return out, neg


def check_x2(t: Trial):
    if not t.split:
        return None
    pkg = t.pkg
    field = pkg.field
    if field.is_finite and field.order ** 6 <= ENUMERATION_LIMIT:
        coeffs, squares = enumerate_alt_squares(pkg)
        central = (squares[:, 1:] == 0).all(axis=1)
        pc, neg = _encoded_p(t, coeffs)
        eig = (pc == coeffs).all(axis=1) | (pc == neg).all(axis=1)
        bad = np.nonzero(central != eig)[0]
        assert len(bad) == 0, f"{len(bad)} alternating elements violate x^2 central <=> p(x) = +-x"
        return True
    plus, minus = pkg.alt_plus, pkg.alt_minus
    for _ in range(t.config.samples):
        cp = [field.random(t.rng, 2) for _ in range(3)]
        cm = [field.random(t.rng, 2) for _ in range(3)]
        a = sum((c * e for c, e in zip(cp, plus)), pkg.algebra.zero)
        b = sum((c * e for c, e in zip(cm, minus)), pkg.algebra.zero)
        assert (a * a).is_scalar() and (b * b).is_scalar(), "square of an element of alt+- is not central"
        x = t.pkg.random_alt(t.rng, 2)
        on_axes = pkg.p(x) == x or pkg.p(x) == -x
        assert (x * x).is_scalar() == on_axes, "x^2 central does not match p(x) = +-x"
    return True


def check_q(t: Trial):
    if not t.split:
        return None
    pkg, alg = t.pkg, t.pkg.algebra
    qp, qm = pkg.Q_plus, pkg.Q_minus
    for basis in (qp, qm):
        span = _span(basis)
        for a, b in itertools.product(basis, repeat=2):
            assert span.coordinates((a * b).coords) is not None, "Q+- is not closed under multiplication"
    cent = centralizer(alg, list(qp))
    if t.char2:
        assert _same_span(qp, qm), "Q+ != Q- in characteristic 2"
        for a, b in itertools.combinations(qp, 2):
            assert a * b == b * a, "Q+ is not commutative"
        for x in pkg.alt_plus:
            assert (x * x).is_scalar(), "square in Q+ is not central"
        assert _same_span(cent, qp), "Q+ is not a maximal commutative subalgebra"
    else:
        assert _same_span(cent, qm), "centralizer of Q+ is not Q-"
        assert la.rank([(a * b).coords for a in qp for b in qm]) == alg.dim, "Q+ Q- does not span A"
    return True


def _norm_form_from_involution(t: Trial, basis) -> DiagonalQuadraticForm:
    """``x -> x sigma(x)`` on ``F + span(basis)``, which must be diagonal in ``(1, basis)``."""
    pkg = t.pkg
    elems = (pkg.algebra.one,) + tuple(basis)

    def n(x):
        v = (x * t.sigma(x)).scalar_part()
        assert v is not None, "x sigma(x) is not central on Q+-"
        return v

    vals = [n(e) for e in elems]
    for i, j in itertools.combinations(range(4), 2):
        assert n(elems[i] + elems[j]) == vals[i] + vals[j], "(1, u, v, uv) is not orthogonal for the norm"
    return DiagonalQuadraticForm(tuple(vals), pkg.field)


def check_bas(t: Trial):
    if not t.split:
        return None
    pkg = t.pkg
    field = pkg.field
    for basis in (pkg.alt_plus, pkg.alt_minus):
        u, v, w = basis
        assert u * v == w, "third basis vector is not uv"
        for a, b in itertools.combinations(basis, 2):
            assert pkg.polar(a, b).is_zero(), "(u, v, uv) is not orthogonal"
    if t.char2:
        x, y = alternating_generators(pkg)
        a, b = (x * x).scalar_part(), (y * y).scalar_part()
        assert isometric(pkg.q_plus, DiagonalQuadraticForm((a, b, a * b), field)) == YES, "q+ != <a, b, ab>"
        return True
    one = DiagonalQuadraticForm.of(field, [1])
    verdicts = [
        isometric(_norm_form_from_involution(t, pkg.alt_plus), one + pkg.q_plus.scaled(-field.one)),
        isometric(_norm_form_from_involution(t, pkg.alt_minus), one + pkg.q_minus),
    ]
    assert NO not in verdicts, "norm form of Q+- does not match q+-"
    return True if all(v == YES for v in verdicts) else None


def _conjugate_package(t: Trial) -> PfaffianPackage:
    a = mild_conjugator(t.pkg.algebra, t.rng)
    return pfaffian_package(conjugate_involution(t.sigma, a), seed=t.config.seed)


def check_jay(t: Trial):
    if not t.split or t.char2:
        return None
    other = _conjugate_package(t)
    same = isometric(t.pkg.q_plus, other.q_plus)
    swapped = isometric(t.pkg.q_plus, other.q_minus.scaled(-1))
    if YES not in (same, swapped):
        assert not (same == NO and swapped == NO), "q+ matches neither q'+ nor -q'-"
        return None
    # q is the orthogonal sum of q+ and q-, so the whole form must match up to sign
    full, other_full = t.pkg.q_plus + t.pkg.q_minus, other.q_plus + other.q_minus
    if same == YES:
        assert isometric(full, other_full) != NO, "q+ = q'+ but q and q' differ"
    if swapped == YES:
        assert isometric(full, other_full.scaled(-1)) != NO, "q+ = -q'- but q and -q' differ"
    verdict = compare_involutions(t.pkg, other).verdict
    assert verdict != NOT_ISOMORPHIC, "conjugate involution compares not isomorphic"
    return True if verdict == ISOMORPHIC else None


def check_pfq(t: Trial):
    if not t.split or not t.char2:
        return None
    pkg = t.pkg
    x, y = alternating_generators(pkg)
    plus = _span((pkg.algebra.one,) + pkg.alt_plus)
    for z in (x, y, x * y):
        c = plus.coordinates(z.coords)
        assert c is not None and c[0].is_zero(), "generator is not in alt+"
    b = pfister_invariant(pkg)
    a1, a2 = b.slots
    assert isometric(pkg.q_plus, DiagonalQuadraticForm((a1, a2, a1 * a2), pkg.field)) == YES, "q+ != pure part of Pf"
    # a different diagonal basis gives an isometric invariant
    other = _multiplicative_basis(pkg, list(pkg.alt_plus), t.config.seed + 17 + t.index)
    assert pfister_isometric(b, pfister_invariant(pkg, other)) == YES, "Pf depends on the chosen basis"
    return True


def check_pfister(t: Trial):
    if not t.split or not t.char2:
        return None
    pkg = t.pkg
    pf = pfister_invariant(pkg)
    if t.sample.slots is not None:
        assert pfister_isometric(pf, BilinearPfisterForm(t.sample.slots)) == YES, "Pf(T_a (x) T_b) != <<a, b>>"
    prev = t.previous
    if prev is not None and prev.split:
        lhs = isometric(pkg.q_plus, prev.pkg.q_plus) == YES
        rhs = pfister_isometric(pf, pfister_invariant(prev.pkg)) == YES
        assert lhs == rhs, "q+ isometry and Pf isometry disagree"
    return True


def check_char(t: Trial):
    if not t.split or not t.char2:
        return None
    verdict = compare_involutions(t.pkg, _conjugate_package(t)).verdict
    assert verdict == ISOMORPHIC, f"conjugate involution compares {verdict}"
    return True


def check_lem(t: Trial):
    if not t.split or not t.char2:
        return None
    pf = pfister_invariant(t.pkg)
    if pfister_isotropy(pf).status != "anisotropic":
        return None
    a, b = pf.slots
    one = a.field.one
    assert pfister_isometric(pf, BilinearPfisterForm((a + one, b))) == NO, "<<a, b>> = <<a + 1, b>>"
    assert pfister_isometric(pf, BilinearPfisterForm((a, b + one))) == NO, "<<a, b>> = <<a, b + 1>>"
    if t.sample.slots is not None:
        s1, s2 = t.sample.slots
        shifted = pfaffian_package(t_alpha_tensor(a.field, s1 + one, s2), seed=t.config.seed)
        verdict = compare_involutions(t.pkg, shifted).verdict
        assert verdict == NOT_ISOMORPHIC, f"T_a (x) T_b vs T_(a+1) (x) T_b compares {verdict}"
    return True


def check_repl(t: Trial):
    if not t.split or not t.char2:
        return None
    pf = pfister_invariant(t.pkg)
    a, b = pf.slots
    lam = None
    for _ in range(20):
        c = t.pkg.field.random(t.rng, 2, nonzero=True)
        if not (b + c * c / a).is_zero():
            lam = c
            break
    if lam is None:
        return None
    if pfister_isotropy(pf).status == "anisotropic":
        try:
            pfister_replace(pf, lam)
        except FormError:
            return True
        raise AssertionError("pfister_replace accepted an anisotropic form")
    assert pfister_isometric(pf, pfister_replace(pf, lam)) == YES, "replacement changed the isometry class"
    return True


def check_hyp(t: Trial):
    cert = t.certificate()
    if cert.verdict is None:
        return None
    assert all(v.verdict == cert.verdict for _, v in cert.criteria), "criteria disagree"
    return True


def _products(x, y, table):
    """Row-wise products of coordinate arrays over F_2 using structure constants."""
    out = np.zeros_like(x)
    for i, row in enumerate(table):
        xi = x[:, i]
        if not xi.any():
            continue
        for j, entry in enumerate(row):
            if not entry:
                continue
            m = xi & y[:, j]
            for k, c in entry:
                if c.is_one():
                    out[:, k] ^= m
    return out


def metabolic_idempotents_f2(sigma: Involution) -> np.ndarray:
    """All metabolic idempotents of a 16-dimensional algebra over F_2, as 0/1 rows."""
    alg = sigma.algebra
    if alg.field.kind != "prime" or alg.field.p != 2:
        raise ValueError("enumeration is implemented over F_2 only")
    n = alg.dim
    e = ((np.arange(2 ** n)[:, None] >> np.arange(n)[None, :]) & 1).astype(np.uint8)
    smat = np.array([[int(c.value) for c in row] for row in sigma.matrix], dtype=np.uint8)
    se = (e @ smat.T) % 2
    table = alg.table
    ee = _products(e, e, table)
    idem = (ee == e).all(axis=1)
    e, se = e[idem], se[idem]
    one = np.zeros(n, dtype=np.uint8)
    one[0] = 1
    left = _products(se, e, table)
    right = (one[None, :] ^ e ^ se ^ _products(e, se, table))  # (1 - e)(1 - sigma(e))
    keep = (left == 0).all(axis=1) & (right == 0).all(axis=1)
    return e[keep]


def check_metab(t: Trial):
    alg = t.pkg.algebra
    field = alg.field
    if field.kind == "prime" and field.p == 2:
        if t.index >= t.config.idempotent_trials:
            return None
        idems = metabolic_idempotents_f2(t.sigma)
        for row in idems:
            e = AlgebraElement(alg, [field(int(c)) for c in row])
            x = e - t.sigma(e)
            assert x * x == alg.one, "(e - sigma(e))^2 != 1"
        cert = t.certificate()
        if cert.verdict is not None:
            assert (len(idems) > 0) == cert.verdict, "metabolic idempotents exist iff metabolic fails"
        return True
    cert = t.certificate()
    e = cert.idempotent
    if e is None:
        return None
    se = t.sigma(e)
    assert (se * e).is_zero() and ((alg.one - e) * (alg.one - se)).is_zero(), "not a metabolic idempotent"
    assert (e - se) * (e - se) == alg.one, "(e - sigma(e))^2 != 1"
    return True


def check_final(t: Trial):
    cert = t.certificate()
    field = t.pkg.field
    enumerable = field.is_finite and field.order ** 6 <= ENUMERATION_LIMIT
    if not t.pkg.d.is_one():
        assert cert.verdict is False, "nontrivial discriminant but metabolic"
        if enumerable:
            found, _ = find_unit_square_exhaustive(t.pkg)
            assert not found, "u^2 = 1 in alt although the discriminant is nontrivial"
        return True
    if cert.verdict is None:
        return None
    if cert.verdict:
        u = cert.unit_square
        assert u is not None and u * u == t.pkg.algebra.one, "metabolic without a witness u^2 = 1"
        t.pkg.coordinates(u)
    elif enumerable:
        assert not find_unit_square_exhaustive(t.pkg)[0], "u^2 = 1 found but not metabolic"
    return True


def check_m4(t: Trial):
    expected = t.sample.transpose_class
    if not t.split:
        assert expected is not True, "transpose class but not decomposable"
        return True if expected is False else None
    got = transpose_type_test(t.pkg)
    if expected is None or got is None:
        return None
    assert got == expected, f"transpose test says {got}, construction says {expected}"
    return True


CHECKS: dict[str, Callable[[Trial], Optional[bool]]] = {
    "pf": check_pf,
    "iso": check_iso,
    "rema": check_rema,
    "x2": check_x2,
    "q": check_q,
    "bas": check_bas,
    "jay": check_jay,
    "pfq": check_pfq,
    "pfister": check_pfister,
    "char": check_char,
    "lem": check_lem,
    "repl": check_repl,
    "hyp": check_hyp,
    "metab": check_metab,
    "final": check_final,
    "m4": check_m4,
}


def applicable_checks(field: FieldDescriptor) -> list[str]:
    skip = ODD_ONLY if field.characteristic == 2 else CHAR2_ONLY
    return [k for k in CHECK_ORDER if k not in skip]


def run_trial(index: int, config: VerifyConfig, previous: Optional[Trial], tallies: dict[str, Tally]) -> Optional[Trial]:
    rng = random.Random(f"{config.seed}:{index}")
    try:
        sample = random_instance(config.field, rng)
        pkg = pfaffian_package(sample.sigma, seed=config.seed)
    except Exception as exc:  # the construction itself is under test
        for tally in tallies.values():
            tally.failed += 1
            tally.failures.append(f"trial {index}: building failed: {exc!r}")
        return None
    trial = Trial(index, sample, pkg, rng, config, previous)
    for key, tally in tallies.items():
        try:
            ok = CHECKS[key](trial)
        except Exception as exc:
            tally.failed += 1
            detail = str(exc) if isinstance(exc, AssertionError) else traceback.format_exception_only(type(exc), exc)[-1].strip()
            tally.failures.append(f"trial {index} ({sample.label}): {detail}")
            continue
        if ok:
            tally.passed += 1
        else:
            tally.skipped += 1
    return trial


def run_verification(config: VerifyConfig, progress: Optional[Callable[[int], None]] = None) -> dict[str, Tally]:
    tallies = {k: Tally() for k in applicable_checks(config.field)}
    previous = None
    for i in range(config.trials):
        trial = run_trial(i, config, previous, tallies)
        previous = trial or previous
        if progress:
            progress(i)
    return tallies


def format_summary(config: VerifyConfig, tallies: dict[str, Tally]) -> str:
    lines = [f"verify field={config.field.name} trials={config.trials} seed={config.seed}"]
    for key, t in tallies.items():
        status = "FAIL" if t.failed else "ok"
        lines.append(f"{key:8s} passed={t.passed} failed={t.failed} skipped={t.skipped} {status}")
        lines.extend(f"    {msg}" for msg in t.failures[:5])
    total_failed = sum(t.failed for t in tallies.values())
    lines.append("all checks passed" if not total_failed else f"{total_failed} check(s) failed")
    return "\n".join(lines)
