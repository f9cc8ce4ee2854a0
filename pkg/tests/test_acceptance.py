"""Acceptance criteria 1-8.

Each test prints one ``criterion N: PASS|FAIL ...`` line and then asserts.
Run standalone with ``python3 tests/test_acceptance.py``.
"""

import itertools
import random
import subprocess
import sys
import time

import pytest

from biquat import linalg as la
from biquat.csalg import AlgebraElement, conjugate_involution, in_span, nrd
from biquat.exactfield import field_from_name
from biquat.instances import (
    Sample,
    adjoint_m4,
    curated,
    gamma_tensor,
    mild_conjugator,
    random_instance,
    t_alpha_tensor,
    transpose_m4,
)
from biquat.pfaffian import (
    ISOMORPHIC,
    NOT_ISOMORPHIC,
    compare_involutions,
    is_metabolic,
    pfaffian_package,
    pfister_invariant,
    transpose_type_test,
)
from biquat.quadform import (
    ANISOTROPIC,
    ISOTROPIC,
    NO,
    YES,
    BilinearPfisterForm,
    isometric,
    pfister_isometric,
    pfister_isotropy,
    pfister_replace,
)
from biquat.verify import VerifyConfig, Trial, check_iso, check_q, check_rema

SAMPLES = 500
CURATED = curated()


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'} {detail}")

    return emit


@pytest.fixture(scope="module")
def packages():
    return {inst.name: pfaffian_package(inst.build()) for inst in CURATED}


def skew_pfaffian(m):
    n = len(m)
    if n == 0:
        return 1
    total = 0
    for j in range(1, n):
        keep = [k for k in range(n) if k not in (0, j)]
        term = m[0][j] * skew_pfaffian([[m[r][c] for c in keep] for r in keep])
        total = total - term if j % 2 == 0 else total + term
    return total


# 1 ---------------------------------------------------------------------------


def test_criterion_1_pfaffian_squares_to_nrd(report):
    start = time.perf_counter()
    bad = []
    for inst in CURATED:
        pkg = pfaffian_package(inst.build())
        rng = random.Random(f"c1:{inst.name}")
        for _ in range(SAMPLES):
            x = pkg.random_alt(rng)
            if pkg.q(x) ** 2 != nrd(x):
                bad.append(inst.name)
                break
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60
    report(1, ok, f"{SAMPLES} samples x {len(CURATED)} instances in {elapsed:.1f}s; failing: {bad or 'none'}")
    assert ok


# 2 ---------------------------------------------------------------------------


def test_criterion_2_oracles(report, packages):
    bad = []
    for inst in CURATED:
        alg = packages[inst.name].algebra
        rng = random.Random(f"c2:{inst.name}")
        for _ in range(SAMPLES):
            x = alg.random_element(rng, 1)
            if la.det(alg.left_matrix(x)) != nrd(x) ** 4:
                bad.append(f"det {inst.name}")
                break
    for name in ("transpose-M4-Q", "transpose-M4-F5"):
        pkg = packages[name]
        rng = random.Random(f"c2pf:{name}")
        ratios = set()
        for _ in range(SAMPLES):
            x = pkg.random_alt(rng)
            classical = pkg.field(skew_pfaffian(pkg.algebra.to_matrix(x)))
            q = pkg.q(x)
            if q.is_zero() or classical.is_zero():
                if not (q.is_zero() and classical.is_zero()):
                    bad.append(f"pfaffian zero mismatch {name}")
                continue
            ratios.add(classical / q)
        if len(ratios) != 1 or next(iter(ratios)) not in (pkg.field.one, -pkg.field.one):
            bad.append(f"pfaffian sign {name}: {ratios}")
    report(2, not bad, f"det(L_x) = nrd^4 and classical pfaffian = +-q; failing: {bad or 'none'}")
    assert not bad


# 3 ---------------------------------------------------------------------------


def test_criterion_3_structure(report, packages):
    bad = []
    for inst in CURATED:
        pkg = packages[inst.name]
        config = VerifyConfig(pkg.field, 1, samples=25)
        trial = Trial(0, Sample(pkg.sigma, inst.name), pkg, random.Random(f"c3:{inst.name}"), config)
        for check in (check_iso, check_rema, check_q):
            try:
                if check(trial) is not True:
                    bad.append(f"{inst.name}: {check.__name__} not applicable")
            except AssertionError as exc:
                bad.append(f"{inst.name}: {check.__name__}: {exc}")
    report(3, not bad, f"polar identity, alt+/alt- orthogonality, Q+- decomposition on {len(CURATED)} instances; failing: {bad or 'none'}")
    assert not bad


# 4 ---------------------------------------------------------------------------


def x2_instances():
    F2, F3 = field_from_name("F2"), field_from_name("F3")
    out = [
        transpose_m4(F2),
        t_alpha_tensor(F2, 1, 1),
        transpose_m4(F3),
        t_alpha_tensor(F3, 1, 2),
        t_alpha_tensor(F3, 2, 2),
        adjoint_m4(F3, [1, 2, 1, 2]),
        gamma_tensor(F3, (1, 1), (2, 1)),
    ]
    for field in (F2, F3):
        rng = random.Random(f"c4:{field.name}")
        for _ in range(3):
            alg = out[0].algebra if field is F2 else out[2].algebra
            sigma = out[0] if field is F2 else out[2]
            out.append(conjugate_involution(sigma, mild_conjugator(alg, rng)))
    return out


def test_criterion_4_x2_by_enumeration(report):
    bad = []
    checked = 0
    for sigma in x2_instances():
        pkg = pfaffian_package(sigma)
        field = pkg.field
        for coeffs in itertools.product(field.elements(), repeat=6):
            x = pkg.element(coeffs)
            central = (x * x).is_scalar()
            on_axes = in_span(pkg.alt_plus, x) or in_span(pkg.alt_minus, x)
            checked += 1
            if central != on_axes:
                bad.append(f"{sigma.label}: {coeffs}")
                break
    report(4, not bad, f"{checked} alternating elements enumerated over F2 and F3; failing: {bad or 'none'}")
    assert not bad


# 5 ---------------------------------------------------------------------------

CONJUGATIONS = 50


def jay_holds(pkg, other):
    same = isometric(pkg.q_plus, other.q_plus)
    swapped = isometric(pkg.q_plus, other.q_minus.scaled(-1))
    full, other_full = pkg.q_plus + pkg.q_minus, other.q_plus + other.q_minus
    return (same == YES and isometric(full, other_full) == YES) or (
        swapped == YES and isometric(full, other_full.scaled(-1)) == YES
    )


def classification_set():
    """Instances with a known transpose class, over F5 and Q."""
    F5, Q = field_from_name("F5"), field_from_name("Q")
    items = [(inst.name, inst.build(), inst.transpose_class) for inst in CURATED if inst.name.endswith(("-F5", "-Q"))]
    items += [
        ("adjoint<1,1,3,3>-Q", adjoint_m4(Q, [1, 1, 3, 3]), False),
        ("adjoint<1,2,3,6>-Q", adjoint_m4(Q, [1, 2, 3, 6]), True),
        ("T-1xT-1-Q", t_alpha_tensor(Q, -1, -1), False),
        ("T1xT2-Q", t_alpha_tensor(Q, 1, 2), True),
    ]
    for field in (F5, Q):
        rng = random.Random(f"c5:{field.name}")
        count = 0
        while count < 10:
            s = random_instance(field, rng, conjugate=False)
            if s.transpose_class is None or s.sigma.algebra.degree != 4:
                continue
            items.append((s.label, s.sigma, s.transpose_class))
            count += 1
    return items


def test_criterion_5_classification(report):
    bad = []
    compared = 0
    for inst in CURATED:
        if not inst.name.endswith(("-F5", "-Q")):
            continue
        sigma = inst.build()
        pkg = pfaffian_package(sigma)
        rng = random.Random(f"c5conj:{inst.name}")
        for k in range(CONJUGATIONS):
            other = pfaffian_package(conjugate_involution(sigma, mild_conjugator(sigma.algebra, rng)))
            compared += 1
            verdict = compare_involutions(pkg, other).verdict
            if verdict != ISOMORPHIC or not jay_holds(pkg, other):
                bad.append(f"{inst.name} conjugation {k}: {verdict}")
    m4 = []
    for label, sigma, expected in classification_set():
        pkg = pfaffian_package(sigma)
        if not pkg.d.is_one():
            continue
        got = transpose_type_test(pkg)
        m4.append(label)
        if got is not expected:
            bad.append(f"transpose test on {label}: {got}, expected {expected}")
    report(5, not bad, f"{compared} conjugate pairs, {len(m4)} transpose-class decisions; failing: {bad or 'none'}")
    assert not bad


# 6 ---------------------------------------------------------------------------


def _nonzero(field, rng, height=2):
    while True:
        x = field.random(rng, height)
        if not x.is_zero():
            return x


def test_criterion_6_characteristic_two(report):
    bad = []
    counts = {}
    for name in ("F2t", "F2st"):
        field = field_from_name(name)
        rng = random.Random(f"c6:{name}")
        for _ in range(50):
            a, b = _nonzero(field, rng), _nonzero(field, rng)
            pf = pfister_invariant(pfaffian_package(t_alpha_tensor(field, a, b)))
            if pfister_isometric(pf, BilinearPfisterForm((a, b))) != YES:
                bad.append(f"Pf(T_{a} (x) T_{b}) = {pf}")
        counts[name] = 50

    F = field_from_name("F2st")
    rng = random.Random("c6:repl")
    repl = 0
    while repl < 50:
        a, lam, mu = _nonzero(F, rng), F.random(rng, 2), _nonzero(F, rng)
        b = a + mu * mu  # 1 + a + b = 1 + mu^2 is a square, so <<a, b>> is isotropic
        if b.is_zero() or (b + a.inverse() * lam * lam).is_zero():
            continue
        form = BilinearPfisterForm((a, b))
        if pfister_isotropy(form).status != ISOTROPIC:
            bad.append(f"{form} expected isotropic")
            continue
        if pfister_isometric(form, pfister_replace(form, lam)) != YES:
            bad.append(f"slot replacement changed {form}")
        repl += 1

    lem = 0
    while lem < 20:
        a, b = _nonzero(F, rng), _nonzero(F, rng)
        form = BilinearPfisterForm((a, b))
        if (a + 1).is_zero() or pfister_isotropy(form).status != ANISOTROPIC:
            continue
        pkg1 = pfaffian_package(t_alpha_tensor(F, a, b))
        pkg2 = pfaffian_package(t_alpha_tensor(F, a + 1, b))
        if pfister_isometric(form, BilinearPfisterForm((a + 1, b))) != NO:
            bad.append(f"{form} vs <<a+1,b>> not distinguished")
        if compare_involutions(pkg1, pkg2).verdict != NOT_ISOMORPHIC:
            bad.append(f"T_a (x) T_b vs T_(a+1) (x) T_b for {form} not distinguished")
        lem += 1
    report(6, not bad, f"Pf on {counts}, {repl} isotropic replacements, {lem} anisotropic shifts; failing: {bad or 'none'}")
    assert not bad


# 7 ---------------------------------------------------------------------------


def test_criterion_7_metabolicity(report, packages):
    bad = []
    tested = 0
    fields = [field_from_name(n) for n in ("F2", "F3", "F4", "F5", "F7")]
    for k in range(100):
        field = fields[k % len(fields)]
        sample = random_instance(field, random.Random(f"c7:{k}"))
        try:
            cert = is_metabolic(pfaffian_package(sample.sigma))
        except Exception as exc:
            bad.append(f"{sample.label}: {exc}")
            continue
        tested += 1
        verdicts = {v.verdict for _, v in cert.criteria}
        if len(verdicts) != 1 or None in verdicts:
            bad.append(f"{sample.label}: {cert.criteria}")
    for name in ("transpose-M4-F5", "gamma-gamma-Q", "TsxTt-F2st"):
        cert = is_metabolic(packages[name])
        tested += 1
        if len({v.verdict for _, v in cert.criteria}) != 1:
            bad.append(f"{name}: criteria disagree")
    cert = is_metabolic(packages["transpose-M4-F5"])
    u = cert.unit_square
    if not (cert.verdict is True and u is not None and u * u == u.algebra.one):
        bad.append("transpose on M4(F5) lacks a witness u^2 = 1")
    if is_metabolic(packages["gamma-gamma-Q"]).verdict is not False:
        bad.append("gamma (x) gamma over Q reported metabolic")
    if is_metabolic(packages["TsxTt-F2st"]).verdict is not False:
        bad.append("T_s (x) T_t over F2(s,t) reported metabolic")
    report(7, not bad, f"four criteria agree on {tested} instances; failing: {bad or 'none'}")
    assert not bad


# 8 ---------------------------------------------------------------------------


def test_criterion_8_example(report):
    runs = []
    start = time.perf_counter()
    for _ in range(2):
        proc = subprocess.run([sys.executable, "-m", "biquat", "reproduce-example"], capture_output=True)
        runs.append(proc)
    elapsed = (time.perf_counter() - start) / 2
    out = runs[0].stdout.decode()
    affirmative = out.splitlines()[-1:] == ["anisotropic: yes; Pf distinct: yes; not isomorphic: yes; Phi isomorphic: yes"]
    ok = all(r.returncode == 0 for r in runs) and runs[0].stdout == runs[1].stdout and affirmative and elapsed < 10
    report(8, ok, f"byte-identical: {runs[0].stdout == runs[1].stdout}, all yes: {affirmative}, {elapsed:.1f}s per run")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
