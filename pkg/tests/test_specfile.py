from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from biquat.csalg import AlgebraSpec, FactorSpec, ORTHOGONAL, SYMPLECTIC
from biquat.exactfield import field_from_name
from biquat.specfile import InstanceSpec, SpecSyntaxError, build_instance, format_spec, load_spec, parse_spec

from strategies import FIELDS, elements

DOCS = Path(__file__).resolve().parent.parent / "docs" / "instances"
SPEC_FILES = sorted(DOCS.glob("*.spec"))


@pytest.mark.parametrize("path", SPEC_FILES, ids=lambda p: p.name)
def test_shipped_files_round_trip(path):
    spec = load_spec(path)
    text = format_spec(spec)
    assert parse_spec(text) == spec
    assert format_spec(parse_spec(text)) == text
    assert build_instance(spec).type == ORTHOGONAL


def test_symplectic_file_builds_symplectic():
    text = """
[field]
kind = prime
p = 5
[algebra]
factor1 = matrix
factor2 = matrix
[involution]
factor1 = canonical
factor2 = t_alpha(2)
"""
    assert build_instance(parse_spec(text)).type == SYMPLECTIC


def test_conjugate_entry():
    ident = ["1", "0", "0", "0", "0", "1", "0", "0", "0", "0", "1", "0", "0", "0", "0", "1"]
    twist = list(ident)
    twist[1] = "2"
    base = "[field]\nkind = prime\np = 5\n[algebra]\nmatrix = 4\n[involution]\nglobal = transpose\n"
    spec = parse_spec(base + "conjugate = " + ", ".join(twist) + "\n")
    assert len(spec.conjugate) == 16
    sigma = build_instance(spec)
    assert sigma.type == ORTHOGONAL
    assert sigma != build_instance(parse_spec(base))


BAD = [
    ("[field]\nkind = rational\n[algebra]\nmatrix = 4\n[involution]\nglobal = transpose\n", 2, 8, "unknown field kind"),
    ("[field]\nkind = prime\np = 5\n[algebra]\nmatrix = 3\n[involution]\nglobal = transpose\n", 5, 10, "matrix degree"),
    ("[field]\nkind = prime\np = 5\n[algebra]\nmatrix = 4\n[involution]\nglobal = transpose\n[algebra]\n", 8, 1, "duplicate section"),
    ("[fields]\n", 1, 1, "unknown section"),
    ("kind = prime\n", 1, 1, "before the first section"),
    ("[field]\nkind prime\n", 2, 1, "expected 'key = value'"),
    (
        "[field]\nkind = function_field\np = 2\nvariables = s, t\n[algebra]\nfactor1 = matrix\nfactor2 = matrix\n"
        "[involution]\nfactor1 = t_alpha(s + u)\nfactor2 = t_alpha(t)\n",
        9, 23, "unknown",
    ),
    (
        "[field]\nkind = prime\np = 5\n[algebra]\nfactor1 = quaternion(1, 2)\nfactor2 = matrix\n"
        "[involution]\nfactor1 = canonical\nfactor2 = t_alpha(1, 2)\n",
        9, 11, "takes 1 arguments",
    ),
    ("[field]\nkind = prime\np = 6\n[algebra]\nmatrix = 4\n[involution]\nglobal = transpose\n", 2, 8, ""),
    ("[field]\nkind = prime\np = 5\n[algebra]\nmatrix = 4\n", 6, 1, "missing section [involution]"),
]


@pytest.mark.parametrize("text, line, column, fragment", BAD)
def test_errors_report_positions(text, line, column, fragment):
    with pytest.raises(SpecSyntaxError) as info:
        parse_spec(text, "x.spec")
    err = info.value
    assert (err.line, err.column) == (line, column)
    assert fragment in str(err)
    assert str(err).startswith(f"x.spec:{line}:{column}: ")


def test_comments_and_blank_lines_are_ignored():
    text = "# header\n\n[field]  # trailing\n  kind = rationals\n[algebra]\nmatrix = 4 # m\n[involution]\nglobal = adjoint_diag(1, 2, 3, 6)\n"
    spec = parse_spec(text)
    assert spec.algebra.coefficients == tuple(spec.field(c) for c in (1, 2, 3, 6))


def _factor(field):
    nz = elements(field, nonzero=True)
    matrix = st.builds(lambda a: FactorSpec("matrix", involution="t_alpha", params=(a,)), nz)
    canon = st.just(FactorSpec("matrix"))
    symbol = "quaternion2" if field.characteristic == 2 else "quaternion"
    quat = st.builds(lambda a, b: FactorSpec(symbol, a, b), nz, nz)
    return st.one_of(matrix, canon, quat)


@pytest.mark.parametrize("name", ["Q", "F5", "F2st", "F4", "F3t"])
def test_generated_specs_round_trip(name):
    field = FIELDS[name]

    @given(_factor(field), _factor(field), st.lists(elements(field), min_size=16, max_size=16) | st.just([]))
    def check(f1, f2, conj):
        spec = InstanceSpec(AlgebraSpec(field, (f1, f2)), tuple(conj))
        text = format_spec(spec)
        again = parse_spec(text)
        assert again == spec
        assert format_spec(again) == text

    check()


def test_global_spec_round_trip():
    field = field_from_name("F7")
    spec = InstanceSpec(AlgebraSpec(field, matrix_degree=4, global_involution="adjoint_diag", coefficients=tuple(map(field, (1, 2, 3, 4)))))
    assert parse_spec(format_spec(spec)) == spec
