"""Instance files: a small line-oriented stanza format.

Example::

    # transpose on M_4(Q)
    [field]
    kind = rationals

    [algebra]
    matrix = 4

    [involution]
    global = transpose

Sections are ``[field]``, ``[algebra]`` and ``[involution]``.  Values that
carry arguments are written ``name(arg, arg, ...)`` where every argument is
an element literal.  The full grammar lives in ``docs/specfile.md``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .csalg import (
    AlgebraElement,
    AlgebraError,
    AlgebraSpec,
    FactorSpec,
    Involution,
    build_algebra,
    conjugate_involution,
    invert,
)
from .exactfield import (
    FieldDescriptor,
    FieldElement,
    FieldError,
    LiteralSyntaxError,
    binary_field,
    function_field,
    parse_element,
    prime_field,
    rationals,
)

SECTIONS = ("field", "algebra", "involution")
FACTOR_SYMBOLS = {"matrix": 0, "quaternion": 2, "quaternion2": 2}
FACTOR_INVOLUTIONS = ("canonical", "t_alpha", "int_gamma")
GLOBAL_INVOLUTIONS = ("transpose", "adjoint_diag")


class SpecSyntaxError(ValueError):
    """Malformed instance file; carries a 1-based line and column."""

    def __init__(self, message: str, line: int, column: int = 1, source: str = "<spec>"):
        super().__init__(f"{source}:{line}:{column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class InstanceSpec:
    algebra: AlgebraSpec
    conjugate: tuple[FieldElement, ...] = ()

    @property
    def field(self) -> FieldDescriptor:
        return self.algebra.field


_HEADER = re.compile(r"\[\s*([A-Za-z_]+)\s*\]$")
_ENTRY = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.*)$")
_CALL = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)\s*(?:\((.*)\))?$")


def _strip_comment(line: str) -> str:
    i = line.find("#")
    return line if i < 0 else line[:i]


def _read_stanzas(text: str, source: str):
    """``{section: [(key, value, line, value_column), ...]}``."""
    stanzas: dict[str, list] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw).rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        body = line.strip()
        m = _HEADER.match(body)
        if m:
            current = m.group(1)
            if current not in SECTIONS:
                raise SpecSyntaxError(f"unknown section [{current}]", lineno, indent + 1, source)
            if current in stanzas:
                raise SpecSyntaxError(f"duplicate section [{current}]", lineno, indent + 1, source)
            stanzas[current] = []
            continue
        m = _ENTRY.match(body)
        if not m:
            raise SpecSyntaxError("expected 'key = value' or '[section]'", lineno, indent + 1, source)
        if current is None:
            raise SpecSyntaxError("entry before the first section", lineno, indent + 1, source)
        key, value = m.group(1), m.group(2).strip()
        if any(k == key for k, *_ in stanzas[current]):
            raise SpecSyntaxError(f"duplicate key {key!r}", lineno, indent + 1, source)
        stanzas[current].append((key, value, lineno, indent + m.start(2) + 1))
    return stanzas


def _literal(text: str, field: FieldDescriptor, line: int, col: int, source: str) -> FieldElement:
    try:
        return parse_element(text, field)
    except LiteralSyntaxError as exc:
        raise SpecSyntaxError(str(exc), line, col + exc.pos, source) from None


def _literal_list(text: str, field, line, col, source) -> tuple[FieldElement, ...]:
    out = []
    offset = 0
    for part in text.split(","):
        lead = len(part) - len(part.lstrip())
        if not part.strip():
            raise SpecSyntaxError("empty literal in list", line, col + offset, source)
        out.append(_literal(part.strip(), field, line, col + offset + lead, source))
        offset += len(part) + 1
    return tuple(out)


def _call(value: str, line: int, col: int, source: str) -> tuple[str, Optional[str], int]:
    m = _CALL.match(value)
    if not m:
        raise SpecSyntaxError(f"expected name or name(args), got {value!r}", line, col, source)
    args_col = col + (m.start(2) if m.group(2) is not None else 0)
    return m.group(1), m.group(2), args_col


def _parse_field(entries, source) -> FieldDescriptor:
    values = {k: (v, ln, c) for k, v, ln, c in entries}
    if "kind" not in values:
        raise SpecSyntaxError("[field] needs 'kind'", entries[0][2] if entries else 1, 1, source)

    def integer(key):
        if key not in values:
            raise SpecSyntaxError(f"[field] needs {key!r}", values["kind"][1], 1, source)
        v, ln, c = values[key]
        if not v.isdigit():
            raise SpecSyntaxError(f"{key} must be a positive integer", ln, c, source)
        return int(v)

    kind, ln, c = values["kind"]
    allowed = {"prime": {"p"}, "binary": {"k", "variables"}, "rationals": set(), "function_field": {"p", "variables"}}
    if kind not in allowed:
        raise SpecSyntaxError(f"unknown field kind {kind!r}", ln, c, source)
    for key, (_, kln, _) in values.items():
        if key != "kind" and key not in allowed[kind]:
            raise SpecSyntaxError(f"key {key!r} does not apply to kind {kind}", kln, 1, source)
    try:
        if kind == "prime":
            return prime_field(integer("p"))
        if kind == "rationals":
            return rationals()
        variables = tuple(x.strip() for x in values["variables"][0].split(",")) if "variables" in values else None
        if kind == "binary":
            return binary_field(integer("k"), variables[0] if variables else "w")
        if not variables:
            raise SpecSyntaxError("function_field needs 'variables'", ln, 1, source)
        return function_field(integer("p"), variables)
    except FieldError as exc:
        raise SpecSyntaxError(str(exc), ln, c, source) from None


def _parse_algebra(entries, field, source):
    keys = {k for k, *_ in entries}
    if "matrix" in keys:
        if len(entries) != 1:
            raise SpecSyntaxError("'matrix' excludes factor entries", entries[0][2], 1, source)
        _, v, ln, c = entries[0]
        if v not in ("2", "4"):
            raise SpecSyntaxError("matrix degree must be 2 or 4", ln, c, source)
        return int(v), ()
    factors = []
    for i, (key, v, ln, c) in enumerate(entries, 1):
        if key != f"factor{i}":
            raise SpecSyntaxError(f"expected 'factor{i}', got {key!r}", ln, 1, source)
        name, args, acol = _call(v, ln, c, source)
        if name not in FACTOR_SYMBOLS:
            raise SpecSyntaxError(f"unknown factor symbol {name!r}", ln, c, source)
        lits = _literal_list(args, field, ln, acol, source) if args is not None else ()
        if len(lits) != FACTOR_SYMBOLS[name]:
            raise SpecSyntaxError(f"{name} takes {FACTOR_SYMBOLS[name]} arguments", ln, c, source)
        factors.append((name, lits, ln))
    if len(factors) not in (1, 2):
        raise SpecSyntaxError("[algebra] needs 'matrix' or one or two factors", entries[0][2] if entries else 1, 1, source)
    return None, factors


def _parse_involution(entries, field, matrix_degree, factors, source):
    found = {k: (v, ln, c) for k, v, ln, c in entries}
    conj = ()
    if "conjugate" in found:
        v, ln, c = found.pop("conjugate")
        conj = _literal_list(v, field, ln, c, source)
        dim = (matrix_degree or 2 ** len(factors)) ** 2
        if len(conj) != dim:
            raise SpecSyntaxError(f"conjugate needs {dim} coordinates", ln, c, source)
    if matrix_degree is not None:
        if set(found) != {"global"}:
            raise SpecSyntaxError("a matrix algebra needs exactly 'global'", entries[0][2] if entries else 1, 1, source)
        v, ln, c = found["global"]
        name, args, acol = _call(v, ln, c, source)
        if name not in GLOBAL_INVOLUTIONS:
            raise SpecSyntaxError(f"unknown global involution {name!r}", ln, c, source)
        coeffs = _literal_list(args, field, ln, acol, source) if args is not None else ()
        if (name == "adjoint_diag") != bool(coeffs):
            raise SpecSyntaxError("adjoint_diag takes coefficients, transpose takes none", ln, c, source)
        return AlgebraSpec(field, matrix_degree=matrix_degree, global_involution=name, coefficients=coeffs), conj
    specs = []
    for i, (symbol, lits, fln) in enumerate(factors, 1):
        if f"factor{i}" not in found:
            raise SpecSyntaxError(f"missing involution for factor{i}", fln, 1, source)
        v, ln, c = found.pop(f"factor{i}")
        name, args, acol = _call(v, ln, c, source)
        if name not in FACTOR_INVOLUTIONS:
            raise SpecSyntaxError(f"unknown factor involution {name!r}", ln, c, source)
        params = _literal_list(args, field, ln, acol, source) if args is not None else ()
        need = {"canonical": 0, "t_alpha": 1, "int_gamma": 4}[name]
        if len(params) != need:
            raise SpecSyntaxError(f"{name} takes {need} arguments", ln, c, source)
        a, b = lits if lits else (None, None)
        specs.append(FactorSpec(symbol, a, b, name, params))
    if found:
        key = next(iter(found))
        raise SpecSyntaxError(f"unexpected key {key!r}", found[key][1], 1, source)
    return AlgebraSpec(field, tuple(specs)), conj


def parse_spec(text: str, source: str = "<spec>") -> InstanceSpec:
    stanzas = _read_stanzas(text, source)
    for name in SECTIONS:
        if name not in stanzas:
            raise SpecSyntaxError(f"missing section [{name}]", len(text.splitlines()) + 1, 1, source)
    field = _parse_field(stanzas["field"], source)
    degree, factors = _parse_algebra(stanzas["algebra"], field, source)
    algebra, conj = _parse_involution(stanzas["involution"], field, degree, factors, source)
    return InstanceSpec(algebra, conj)


def load_spec(path) -> InstanceSpec:
    path = Path(path)
    return parse_spec(path.read_text(), str(path))


def _join(xs) -> str:
    return ", ".join(str(x) for x in xs)


def format_spec(spec: InstanceSpec) -> str:
    f = spec.field
    lines = ["[field]", f"kind = {f.kind}"]
    if f.kind in ("prime", "function_field"):
        lines.append(f"p = {f.p}")
    if f.kind == "binary":
        lines.append(f"k = {f.k}")
    if f.variables:
        lines.append(f"variables = {', '.join(f.variables)}")
    alg = spec.algebra
    lines += ["", "[algebra]"]
    if alg.matrix_degree is not None:
        lines.append(f"matrix = {alg.matrix_degree}")
    for i, fac in enumerate(alg.factors, 1):
        args = f"({_join((fac.a, fac.b))})" if fac.symbol != "matrix" else ""
        lines.append(f"factor{i} = {fac.symbol}{args}")
    lines += ["", "[involution]"]
    if alg.matrix_degree is not None:
        args = f"({_join(alg.coefficients)})" if alg.coefficients else ""
        lines.append(f"global = {alg.global_involution}{args}")
    for i, fac in enumerate(alg.factors, 1):
        args = f"({_join(fac.params)})" if fac.params else ""
        lines.append(f"factor{i} = {fac.involution}{args}")
    if spec.conjugate:
        lines.append(f"conjugate = {_join(spec.conjugate)}")
    return "\n".join(lines) + "\n"


def build_instance(spec: InstanceSpec) -> Involution:
    """Build the involution described by ``spec`` (conjugated when requested)."""
    _, sigma = build_algebra(spec.algebra)
    if spec.conjugate:
        sigma = conjugate_by(sigma, spec.conjugate)
    return sigma


def conjugate_by(sigma: Involution, coords) -> Involution:
    a = AlgebraElement(sigma.algebra, [sigma.algebra.field(c) for c in coords])
    if invert(a) is None:
        raise AlgebraError("conjugating element is not invertible")
    return conjugate_involution(sigma, a)
