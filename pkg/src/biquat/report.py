"""Invariant reports: a flat ``key = value`` record plus a human rendering.

Every value is a string built from element literals, so a report can be
written, read back and compared exactly.  Keys, in order:

``version, seed, field, algebra, involution, type, discriminant,
decomposable, d, anchor_index, anchor_value, q_values, polar, q_plus,
q_minus, pfister, metabolic, criterion1..criterion4 (verdict), method1..4,
unit_square, isotropic_vector, idempotent, transpose_type``.

Verdicts are ``true``/``false``/``unknown``; absent data is ``none``.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from typing import Optional

from . import __version__
from .csalg import ORTHOGONAL, Involution
from .pfaffian import PfaffianPackage, is_metabolic, pfaffian_package, pfister_invariant, transpose_type_test

NONE = "none"


class ReportFormatError(ValueError):
    pass


def verdict_text(v: Optional[bool]) -> str:
    return "unknown" if v is None else ("true" if v else "false")


def _elements(xs) -> str:
    return ", ".join(str(x) for x in xs)


def _vector(x) -> str:
    return NONE if x is None else _elements(x.coords)


@dataclass(frozen=True)
class InvariantReport:
    version: str
    seed: str
    field: str
    algebra: str
    involution: str
    type: str
    discriminant: str
    decomposable: str
    d: str
    anchor_index: str
    anchor_value: str
    q_values: str
    polar: str
    q_plus: str
    q_minus: str
    pfister: str
    metabolic: str
    criterion1: str
    criterion2: str
    criterion3: str
    criterion4: str
    method1: str
    method2: str
    method3: str
    method4: str
    unit_square: str
    isotropic_vector: str
    idempotent: str
    transpose_type: str

    def to_flat(self) -> str:
        return "".join(f"{f.name} = {getattr(self, f.name)}\n" for f in fields(self))

    @classmethod
    def from_flat(cls, text: str) -> "InvariantReport":
        values = {}
        for n, line in enumerate(text.splitlines(), 1):
            if not line.strip():
                continue
            key, sep, value = line.partition(" = ")
            if not sep:
                raise ReportFormatError(f"line {n}: expected 'key = value'")
            if key in values:
                raise ReportFormatError(f"line {n}: duplicate key {key!r}")
            values[key] = value
        names = [f.name for f in fields(cls)]
        missing = [k for k in names if k not in values]
        extra = [k for k in values if k not in names]
        if missing or extra:
            raise ReportFormatError(f"missing keys {missing}, unexpected keys {extra}")
        return cls(**values)

    def to_text(self) -> str:
        lines = [
            f"algebra      {self.algebra} over {self.field}",
            f"involution   {self.involution} ({self.type})",
            f"disc         {self.discriminant}   decomposable: {self.decomposable}",
            f"pfaffian     sign fixed at basis element {self.anchor_index}: q(e{self.anchor_index}) = {self.anchor_value}",
            f"             q(e_i) = {self.q_values}",
        ]
        if self.decomposable == "true":
            lines += [f"q+           {self.q_plus}", f"q-           {self.q_minus}"]
            if self.pfister != NONE:
                lines.append(f"Pf           {self.pfister}")
        lines.append(f"metabolic    {self.metabolic}")
        for k in range(1, 5):
            lines.append(f"  ({k}) {getattr(self, f'criterion{k}'):7s} {getattr(self, f'method{k}')}")
        if self.unit_square != NONE:
            lines.append(f"  u with u^2 = 1: ({self.unit_square})")
        lines.append(f"transpose    {self.transpose_type}")
        return "\n".join(lines) + "\n"


def build_report(sigma: Involution, seed: int = 0, pkg: Optional[PfaffianPackage] = None) -> InvariantReport:
    """Run the whole pipeline on ``sigma`` and collect the results."""
    if sigma.type != ORTHOGONAL:
        raise ValueError("orthogonal involution required")
    pkg = pkg or pfaffian_package(sigma, seed=seed)
    field = pkg.field
    split = pkg.d.is_one()
    cert = is_metabolic(pkg, seed=seed)
    crit = dict(cert.criteria)
    pf = NONE
    tt = "none"
    if split:
        if field.characteristic == 2:
            pf = str(pfister_invariant(pkg))
        tt = verdict_text(transpose_type_test(pkg))
    polar = "; ".join(_elements(row) for row in pkg.polar_matrix)
    return InvariantReport(
        version=__version__,
        seed=str(seed),
        field=field.name,
        algebra=pkg.algebra.label,
        involution=sigma.label,
        type=sigma.type,
        discriminant=str(pkg.d),
        decomposable=verdict_text(split),
        d=str(pkg.d),
        anchor_index=str(pkg.anchor.index + 1),
        anchor_value=str(pkg.anchor.value),
        q_values=_elements(pkg.q_values),
        polar=polar,
        q_plus=str(pkg.q_plus) if split else NONE,
        q_minus=str(pkg.q_minus) if split else NONE,
        pfister=pf,
        metabolic=verdict_text(cert.verdict),
        criterion1=verdict_text(crit[1].verdict),
        criterion2=verdict_text(crit[2].verdict),
        criterion3=verdict_text(crit[3].verdict),
        criterion4=verdict_text(crit[4].verdict),
        method1=crit[1].method,
        method2=crit[2].method,
        method3=crit[3].method,
        method4=crit[4].method,
        unit_square=_vector(cert.unit_square),
        isotropic_vector=_vector(cert.isotropic_vector),
        idempotent=_vector(cert.idempotent),
        transpose_type=tt,
    )
