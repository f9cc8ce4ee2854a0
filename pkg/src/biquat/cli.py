"""Command line: ``biquat {invariants, compare, verify, reproduce-example}``.

Exit codes: 0 success, 2 parse error, 3 validation error, 4 failed theorem
check or example reproduction.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .csalg import ORTHOGONAL, AlgebraError
from .example import reproduce_example
from .exactfield import FieldError, LiteralSyntaxError, field_from_name, parse_element
from .pfaffian import MetabolicDisagreement, PfaffianError, compare_involutions, pfaffian_package
from .quadform import FormError
from .report import build_report
from .specfile import SpecSyntaxError, build_instance, conjugate_by, load_spec
from .verify import VerifyConfig, format_summary, run_verification

EXIT_OK, EXIT_PARSE, EXIT_VALIDATION, EXIT_THEOREM = 0, 2, 3, 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _seed(args) -> int:
    env = os.environ.get("PFAFF_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise CliError(f"PFAFF_SEED must be an integer, got {env!r}", EXIT_PARSE) from None
    return args.seed


def _load(path: str):
    try:
        spec = load_spec(path)
    except OSError as exc:
        raise CliError(f"{path}: {exc.strerror}", EXIT_PARSE) from None
    except SpecSyntaxError as exc:
        raise CliError(str(exc), EXIT_PARSE) from None
    try:
        sigma = build_instance(spec)
    except (AlgebraError, FieldError, ZeroDivisionError) as exc:
        raise CliError(f"{path}: {exc}", EXIT_VALIDATION) from None
    if sigma.type != ORTHOGONAL:
        raise CliError(f"{path}: orthogonal involution required (got {sigma.type})", EXIT_VALIDATION)
    return spec, sigma


def _package(sigma, seed, path):
    try:
        return pfaffian_package(sigma, seed=seed)
    except (PfaffianError, AlgebraError) as exc:
        raise CliError(f"{path}: {exc}", EXIT_VALIDATION) from None


def cmd_invariants(args) -> int:
    seed = _seed(args)
    _, sigma = _load(args.file)
    pkg = _package(sigma, seed, args.file)
    try:
        report = build_report(sigma, seed=seed, pkg=pkg)
    except (PfaffianError, FormError, MetabolicDisagreement) as exc:
        raise CliError(f"{args.file}: {exc}", EXIT_VALIDATION) from None
    flat = report.to_flat()
    if args.output:
        Path(args.output).write_text(flat)
    print(flat if args.machine else report.to_text(), end="")
    return EXIT_OK


def cmd_compare(args) -> int:
    seed = _seed(args)
    spec_a, sigma_a = _load(args.file_a)
    spec_b, sigma_b = _load(args.file_b)
    if spec_a.field != spec_b.field:
        raise CliError(f"fields differ: {spec_a.field.name} vs {spec_b.field.name}", EXIT_VALIDATION)
    if args.conjugate:
        try:
            coords = [parse_element(x.strip(), spec_b.field) for x in args.conjugate.split(",")]
        except LiteralSyntaxError as exc:
            raise CliError(f"--conjugate: {exc}", EXIT_PARSE) from None
        if len(coords) != sigma_b.algebra.dim:
            raise CliError(f"--conjugate needs {sigma_b.algebra.dim} coordinates", EXIT_PARSE)
        try:
            sigma_b = conjugate_by(sigma_b, coords)
        except AlgebraError as exc:
            raise CliError(f"--conjugate: {exc}", EXIT_VALIDATION) from None
    pkg_a = _package(sigma_a, seed, args.file_a)
    pkg_b = _package(sigma_b, seed, args.file_b)
    try:
        result = compare_involutions(pkg_a, pkg_b)
    except PfaffianError as exc:
        raise CliError(str(exc), EXIT_VALIDATION) from None
    print(f"verdict = {result.verdict}")
    for line in result.evidence:
        print(f"evidence = {line}")
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        field = field_from_name(args.field)
    except FieldError as exc:
        raise CliError(str(exc), EXIT_PARSE) from None
    if args.trials < 0:
        raise CliError("--trials must be nonnegative", EXIT_PARSE)
    config = VerifyConfig(field, args.trials, _seed(args))
    tallies = run_verification(config)
    print(format_summary(config, tallies))
    return EXIT_THEOREM if any(t.failed for t in tallies.values()) else EXIT_OK


def cmd_reproduce_example(args) -> int:
    result = reproduce_example(seed=_seed(args))
    print(result.text(), end="")
    return EXIT_OK if result.ok else EXIT_THEOREM


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="biquat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="pfaffian, alt+-, Pfister invariant and metabolicity of one instance")
    p.add_argument("file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--machine", action="store_true", help="print the flat key = value report")
    p.add_argument("--output", help="also write the flat report to this file")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("compare", help="decide whether two instances are isomorphic")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--conjugate", metavar="LITERAL-VECTOR", help="conjugate the second involution by this element")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("verify", help="seeded property checks over random instances")
    p.add_argument("--field", required=True, help="Q, Fp:P, F2k:K, Fpt:P:VARS (or F5, F4, F2st, ...)")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reproduce-example", help="T_s (x) T_t versus T_(s+1) (x) T_t over F2(s,t)")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_reproduce_example)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
