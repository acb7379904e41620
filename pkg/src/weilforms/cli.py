"""Command-line surface.

Subcommands: ``algebra info FILE``, ``eval EXPRFILE --algebra FILE
--point FILE``, ``d FORMFILE --cube FILE [--full]`` and ``verify``.
Exit codes: 0 ok, 1 verification failure, 2 input error, 3 internal
assertion (homogeneity).  All numeric output uses 17 significant digits
so round trips are lossless, and identical inputs produce byte-identical
output.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .algebra import (
    algebra_for,
    element_to_doc,
    element_from_doc,
    presentation_from_doc,
)
from .forms import (
    HomogeneityError,
    classical_form_from_doc,
    classical_to_microcube,
    exterior_derivative,
    homogeneity_residual,
    stokes_sum,
)
from .microcube import microcube_from_doc
from .oracle import run_suite
from .parser import ParseError, parse_expression
from .prolongation import WeilPoint, eval_over_weil

__all__ = ["main", "entry_point"]

OK, VERIFY_FAILED, INPUT_ERROR, ASSERTION_FAILED = 0, 1, 2, 3


def _fmt(value: float) -> str:
    return f"{float(value):.17g}"


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise _InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise _InputError(f"{path} is not valid JSON: {exc}") from None


def _load_text(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _InputError(f"cannot read {path}: {exc}") from None


class _InputError(Exception):
    pass


def _cmd_algebra_info(args) -> int:
    doc = _load_json(args.file)
    presentation = presentation_from_doc(doc)
    alg = algebra_for(presentation)
    names = ", ".join(alg.monomial_str(e) for e in alg.basis)
    print(f"dim {alg.dim}, basis {names}, nilpotency {alg.nilpotency_index}")
    return OK


def _cmd_eval(args) -> int:
    expr = parse_expression(_load_text(args.exprfile))
    alg = algebra_for(presentation_from_doc(_load_json(args.algebra)))
    point_doc = _load_json(args.point)
    if not isinstance(point_doc, dict) or "coords" not in point_doc:
        raise _InputError("point document needs a 'coords' list")
    coords = []
    for entry in point_doc["coords"]:
        if isinstance(entry, (int, float)):
            coords.append(alg.scalar(float(entry)))
        else:
            coords.append(element_from_doc(alg, entry))
    value = eval_over_weil(expr, WeilPoint(alg, coords))
    print(json.dumps(element_to_doc(value), sort_keys=True))
    return OK


def _cmd_d(args) -> int:
    form = classical_form_from_doc(_load_json(args.formfile))
    cube = microcube_from_doc(_load_json(args.cube))
    if cube.dimension != form.dim:
        raise _InputError(
            f"dimension mismatch: form lives on R^{form.dim}, microcube on R^{cube.dimension}"
        )
    if cube.degree != form.degree + 1:
        raise _InputError(
            f"degree mismatch: form of degree {form.degree} needs a microcube "
            f"of degree {form.degree + 1}, got {cube.degree}"
        )
    omega = classical_to_microcube(form)
    values = exterior_derivative(omega)(cube)
    print("d-value: " + " ".join(_fmt(v.augmentation) for v in values))
    if args.full:
        total = stokes_sum(omega, cube)
        alg = cube.algebra
        for idx, e in enumerate(alg.basis):
            row = [c.coeffs[idx] for c in total.coords]
            if any(v != 0.0 for v in row):
                key = ",".join(str(x) for x in e)
                print(f"R[{key}]: " + " ".join(_fmt(v) for v in row))
        print(f"residual: {_fmt(homogeneity_residual(total, cube.degree))}")
    return OK


def _cmd_verify(args) -> int:
    law_names = None
    if args.laws:
        law_names = [name.strip() for name in args.laws.split(",") if name.strip()]
    try:
        reports = run_suite(
            law_names=law_names,
            seed=args.seed,
            samples=args.samples,
            tolerance=args.tolerance,
        )
    except ValueError as exc:
        raise _InputError(str(exc)) from None
    lines = "".join(report.to_json_line() + "\n" for report in reports)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(lines)
    else:
        sys.stdout.write(lines)
    return OK if all(r.passed for r in reports) else VERIFY_FAILED


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weilforms",
        description="Weil-algebra arithmetic and microcube differential forms",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    algebra = sub.add_parser("algebra", help="algebra inspection")
    algebra_sub = algebra.add_subparsers(dest="algebra_command", required=True)
    info = algebra_sub.add_parser("info", help="dimension, basis and nilpotency")
    info.add_argument("file", help="presentation JSON document")
    info.set_defaults(handler=_cmd_algebra_info)

    ev = sub.add_parser("eval", help="evaluate an expression over a Weil algebra")
    ev.add_argument("exprfile", help="text file with one expression")
    ev.add_argument("--algebra", required=True, help="presentation JSON document")
    ev.add_argument("--point", required=True, help="point JSON document")
    ev.set_defaults(handler=_cmd_eval)

    d = sub.add_parser("d", help="geometric exterior derivative at a microcube")
    d.add_argument("formfile", help="classical form JSON document")
    d.add_argument("--cube", required=True, help="microcube JSON document")
    d.add_argument("--full", action="store_true", help="print the face-sum table and residual")
    d.set_defaults(handler=_cmd_d)

    verify = sub.add_parser("verify", help="run the registered law suite")
    verify.add_argument("--seed", type=int, default=42)
    verify.add_argument("--samples", type=int, default=100)
    verify.add_argument("--tolerance", type=float, default=1e-8)
    verify.add_argument("--laws", default=None, help="comma-separated law names")
    verify.add_argument("--output", default=None, help="write JSON lines here instead of stdout")
    verify.set_defaults(handler=_cmd_verify)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except _InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except (ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except HomogeneityError as exc:
        print(f"assertion failed: {exc}", file=sys.stderr)
        return ASSERTION_FAILED


def entry_point():
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
