"""Command line front end: ``tto {gen,check,verify,crofoot,matrix}``.

Exit codes: 0 all pass, 1 identity/suite defect, 2 classifier/oracle
disagreement, 3 commutator defect in the ambiguous band, 64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time

import numpy as np

from . import __version__
from .circle import CircleGrid, FourierSeries
from .disk import BlaschkeProduct, MobiusTransform, mobius_compose
from .instances import CONSTRUCTIONS, SCHEMA, Instance, generate_instance
from .model_space import TMBasis, crofoot_matrix
from .normality import classify_normal, commutator_defect
from .operators import TTOMatrix, build_tto, build_tto_series, tto_membership
from .suites import SUITES, TOLERANCES, run_suite

EXIT_OK, EXIT_DEFECT, EXIT_DISAGREE, EXIT_AMBIGUOUS, EXIT_USAGE = 0, 1, 2, 3, 64
NORMAL_TOL = 1e-8
SEPARATION = 1e-4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser, suppress: bool):
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--seed", type=int, default=default(0), help="root seed (u64)")
    p.add_argument("--grid", type=int, default=default(None), help="grid size (power of two)")
    p.add_argument("--tol", type=float, default=default(1e-8), help="classifier match tolerance")
    p.add_argument("--out", default=default(None), help="output path (default stdout)")
    p.add_argument("--format", choices=("json", "csv"), default=default("json"))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tto", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"tto {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    _common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="generate a seeded instance")
    _common(p, suppress=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--construction", choices=CONSTRUCTIONS, default="random")
    p.add_argument("--alpha-angle", type=float, default=None)
    p.add_argument("--epsilon", type=float, default=0.1)
    p.add_argument("--zeros-at-origin", action="store_true")

    p = sub.add_parser("check", help="classify instances and compare with the commutator oracle")
    _common(p, suppress=True)
    p.add_argument("instances", nargs="+", help="instance JSON files ('-' for stdin)")

    p = sub.add_parser("verify", help="run verification suites")
    _common(p, suppress=True)
    p.add_argument("--suite", action="append", choices=sorted(SUITES) + ["all"])
    p.add_argument("--trials", type=int, default=None)

    p = sub.add_parser("crofoot", help="apply the Crofoot transform")
    _common(p, suppress=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--instance", help="instance JSON file")
    src.add_argument("--theta", help="Blaschke product JSON (inline or file)")
    where = p.add_mutually_exclusive_group(required=True)
    where.add_argument("--a", type=complex, help="Mobius parameter, e.g. 0.3+0.1j")
    where.add_argument("--to-origin", action="store_true", help="use a = theta(0)")

    p = sub.add_parser("matrix", help="dump a TTO matrix")
    _common(p, suppress=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--instance", help="instance JSON file")
    src.add_argument("--theta", help="Blaschke product JSON (with --symbol)")
    p.add_argument("--symbol", help="FourierSeries JSON of the symbol (inline or file)")
    p.add_argument("--matrix-out", help="path for the matrix (overrides --out)")
    return parser


def _load(text: str):
    if text == "-":
        return json.load(sys.stdin)
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return json.loads(text)
    with open(text) as fh:
        return json.load(fh)


def _grid(args) -> CircleGrid | None:
    if args.grid is None:
        return None
    try:
        return CircleGrid(args.grid)
    except ValueError as exc:
        raise UsageError(str(exc))


def _emit(args, payload, rows=None, path=None):
    path = path or args.out
    if args.format == "csv" and rows is not None:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        text = buf.getvalue()
    elif isinstance(payload, str):
        text = payload
    else:
        text = json.dumps(payload, sort_keys=True) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _header(kind: str, args) -> dict:
    return {"schema": SCHEMA, "type": kind, "tool_version": __version__,
            "tolerances": {"classifier": args.tol, "normal": NORMAL_TOL, "separation": SEPARATION}}


def cmd_gen(args) -> int:
    try:
        inst = generate_instance(args.degree, args.seed, args.construction,
                                 alpha_angle=args.alpha_angle, epsilon=args.epsilon,
                                 zeros_at_origin=args.zeros_at_origin, grid_size=args.grid)
    except ValueError as exc:
        raise UsageError(str(exc))
    _emit(args, inst.dumps() + "\n")
    return EXIT_OK


def check_instance(inst: Instance, tol: float = 1e-8) -> dict:
    start = time.perf_counter()
    verdict = classify_normal(inst.symbol, tol)
    defect = commutator_defect(build_tto(inst.basis, inst.symbol))
    verdict.commutator_defect = defect
    ambiguous = NORMAL_TOL <= defect <= SEPARATION
    agree = verdict.is_normal == (defect < NORMAL_TOL)
    return {
        "seed": inst.seed,
        "degree": inst.degree,
        "construction": inst.construction,
        "kind": verdict.kind,
        "alpha": None if verdict.alpha is None else [verdict.alpha.real, verdict.alpha.imag],
        "residual_a": verdict.residual_a,
        "residual_b": verdict.residual_b,
        "commutator_defect": defect,
        "agree": agree,
        "ambiguous": ambiguous,
        "elapsed": time.perf_counter() - start,
    }


def cmd_check(args) -> int:
    rows = [check_instance(Instance.from_json(_load(p)), args.tol) for p in args.instances]
    report = _header("check", args)
    report["rows"] = rows
    report["summary"] = {"instances": len(rows),
                         "disagreements": sum(not r["agree"] for r in rows),
                         "ambiguous": sum(r["ambiguous"] for r in rows)}
    csv_rows = [{k: (json.dumps(v) if isinstance(v, list) or v is None else v) for k, v in r.items()}
                for r in rows]
    _emit(args, report, csv_rows)
    if report["summary"]["ambiguous"]:
        return EXIT_AMBIGUOUS
    if report["summary"]["disagreements"]:
        return EXIT_DISAGREE
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.trials is not None and args.trials < 1:
        raise UsageError("--trials must be >= 1")
    names = args.suite or ["all"]
    if "all" in names:
        names = list(SUITES)
    results = [run_suite(n, args.trials, args.seed) for n in names]
    report = _header("verify", args)
    report["seed"] = args.seed
    report["suite_tolerances"] = TOLERANCES
    report["suites"] = [r.to_json() for r in results]
    report["passed"] = all(r.passed for r in results)
    report["elapsed"] = round(sum(r.elapsed for r in results), 4)
    rows = [{"suite": r.name, "trials": r.trials, "max_defect": r.max_defect,
             "passed": r.passed, "failing_seeds": " ".join(str(f["seed"]) for f in r.failures)}
            for r in results]
    _emit(args, report, rows)
    if report["passed"]:
        return EXIT_OK
    if any(not r.passed for r in results if r.name == "classify"):
        return EXIT_DISAGREE
    return EXIT_DEFECT


def cmd_crofoot(args) -> int:
    if args.instance:
        inst = Instance.from_json(_load(args.instance))
        basis, theta = inst.basis, inst.theta
    else:
        inst = None
        theta = BlaschkeProduct.from_json(_load(args.theta))
        basis = TMBasis(theta, _grid(args))
    a = complex(theta(0)) if args.to_origin else args.a
    if not abs(a) < 1:
        raise UsageError(f"|a| must be < 1, got {abs(a)}")
    u = MobiusTransform(a)
    composed = mobius_compose(theta, u)
    J, target = crofoot_matrix(basis, u, TMBasis(composed, basis.grid))
    report = _header("crofoot", args)
    report.update({
        "a": [a.real, a.imag],
        "theta": theta.to_json(),
        "composed_theta": composed.to_json(),
        "composed_theta_ref": composed.ref,
        "composed_at_origin": abs(composed(0)),
        "unitarity_defect": float(np.max(np.abs(J.conj().T @ J - np.eye(basis.dim)))),
    })
    status = EXIT_OK
    if inst is not None:
        A = build_tto(basis, inst.symbol).entries
        B = J @ A @ J.conj().T
        residual, _ = tto_membership(B, target)
        report["seed"] = inst.seed
        report["matrix"] = TTOMatrix(B, composed.ref).to_json()["entries"]
        report["membership_residual"] = residual
        report["commutator_defect_before"] = commutator_defect(A)
        report["commutator_defect_after"] = commutator_defect(B)
        if residual > TOLERANCES["crofoot_membership"]:
            status = EXIT_DEFECT
    if report["unitarity_defect"] > TOLERANCES["crofoot_isometry"]:
        status = EXIT_DEFECT
    _emit(args, report)
    return status


def cmd_matrix(args) -> int:
    if args.instance:
        inst = Instance.from_json(_load(args.instance))
        M = build_tto(inst.basis, inst.symbol)
    else:
        if not args.symbol:
            raise UsageError("--theta needs --symbol")
        theta = BlaschkeProduct.from_json(_load(args.theta))
        basis = TMBasis(theta, _grid(args))
        M = build_tto_series(basis, FourierSeries.from_json(_load(args.symbol)))
    path = args.matrix_out or args.out
    if args.format == "csv":
        _emit(args, M.to_csv(), path=path)
    else:
        _emit(args, M.to_json(), path=path)
    return EXIT_OK


COMMANDS = {"gen": cmd_gen, "check": cmd_check, "verify": cmd_verify,
            "crofoot": cmd_crofoot, "matrix": cmd_matrix}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"tto {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"tto {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
