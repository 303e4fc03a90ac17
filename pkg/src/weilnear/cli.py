"""The ``weilnear`` command: validate problem files, run identity suites,
evaluate brackets.

Exit codes: 0 all requested checks pass; 1 a validated invariant or a
sampled identity fails exactly; 2 parse or structural errors (bad syntax,
unresolved names, degenerate solves, empty sample sets).  Reports are
deterministic: the same file, seed and sample count produce byte-identical
JSON.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import (AlgebraError, DegenerateFormError, ParseError,
                     ProblemError, StructureError, WeilnearError)
from .jacobi import advisory_jacobi_check, lcs_bracket, prolong_jacobi
from .parsing import as_base_poly, eval_expression
from .problemfile import ProblemFile, load_problem
from .suites import VerifyContext, run_suites
from .weil import validate_local

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_STRUCTURAL = 2


def _emit(report: dict, args) -> None:
    if getattr(args, "json", None):
        payload = json.dumps(report, sort_keys=True, indent=2) + "\n"
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(payload)


def _say(args, message: str) -> None:
    if not getattr(args, "quiet", False):
        print(message)


def _algebra_info(alg) -> dict:
    return {"dim": alg.dim, "height": alg.height, "labels": list(alg.labels)}


def _load(args):
    try:
        return load_problem(args.file), None
    except (ParseError, ProblemError) as exc:
        return None, ("parse", str(exc))
    except (AlgebraError, StructureError) as exc:
        return None, ("invalid", str(exc))
    except DegenerateFormError as exc:
        return None, ("degenerate", str(exc))
    except OSError as exc:
        return None, ("parse", str(exc))


# ---------------------------------------------------------------------------
# validate
# ---------------------------------------------------------------------------

def cmd_validate(args) -> int:
    report = {"command": "validate", "file": os.path.basename(args.file),
              "status": "fail", "algebra": None, "structure": None,
              "advisories": [], "error": None}
    pf, err = _load(args)
    if err is not None:
        kind, message = err
        report["error"] = message
        _emit(report, args)
        _say(args, f"validate: {message}")
        return EXIT_STRUCTURAL if kind == "parse" else EXIT_FAIL

    cert = validate_local(pf.algebra)  # re-check, not just construction
    report["algebra"] = _algebra_info(pf.algebra)
    report["algebra"]["checked"] = list(cert.checked)
    report["structure"] = pf.structure_kind
    if pf.lcs is not None and not pf.lcs.alpha_closed:
        report["advisories"].append(
            "alpha is not closed; transported identities may fail")
    if pf.jacobi_data is not None:
        adv = advisory_jacobi_check(pf.jacobi_data, pf.seed, min(pf.samples, 25))
        if not adv.passed:
            report["advisories"].append(
                "base (Lambda, E) fails sampled Jacobi identity: "
                + json.dumps(adv.counterexample, sort_keys=True))
    report["status"] = "pass"
    _emit(report, args)
    _say(args, f"validate: ok (dim {pf.algebra.dim}, height {pf.algebra.height}"
               f", structure {pf.structure_kind or 'none'})")
    for note in report["advisories"]:
        _say(args, f"  advisory: {note}")
    return EXIT_PASS


# ---------------------------------------------------------------------------
# check
# ---------------------------------------------------------------------------

def cmd_check(args) -> int:
    report = {"command": "check", "file": os.path.basename(args.file),
              "status": "fail", "algebra": None, "structure": None,
              "suite": args.suite, "seed": None, "samples": None,
              "suites": [], "error": None}
    pf, err = _load(args)
    if err is not None:
        kind, message = err
        report["error"] = message
        _emit(report, args)
        _say(args, f"check: {message}")
        return EXIT_STRUCTURAL if kind in ("parse", "degenerate") else EXIT_FAIL

    seed = args.seed if args.seed is not None else pf.seed
    samples = args.samples if args.samples is not None else pf.samples
    if samples < 1:
        report["error"] = "empty sample set rejected (need samples >= 1)"
        _emit(report, args)
        _say(args, f"check: {report['error']}")
        return EXIT_STRUCTURAL
    report["seed"] = seed
    report["samples"] = samples
    report["algebra"] = _algebra_info(pf.algebra)
    report["structure"] = pf.structure_kind

    suites = [args.suite] if args.suite else (pf.checks or ["all"])
    ctx = VerifyContext(algebra=pf.algebra, n=pf.n, seed=seed, samples=samples,
                        lcs=pf.lcs, jacobi_data=pf.jacobi_data,
                        named_ops=pf.diffops)
    try:
        suite_reports = run_suites(ctx, suites)
    except ProblemError as exc:
        report["error"] = str(exc)
        _emit(report, args)
        _say(args, f"check: {exc}")
        return EXIT_STRUCTURAL
    except DegenerateFormError as exc:
        report["error"] = f"structural: {exc}"
        _emit(report, args)
        _say(args, f"check: structural error: {exc}")
        return EXIT_STRUCTURAL

    report["suites"] = [sr.to_json() for sr in suite_reports]
    all_pass = all(sr.passed for sr in suite_reports)
    report["status"] = "pass" if all_pass else "fail"
    _emit(report, args)
    for sr in suite_reports:
        for r in sr.results:
            mark = "pass" if r.passed else "FAIL"
            _say(args, f"  [{mark}] {sr.suite}/{r.identity} ({r.samples} samples)")
            if not r.passed:
                _say(args, f"         counterexample: "
                           f"{json.dumps(r.counterexample, sort_keys=True)}")
    _say(args, f"check: {report['status'].upper()} "
               f"(seed {seed}, samples {samples})")
    return EXIT_PASS if all_pass else EXIT_FAIL


# ---------------------------------------------------------------------------
# bracket
# ---------------------------------------------------------------------------

def cmd_bracket(args) -> int:
    report = {"command": "bracket", "file": os.path.basename(args.file),
              "F": args.F, "G": args.G, "result": None, "base_result": None,
              "error": None}
    pf, err = _load(args)
    if err is not None:
        _kind, message = err
        report["error"] = message
        _emit(report, args)
        _say(args, f"bracket: {message}")
        return EXIT_STRUCTURAL

    ctx = pf.expr_context()
    try:
        f_val = eval_expression(args.F, ctx, want="apoly")
        g_val = eval_expression(args.G, ctx, want="apoly")
        if pf.lcs is not None:
            br = lcs_bracket(pf.lcs)
            base = pf.lcs.base_bracket if pf.lcs.constant_omega else None
        elif pf.jacobi_data is not None:
            br = prolong_jacobi(pf.jacobi_data, pf.algebra)
            base = pf.jacobi_data.base_bracket
        else:
            report["error"] = "problem file has no structure section"
            _emit(report, args)
            _say(args, f"bracket: {report['error']}")
            return EXIT_STRUCTURAL
        value = br(f_val, g_val, verify=True)
    except (ParseError, ProblemError) as exc:
        report["error"] = str(exc)
        _emit(report, args)
        _say(args, f"bracket: {exc}")
        return EXIT_STRUCTURAL
    except DegenerateFormError as exc:
        report["error"] = f"structural: {exc}"
        _emit(report, args)
        _say(args, f"bracket: structural error: {exc}")
        return EXIT_STRUCTURAL

    report["result"] = str(value)
    _say(args, str(value))
    f_base, g_base = as_base_poly(f_val), as_base_poly(g_val)
    if base is not None and f_base is not None and g_base is not None:
        base_value = base(f_base, g_base)
        report["base_result"] = str(base_value)
        _say(args, f"base bracket: {base_value}")
    _emit(report, args)
    return EXIT_PASS


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weilnear",
        description="Exact verification of near-point calculus identities.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser("validate", help="validate a problem file")
    p_validate.add_argument("file")
    p_validate.add_argument("--json", help="write a JSON report to this path")
    p_validate.add_argument("--quiet", action="store_true")
    p_validate.set_defaults(func=cmd_validate)

    p_check = sub.add_parser("check", help="run identity suites")
    p_check.add_argument("file")
    p_check.add_argument("--suite",
                         choices=["prop1", "lie-rinehart", "jacobi-axioms",
                                  "prolongation", "all"],
                         help="suite to run (default: the file's checks list)")
    p_check.add_argument("--seed", type=int, help="override the file's seed")
    p_check.add_argument("--samples", type=int,
                         help="override the file's sample count")
    p_check.add_argument("--json", help="write a JSON report to this path")
    p_check.add_argument("--quiet", action="store_true")
    p_check.set_defaults(func=cmd_check)

    p_bracket = sub.add_parser("bracket",
                               help="evaluate the structure bracket {F, G}")
    p_bracket.add_argument("file")
    p_bracket.add_argument("F")
    p_bracket.add_argument("G")
    p_bracket.add_argument("--json", help="write a JSON report to this path")
    p_bracket.add_argument("--quiet", action="store_true")
    p_bracket.set_defaults(func=cmd_bracket)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except WeilnearError as exc:  # anything not mapped by the command
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STRUCTURAL


if __name__ == "__main__":
    sys.exit(main())
