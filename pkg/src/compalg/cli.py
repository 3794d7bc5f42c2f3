"""Command-line interface: build, analyze, classify, canonicalize, compare
and enumerate algebras, plus a deterministic verification suite.

Exit codes: 0 on success, 1 on verification failure (or an operation that
could not complete), 2 on bad usage.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import algebra as al
from . import classify as cl
from . import verify as vf
from .errors import CompalgError
from .numerics import DEFAULT_SEED, TolerancePolicy


def _tolerance(args):
    if getattr(args, "tol", None):
        t = float(args.tol)
        return TolerancePolicy(rank_tol=t, eq_tol=t, zero_tol=t)
    return TolerancePolicy()


def _load_algebra(path):
    with open(path) as fh:
        return al.from_json(json.load(fh))


def _dump(obj, path):
    text = json.dumps(obj, indent=2)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _cmd_build(args):
    params = json.loads(args.params) if args.params else {}
    if args.degrees:
        for key in ("alpha", "beta"):
            if key in params:
                params[key] = float(params[key]) * np.pi / 180.0
    algebra = al.from_family(args.family, params)
    _dump(algebra.to_json(), args.output)
    return 0


def _cmd_analyze(args):
    algebra = _load_algebra(args.file)
    report = cl.analyze(algebra, _tolerance(args), args.seed)
    _dump(report.to_json(), args.output)
    return 0


def _cmd_classify(args):
    algebra = _load_algebra(args.file)
    tol = _tolerance(args)
    report = cl.analyze(algebra, tol, args.seed)
    out = report.to_json()
    try:
        form = cl.canonical(algebra, tol, args.seed)
        out["canonical"] = form.to_json()
    except CompalgError as err:
        out["canonical"] = None
        out["canonical_error"] = str(err)
    _dump(out, args.output)
    return 0


def _cmd_canon(args):
    algebra = _load_algebra(args.file)
    try:
        form = cl.canonical(algebra, _tolerance(args), args.seed)
    except CompalgError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    _dump(form.to_json(), args.output)
    return 0


def _cmd_iso(args):
    a = _load_algebra(args.file_a)
    b = _load_algebra(args.file_b)
    verdict = cl.isomorphic(a, b, _tolerance(args), args.seed)
    if verdict.verdict == "yes":
        print("isomorphic")
        if args.witness_out and verdict.witness is not None:
            _dump(verdict.witness.to_json(), args.witness_out)
    elif verdict.verdict == "no":
        print(f"not isomorphic: {verdict.reason}")
    else:
        print(f"unknown: {verdict.reason}")
    return 0


def _cmd_enumerate(args):
    tol = _tolerance(args)
    rows = [form.to_json() for form in cl.enumerate_block(args.block, args.grid, tol, args.seed)]
    if args.format == "csv":
        cols = sorted({key for row in rows for key in row if not isinstance(row[key], (dict, list))})
        lines = [",".join(cols)]
        for row in rows:
            lines.append(",".join(str(row.get(c, "")) for c in cols))
        text = "\n".join(lines)
        if args.output:
            with open(args.output, "w") as fh:
                fh.write(text + "\n")
        else:
            print(text)
    else:
        stream = sys.stdout if not args.output else open(args.output, "w")
        try:
            for row in rows:
                stream.write(json.dumps(row) + "\n")
        finally:
            if args.output:
                stream.close()
    return 0


def _cmd_verify(args):
    results = vf.verify_suite(seed=args.seed, fast=args.fast)
    failures = 0
    for name, passed, detail in results:
        status = "PASS" if passed else "FAIL"
        suffix = f"  ({detail})" if detail else ""
        print(f"{status}  {name}{suffix}")
        failures += 0 if passed else 1
    total = len(results)
    print(f"{total - failures}/{total} checks passed")
    return 0 if failures == 0 else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="compalg",
        description="Construct, analyze, canonicalize and classify real division "
                    "composition algebras with non-abelian derivation algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED,
                       help="seed for every randomized step (default 0xC0FFEE)")
        p.add_argument("--tol", type=float, default=None,
                       help="override all tolerance thresholds with one value")

    p = sub.add_parser("build", help="construct a family algebra and write its JSON")
    p.add_argument("--family", required=True,
                   help="standard_isotope | quat4 | tau_family | t_family | "
                        "lambda_family | okubo | p35 | g_family")
    p.add_argument("--params", default=None, help="inline JSON object of parameters")
    p.add_argument("--degrees", action="store_true",
                   help="interpret alpha/beta parameters as degrees")
    p.add_argument("-o", "--output", default=None)
    common(p)
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("analyze", help="invariant report for an algebra JSON file")
    p.add_argument("file")
    p.add_argument("-o", "--output", default=None)
    common(p)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("classify", help="analyze plus canonical form when available")
    p.add_argument("file")
    p.add_argument("-o", "--output", default=None)
    common(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("canon", help="canonical form of a provenance-carrying algebra")
    p.add_argument("file")
    p.add_argument("-o", "--output", default=None)
    common(p)
    p.set_defaults(func=_cmd_canon)

    p = sub.add_parser("iso", help="decide isomorphism of two algebra files")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--witness-out", default=None,
                   help="write the witness matrix JSON when isomorphic")
    common(p)
    p.set_defaults(func=_cmd_iso)

    p = sub.add_parser("enumerate", help="stream canonical representatives of a block")
    p.add_argument("--block", required=True,
                   help="D17 | D8 | D35 | D4 | D134s | D134a | D116 | D1124 | D11114 | D1133")
    p.add_argument("--grid", type=int, default=3, help="grid resolution for moduli")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("-o", "--output", default=None)
    common(p)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("verify", help="run the deterministic verification suite")
    p.add_argument("--fast", action="store_true", help="reduced trial counts")
    common(p)
    p.set_defaults(func=_cmd_verify)

    return parser


def run(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as err:
        print(f"error: invalid JSON ({err})", file=sys.stderr)
        return 2
    except CompalgError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
