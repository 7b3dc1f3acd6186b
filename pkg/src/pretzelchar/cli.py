"""Command-line interface.

    pretzelchar charvar  --k1 K1 --k2 K2 --k3 K3 [--json]
    pretzelchar x2       --k1 K1 --k2 K2 --k3 K3 [--json]
    pretzelchar sample   --k1 K1 --k2 K2 --k3 K3 [--count N] [--seed S] [--tol TOL]
    pretzelchar apoly    --k1 K1 --k2 K2 --k3 K3 [--order s1,s2,s3,lam] [--cache-dir DIR]
    pretzelchar verify   --apoly-file A.json --samples-file S.json [--tol TOL]
    pretzelchar selftest [--seed S]

Exit status: 0 on success, 1 on a domain error (elimination failure, size
envelope, failed checks), 2 on a usage error or unreadable input.

Randomness: draw i of a sampling run uses its own PCG64 stream seeded by
SeedSequence([seed, i]), so output depends only on --seed and --count.
"""

import argparse
import json
import sys

from .apoly import (
    APolyResult,
    PeripheralError,
    PeripheralPair,
    hard_apoly,
    peripheral_pair,
    peripheral_samples,
    verify_apoly,
)
from .charvariety import (
    PretzelParams,
    adjudicate_X2,
    component_systems,
    enumerate_X2,
    membership,
    representation_from_point,
    sample_X3,
)
from .errors import PretzelError, ReconstructionError

VERBS = ("charvar", "x2", "apoly", "sample", "verify", "selftest")


class UsageError(Exception):
    pass


def _params(args):
    if args.k1 is None or args.k2 is None or args.k3 is None:
        raise UsageError(f"{args.verb} needs --k1, --k2 and --k3")
    try:
        return PretzelParams(args.k1, args.k2, args.k3)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from exc


def _order(text):
    if not text:
        return None
    order = tuple(v.strip() for v in text.split(",") if v.strip())
    if sorted(order) != sorted(("s1", "s2", "s3", "lam")):
        raise UsageError(f"--order must list s1, s2, s3, lam once each, got {text!r}")
    return order


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


# -- verbs -----------------------------------------------------------------------

def cmd_charvar(args):
    params = _params(args)
    systems = component_systems(params)
    data = {"knot": params.to_json(), "knot_name": params.knot_name,
            "components": [s.to_json() for s in systems]}
    lines = [f"{params.knot_name}: {len(systems)} component systems"]
    for s in systems:
        lines.append(f"  {s.label}: {len(s.equations)} equations, {len(s.inequations)} inequations")
    return data, lines, 0


def cmd_x2(args):
    params = _params(args)
    reports = {tuple(r["h"]): r for r in adjudicate_X2(params, tol=args.tol)}
    entries = []
    lines = [f"{params.knot_name}: {len(reports)} X2 entries"]
    for e in enumerate_X2(params):
        r = reports[e.h]
        entries.append({
            "h": list(e.h),
            "s": list(e.s),
            "conic": e.conic.to_json(),
            "exact_residuals": list(e.exact_residuals),
            "endpoint": e.endpoint,
            "status": r["status"],
            "verified": r["verified"],
            "max_relation_residual": r["max_residual"],
        })
        lines.append(f"  h={e.h} s=({e.s[0]:.6f}, {e.s[1]:.6f}, {e.s[2]:.6f}) "
                     f"{r['status']}, verified={r['verified']}")
    return {"knot": params.to_json(), "entries": entries}, lines, 0


def cmd_sample(args):
    params = _params(args)
    diag = {}
    points = sample_X3(params, args.count, args.seed, args.tol, diagnostics=diag)
    records, ill = [], 0
    for p in points:
        rec = {"point": p.to_json(), "components": membership(p, params)}
        try:
            rep, res = representation_from_point(p, params, args.tol)
            rec["relation_residual"] = res
            rec["accepted"] = res < args.tol
            if rec["accepted"]:
                try:
                    rec["peripheral"] = peripheral_pair(rep, args.tol).to_json()
                except PeripheralError as exc:
                    rec["peripheral_error"] = str(exc)
        except ReconstructionError as exc:
            rec["accepted"] = False
            rec["error"] = str(exc)
        ill += not rec["accepted"]
        records.append(rec)
    data = {
        "knot": params.to_json(),
        "seed": args.seed,
        "count": args.count,
        "rng": "PCG64(SeedSequence([seed, draw]))",
        "draws": diag.get("draws", []),
        "samples": records,
        "accepted": len(records) - ill,
        "ill_conditioned": ill,
    }
    lines = [f"{params.knot_name}: {len(records)} X3 points, {len(records) - ill} accepted, "
             f"{ill} ill-conditioned"]
    for r in records:
        lines.append(f"  residual {r.get('relation_residual', float('nan')):.2e}"
                     f"{'' if r['accepted'] else '  REJECTED'}")
    return data, lines, 0


def cmd_apoly(args):
    params = _params(args)
    result = hard_apoly(params, order=_order(args.order), cache=args.cache_dir)
    samples = peripheral_samples(params, args.count, args.seed)
    report = verify_apoly(result, samples, tol=1e-6)
    data = result.to_json()
    data["verification"] = report.to_json()
    p = result.poly
    lines = [
        f"{params.knot_name}: hard part of the A-polynomial, order {','.join(result.elimination_order)}",
        f"  {len(p)} terms, degree {p.degree('u')} in u, {p.degree('w')} in w",
        f"  verification: {report.summary}, max scaled residual {report.max_scaled_residual:.2e}",
        f"  unsupported factors: {report.unsupported_factors}",
    ]
    if len(p) <= 40:
        lines.append(f"  {p.to_text()}")
    return data, lines, 0 if report.n_fail == 0 else 1


def _read_samples(data):
    if isinstance(data, dict):
        if "samples" in data:
            data = [r["peripheral"] for r in data["samples"] if "peripheral" in r]
        elif "pairs" in data:
            data = data["pairs"]
    if not isinstance(data, list):
        raise UsageError("samples file must be a list of {u, w} pairs or a `sample` output")
    try:
        return [PeripheralPair.from_json(d) for d in data]
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed peripheral pair: {exc}") from exc


def cmd_verify(args):
    if not args.apoly_file or not args.samples_file:
        raise UsageError("verify needs --apoly-file and --samples-file")
    try:
        result = APolyResult.from_json(_load_json(args.apoly_file))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    samples = _read_samples(_load_json(args.samples_file))
    report = verify_apoly(result, samples, tol=args.tol if args.tol_given else 1e-6)
    data = {"knot": result.knot.to_json(), "verification": report.to_json()}
    lines = [f"{result.knot.knot_name}: {report.summary}, "
             f"max scaled residual {report.max_scaled_residual:.2e}"]
    return data, lines, 0 if report.n_fail == 0 else 1


def cmd_selftest(args):
    from .selftest import run_all

    results = run_all(args.seed)
    lines = [f"{'PASS' if r['ok'] else 'FAIL'} {r['suite']}: {r['detail']}" for r in results]
    ok = all(r["ok"] for r in results)
    return {"suites": results, "ok": ok}, lines, 0 if ok else 1


COMMANDS = {
    "charvar": cmd_charvar,
    "x2": cmd_x2,
    "apoly": cmd_apoly,
    "sample": cmd_sample,
    "verify": cmd_verify,
    "selftest": cmd_selftest,
}


# -- parsing and dispatch ------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    parser = _Parser(prog="pretzelchar", description="Character varieties and A-polynomials "
                     "of the pretzel knots P(2k1+1, 2k2+1, 2k3).")
    parser.add_argument("verb", choices=VERBS)
    parser.add_argument("--k1", type=int)
    parser.add_argument("--k2", type=int)
    parser.add_argument("--k3", type=int)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--count", type=int, default=20)
    parser.add_argument("--tol", type=float, default=None)
    parser.add_argument("--order")
    out = parser.add_mutually_exclusive_group()
    out.add_argument("--json", dest="as_json", action="store_true")
    out.add_argument("--text", dest="as_json", action="store_false")
    parser.add_argument("--cache-dir")
    parser.add_argument("--apoly-file")
    parser.add_argument("--samples-file")
    return parser


def run(argv, out=None, err=None):
    """Run one command; returns the exit status."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        args.tol_given = args.tol is not None
        if args.tol is None:
            args.tol = 1e-8
        if args.seed < 0 or args.count < 1:
            raise UsageError("--seed must be >= 0 and --count >= 1")
        data, lines, code = COMMANDS[args.verb](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return 2
    except PretzelError as exc:
        stage = getattr(exc, "stage", None)
        extra = f" (stage {stage})" if stage is not None else ""
        print(f"error: {type(exc).__name__}: {exc}{extra}", file=err)
        return 1
    if args.as_json:
        out.write(json.dumps(data, sort_keys=True, indent=1) + "\n")
    else:
        out.write("\n".join(lines) + "\n")
    return code


def main(argv=None):
    sys.exit(run(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
