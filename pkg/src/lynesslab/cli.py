"""Command-line surface: identity verification suites and dataset export.

Subcommands
-----------
verify   run the exact identity suites over a k range; exit 0 only if all pass
orbit    iterate the map and export states plus conserved levels (CSV/JSONL)
flow     integrate the symmetry field and report conservation drift
reduce   replay the double-step in reduced coordinates, check the projection
figures  canned orbit/flow datasets (three presets)

Exit codes: 0 success, 1 verification failure, 2 usage or validation error.
Rational inputs are accepted as `p/q` text so exact runs stay exact.
The environment variable LYNESS_SEED supplies the default seed.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction

from .errors import DimensionError, DomainError
from .flow import METHODS, integrate_flow, invariant_drift
from .invariants import eval_v1, eval_v2, eval_v3, eval_w, z_sign
from .lyness import Params, step
from .reduction import (
    ReducedParams,
    project,
    reduced_step_k3,
    reduced_step_k5,
    semiconjugacy_residual,
)
from .scalars import parse_rational
from .verify import FAIL, run_suites

_METHOD_ALIASES = {"rk4": METHODS[0], "rk45": METHODS[1]}


class CliError(Exception):
    """Usage or validation problem; reported on stderr with exit code 2."""


def _default_seed() -> int:
    raw = os.environ.get("LYNESS_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise CliError(f"LYNESS_SEED must be an integer, got {raw!r}") from None


def _parse_a(text: str) -> Fraction:
    try:
        a = parse_rational(text)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    if a < 0:
        raise CliError(f"parameter a must be >= 0, got {a}")
    return a


def _parse_x0(text: str, k: int) -> tuple:
    parts = [s.strip() for s in text.split(",")]
    if len(parts) != k:
        raise CliError(f"--x0 needs {k} comma-separated values, got {len(parts)}")
    try:
        coords = tuple(parse_rational(s) for s in parts)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    if any(c <= 0 for c in coords):
        raise CliError("--x0 coordinates must be positive")
    return coords


def _parse_proj(text, k: int):
    if text is None:
        return tuple(range(1, k + 1))
    parts = [s.strip() for s in text.split(",")]
    if len(parts) != 3:
        raise CliError(f"--proj needs three comma-separated indices, got {len(parts)}")
    try:
        idx = tuple(int(s) for s in parts)
    except ValueError:
        raise CliError(f"--proj indices must be integers, got {text!r}") from None
    if len(set(idx)) != 3 or not all(1 <= i <= k for i in idx):
        raise CliError(f"--proj indices must be distinct and within 1..{k}")
    return idx


def _params(k: int, a: Fraction) -> Params:
    try:
        return Params(k, a)
    except (ValueError, DimensionError) as exc:
        raise CliError(str(exc)) from None


def _open_out(path):
    """(handle, needs_close); stdout when no path was given."""
    if path is None:
        return sys.stdout, False
    try:
        return open(path, "w", encoding="utf-8", newline=""), True
    except OSError as exc:
        raise CliError(f"cannot write {path!r}: {exc}") from None


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


# ---------------------------------------------------------------- verify


def _resolve_ks(args) -> list:
    if args.k_range is not None:
        text = args.k_range
        lo, sep, hi = text.partition("..")
        if not sep or not lo.isdigit() or not hi.isdigit():
            raise CliError(f"--k-range must look like 3..8, got {text!r}")
        lo, hi = int(lo), int(hi)
        if lo > hi:
            raise CliError(f"--k-range is empty: {text!r}")
        ks = list(range(lo, hi + 1))
    else:
        ks = [args.k]
    for k in ks:
        if k < 3:
            raise CliError(f"verification suites need k >= 3, got k={k}")
    return ks


def cmd_verify(args) -> int:
    ks = _resolve_ks(args)
    a = _parse_a(args.a)
    seed = args.seed if args.seed is not None else _default_seed()
    if args.trials < 1:
        raise CliError(f"--trials must be >= 1, got {args.trials}")

    results = []
    for k in ks:
        results.extend(run_suites(k, a, args.trials, seed))
    for res in results:
        print(res.line())

    ran = [r for r in results if r.trials]
    failed = [r for r in results if r.status == FAIL]
    print(
        f"summary: {len(ran) - len(failed)}/{len(ran)} suites ok"
        f" (k={','.join(str(k) for k in ks)}, a={a},"
        f" trials={args.trials}, seed={seed})"
    )

    if args.json is not None:
        payload = {
            "ks": ks,
            "a": str(a),
            "trials": args.trials,
            "seed": seed,
            "ok": not failed,
            "suites": [
                {
                    "name": r.name,
                    "k": r.k,
                    "a": str(r.a),
                    "trials": r.trials,
                    "failures": r.failures,
                    "status": r.status,
                    "note": r.note,
                }
                for r in results
            ],
        }
        fh, close = _open_out(args.json)
        try:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
        finally:
            if close:
                fh.close()
    return 1 if failed else 0


# ----------------------------------------------------------- orbit rows


def _orbit_header(p: Params, proj) -> list:
    cols = ["n"] + [f"x{i}" for i in proj] + ["V1", "V2"]
    if p.k % 2 == 1:
        cols += ["V3", "signZ"]
    return cols


def _orbit_row(p: Params, n: int, x, proj) -> list:
    row = [str(n)] + [_fmt(x[i - 1]) for i in proj]
    row += [_fmt(eval_v1(p, x)), _fmt(eval_v2(p, x))]
    if p.k % 2 == 1:
        row += [_fmt(eval_v3(p, x)), str(z_sign(p, x))]
    return row


def _write_orbit(p: Params, x0, steps: int, exact: bool, proj, fmt: str, fh) -> None:
    x = tuple(x0) if exact else tuple(float(c) for c in x0)
    header = _orbit_header(p, proj)
    if fmt == "csv":
        fh.write(",".join(header) + "\n")
    for n in range(steps + 1):
        if n:
            x = step(p, x)
            if not exact and not all(math.isfinite(c) and c > 0 for c in x):
                print(f"warning: float orbit left the domain at step {n}", file=sys.stderr)
                break
        row = _orbit_row(p, n, x, proj)
        if fmt == "csv":
            fh.write(",".join(row) + "\n")
        else:
            fh.write(json.dumps(dict(zip(header, row))) + "\n")


def cmd_orbit(args) -> int:
    p = _params(args.k, _parse_a(args.a))
    x0 = _parse_x0(args.x0, p.k)
    proj = _parse_proj(args.proj, p.k)
    if args.steps < 0:
        raise CliError(f"--steps must be >= 0, got {args.steps}")
    fh, close = _open_out(args.out)
    try:
        _write_orbit(p, x0, args.steps, args.exact, proj, args.format, fh)
    finally:
        if close:
            fh.close()
    return 0


# ----------------------------------------------------------------- flow


def _write_flow_csv(trace, proj, fh) -> None:
    p = trace.params
    cols = ["t"] + [f"x{i}" for i in proj] + ["V1", "V2"]
    odd = p.k % 2 == 1
    if odd:
        cols.append("V3")
    fh.write(",".join(cols) + "\n")
    for t, x, sig in zip(trace.times, trace.states, trace.signatures):
        row = [repr(t)] + [repr(x[i - 1]) for i in proj]
        row += [repr(sig.v1), repr(sig.v2)]
        if odd:
            row.append(repr(sig.v3))
        fh.write(",".join(row) + "\n")


def cmd_flow(args) -> int:
    p = _params(args.k, _parse_a(args.a))
    x0 = _parse_x0(args.x0, p.k)
    proj = _parse_proj(args.proj, p.k)
    method = _METHOD_ALIASES[args.method]
    try:
        trace = integrate_flow(p, x0, args.dt, args.t_max, method=method)
    except ValueError as exc:
        raise CliError(str(exc)) from None

    if args.out is not None:
        fh, close = _open_out(args.out)
        try:
            _write_flow_csv(trace, proj, fh)
        finally:
            if close:
                fh.close()

    if trace.boundary_hit:
        print(
            f"warning: trajectory truncated near the domain boundary"
            f" at t={trace.times[-1]!r}",
            file=sys.stderr,
        )
    drift = invariant_drift(trace)
    print(
        f"flow k={p.k} a={p.a} method={method} dt={args.dt!r}"
        f" t_max={args.t_max!r} samples={len(trace.times)}"
    )
    for name in ("v1", "v2", "v3"):
        if name in drift:
            print(f"relative drift {name.upper()} = {drift[name]:.3e}")
    print(f"max relative drift = {max(drift.values()):.3e}")
    return 0


# --------------------------------------------------------------- reduce


def cmd_reduce(args) -> int:
    if args.k not in (3, 5):
        raise CliError(f"order reduction covers k in {{3, 5}}, got k={args.k}")
    p = _params(args.k, _parse_a(args.a))
    x0 = _parse_x0(args.x0, p.k)
    if args.steps < 0:
        raise CliError(f"--steps must be >= 0, got {args.steps}")

    rp = ReducedParams(a=p.a, kappa=1 / eval_w(p, x0))
    advance = reduced_step_k3 if p.k == 3 else reduced_step_k5
    names = ["y1", "y2"] if p.k == 3 else ["y1", "y2", "y3", "y4"]

    fh, close = _open_out(args.out)
    try:
        fh.write(",".join(["n"] + names) + "\n")
        y = project(p, x0)
        fh.write(",".join([str(0)] + [str(c) for c in y]) + "\n")
        for n in range(1, args.steps + 1):
            y = advance(rp, y)
            fh.write(",".join([str(n)] + [str(c) for c in y]) + "\n")
    finally:
        if close:
            fh.close()

    residual = semiconjugacy_residual(p, x0, args.steps)
    print(f"kappa = {rp.kappa}")
    print(f"semiconjugacy residual over {args.steps} double-steps: {residual}")
    return 0


# -------------------------------------------------------------- figures

_FIGURE_PRESETS = {
    1: {"k": 4, "a": Fraction(4), "x0": (1, 2, 3, 4), "steps": 2000, "proj": (1, 2, 3)},
    2: {"k": 5, "a": Fraction(1), "x0": (1, 2, 3, 4, 5), "steps": 5000, "proj": None},
    3: {"k": 5, "a": Fraction(4), "x0": (1, 2, 3, 4, 5), "steps": 10000, "proj": None},
}


def _flow_sibling(path: str) -> str:
    stem = path[:-4] if path.endswith(".csv") else path
    return stem + ".flow.csv"


def cmd_figures(args) -> int:
    preset = _FIGURE_PRESETS[args.which]
    p = Params(preset["k"], preset["a"])
    x0 = tuple(Fraction(c) for c in preset["x0"])
    proj = preset["proj"] or tuple(range(1, p.k + 1))

    fh, close = _open_out(args.out)
    try:
        _write_orbit(p, x0, preset["steps"], False, proj, "csv", fh)
    finally:
        if close:
            fh.close()
    written = [args.out or "<stdout>"]

    if args.which == 1:
        flow_path = _flow_sibling(args.out) if args.out else None
        trace = integrate_flow(p, x0, 1e-3, 10.0, method=METHODS[0])
        fh, close = _open_out(flow_path)
        try:
            _write_flow_csv(trace, proj, fh)
        finally:
            if close:
                fh.close()
        written.append(flow_path or "<stdout>")

    print(f"figure {args.which}: wrote {', '.join(written)}", file=sys.stderr)
    return 0


# ----------------------------------------------------------------- main


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lyness-lab",
        description="Verification and simulation laboratory for the k-dimensional Lyness map.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pv = sub.add_parser("verify", help="run the exact identity suites")
    group = pv.add_mutually_exclusive_group()
    group.add_argument("--k", type=int, help="single dimension to test")
    group.add_argument("--k-range", dest="k_range", help="inclusive range, e.g. 3..8")
    pv.add_argument("--a", default="1", help="parameter a as p/q text (default 1)")
    pv.add_argument("--trials", type=int, default=100, help="random points per suite")
    pv.add_argument("--seed", type=int, default=None, help="RNG seed (default LYNESS_SEED or 0)")
    pv.add_argument("--json", default=None, metavar="PATH", help="also write a JSON report")
    pv.set_defaults(func=cmd_verify, k=3)

    po = sub.add_parser("orbit", help="iterate the map and export the orbit")
    po.add_argument("--k", type=int, required=True)
    po.add_argument("--a", default="1", help="parameter a as p/q text (default 1)")
    po.add_argument("--x0", required=True, help="initial point, comma-separated rationals")
    po.add_argument("--steps", type=int, default=1000)
    po.add_argument("--exact", action="store_true", help="exact rational arithmetic")
    po.add_argument("--proj", default=None, help="emit only these coordinates, e.g. 1,2,3")
    po.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    po.add_argument("--out", default=None, metavar="PATH", help="output file (default stdout)")
    po.set_defaults(func=cmd_orbit)

    pf = sub.add_parser("flow", help="integrate the symmetry field")
    pf.add_argument("--k", type=int, required=True)
    pf.add_argument("--a", default="1", help="parameter a as p/q text (default 1)")
    pf.add_argument("--x0", required=True, help="initial point, comma-separated rationals")
    pf.add_argument("--dt", type=float, default=1e-3, help="step size / output spacing")
    pf.add_argument("--t-max", dest="t_max", type=float, default=10.0)
    pf.add_argument("--method", choices=tuple(_METHOD_ALIASES), default="rk4")
    pf.add_argument("--proj", default=None, help="emit only these coordinates, e.g. 1,2,3")
    pf.add_argument("--out", default=None, metavar="PATH", help="CSV output file")
    pf.set_defaults(func=cmd_flow)

    pr = sub.add_parser("reduce", help="reduced-coordinate replay of the double-step")
    pr.add_argument("--k", type=int, required=True, choices=(3, 5))
    pr.add_argument("--a", default="1", help="parameter a as p/q text (default 1)")
    pr.add_argument("--x0", required=True, help="initial point, comma-separated rationals")
    pr.add_argument("--steps", type=int, default=100)
    pr.add_argument("--out", default=None, metavar="PATH", help="output file (default stdout)")
    pr.set_defaults(func=cmd_reduce)

    pg = sub.add_parser("figures", help="canned figure datasets")
    pg.add_argument("--which", type=int, required=True, choices=(1, 2, 3))
    pg.add_argument("--out", default=None, metavar="PATH", help="CSV path (default stdout)")
    pg.set_defaults(func=cmd_figures)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 2
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, DimensionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
