"""Command-line front end.

Exit codes: 0 success, 1 violations found, 2 input error, 3 degenerate
operand, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from . import geometry as geo
from . import inequalities as ineq
from . import oracles
from .errors import DegenerateOperand, DomainError, NumericalFailure, ShapeError
from .matio import MatrixFormatError, matrix_to_dict, read_matrix, same_shape
from .schatten import SchattenContext, schatten_norm, sip
from .suite import run_suite

EXIT_OK, EXIT_VIOLATIONS, EXIT_INPUT, EXIT_DEGENERATE, EXIT_NUMERICAL = 0, 1, 2, 3, 4


class InputError(Exception):
    pass


@dataclass
class RunManifest:
    command: str
    p: float
    seed: int = 0
    trials: int = 0
    tol: Optional[float] = None
    dims: Optional[list] = None
    mode: Optional[str] = None
    mean: Optional[str] = None
    truncation: Optional[int] = None
    n: Optional[int] = None
    inputs: list = field(default_factory=list)
    output: Optional[str] = None

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "RunManifest":
        return cls(**d)


def _c(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def _context(m: RunManifest) -> SchattenContext:
    try:
        if m.tol is None:
            return SchattenContext(m.p)
        return SchattenContext(m.p, tol_rel=m.tol)
    except DomainError as exc:
        raise InputError(str(exc)) from exc


def _load(m: RunManifest, count: int) -> list[np.ndarray]:
    if len(m.inputs) != count:
        raise InputError(f"{m.command} expects {count} matrix file(s), got {len(m.inputs)}")
    try:
        mats = [read_matrix(path) for path in m.inputs]
        same_shape(*mats)
    except (OSError, MatrixFormatError, ShapeError) as exc:
        raise InputError(str(exc)) from exc
    if mats[0].shape[0] != mats[0].shape[1]:
        raise InputError(f"matrices must be square, got {mats[0].shape}")
    return mats


def _mean(m: RunManifest) -> geo.MeanKind:
    try:
        return geo.MeanKind.parse(m.mean or "heinz:0.5")
    except (DomainError, ValueError) as exc:
        raise InputError(f"bad --mean: {exc}") from exc


# --------------------------------------------------------------------------


def cmd_compute(m: RunManifest) -> tuple[dict, int]:
    ctx = _context(m)
    X, Y = _load(m, 2)
    s_yx, s_xy = sip(Y, X, ctx), sip(X, Y, ctx)
    if s_yx.alpha is None:
        raise DegenerateOperand("Y must be nonzero")
    angles = geo.angle_suite(X, Y, ctx, _mean(m))
    lower, _ = geo.quadratic_mean_lower_bound(X, Y, ctx)
    return {
        "norm_x": s_yx.norm_x,
        "norm_y": s_yx.norm_y,
        "sip_yx": _c(s_yx.value),
        "sip_xy": _c(s_xy.value),
        "alpha_yx": _c(s_yx.alpha),
        "alpha_xy": _c(s_xy.alpha),
        "beta_yx": s_yx.beta,
        "beta_xy": s_xy.beta,
        "gateaux_xy": s_yx.value.real,
        "angles": angles.to_dict(),
        "qm_lower_bound": lower,
    }, EXIT_OK


def cmd_check(m: RunManifest) -> tuple[dict, int]:
    ctx = _context(m)
    X, Y = _load(m, 2)
    mode = m.mode or "orth"
    if mode == "orth":
        crit = geo.is_bj_orthogonal(X, Y, ctx)
        res = oracles.bj_search(X, Y, ctx)
        extra = {"oracle_min_norm": res.extremum, "oracle_gamma": _c(res.argument)}
    elif mode == "par":
        crit = geo.is_parallel(X, Y, ctx)
        res = oracles.parallel_search(X, Y, ctx)
        extra = {"oracle_max_norm": res.extremum, "oracle_lambda": _c(res.argument),
                 "criterion_reverse": geo.is_parallel(Y, X, ctx)}
    else:
        raise InputError(f"unknown --mode {mode!r}")
    agree = crit == res.holds
    body = {"mode": mode, "criterion": crit, "oracle": res.holds, "agree": agree,
            "target_norm": res.target, **extra}
    return body, EXIT_OK if agree else EXIT_VIOLATIONS


def cmd_verify(m: RunManifest) -> tuple[dict, int]:
    try:
        SchattenContext(m.p)
    except DomainError as exc:
        raise InputError(str(exc)) from exc
    dims = tuple(m.dims or (2, 8))
    if m.trials < 1:
        raise InputError("--trials must be positive")
    tol = 1e-9 if m.tol is None else m.tol
    if tol < 0:
        raise InputError("--tol must be non-negative")
    body = run_suite(m.p, m.trials, m.seed, dims, tol)
    return body, EXIT_OK if body["violation_count"] == 0 else EXIT_VIOLATIONS


def cmd_witness(m: RunManifest) -> tuple[dict, int]:
    ctx = _context(m)
    X, Y = _load(m, 2)
    w = ineq.find_witness(X, Y, ctx)
    if isinstance(w, ineq.NoWitness):
        lhs, rhs = ineq.cs_inequality(X, Y, ctx)
        return {"witness": None, "reason": w.reason, "cs_lhs": lhs, "cs_rhs": rhs}, EXIT_OK
    return {
        "witness": matrix_to_dict(w.Z),
        "delta": w.delta,
        "cs_lhs": w.cs_lhs,
        "cs_rhs": w.cs_rhs,
        "slack": w.slack,
    }, EXIT_OK if w.slack >= -ctx.tol(w.cs_rhs) else EXIT_VIOLATIONS


def cmd_counterexample(m: RunManifest) -> tuple[dict, int]:
    ctx = _context(m)
    n = m.n or 2
    if n < 2 or m.trials < 1:
        raise InputError("need --n >= 2 and --trials >= 1")
    found = oracles.trace_symmetry_search(n, ctx, m.trials, m.seed)
    inconsistent = 0
    records = []
    for r in found:
        # [Z,I]_p - [I,Z]_p = -[I,Z]_p = tr(W) when tr Z = 0
        expr_ok = abs(r.trace_expression + r.sip_i_z) <= ctx.tol(abs(r.sip_i_z))
        item3_ok = r.identity_orthogonal is None or r.identity_orthogonal is False
        inconsistent += not (expr_ok and item3_ok)
        records.append({
            "trial": r.trial,
            "Z": matrix_to_dict(r.Z),
            "sip_z_i": _c(r.sip_z_i),
            "sip_i_z": _c(r.sip_i_z),
            "trace_expression": _c(r.trace_expression),
            "identity_orthogonal_oracle": r.identity_orthogonal,
        })
    # the classic 2x2 zero-trace matrix, with the forced polar decomposition
    Z0 = oracles.build_example(oracles.ExampleOperatorSpec("ZeroTrace2x2"))
    I2 = np.eye(2)
    body = {
        "count": len(found),
        "equivalence_inconsistencies": inconsistent,
        "instances": records[:50],
        "zero_trace_2x2": {"sip_z_i": _c(sip(Z0, I2, ctx).value), "sip_i_z": _c(sip(I2, Z0, ctx).value)},
    }
    return body, EXIT_OK if inconsistent == 0 else EXIT_VIOLATIONS


def cmd_example(m: RunManifest) -> tuple[dict, int]:
    """Diagonal/shift truncation report."""
    N = m.truncation or 200
    if N < 4:
        raise InputError("--truncation must be at least 4")
    reps = [oracles.shift_example_truncation(k, p=m.p) for k in (N // 4, N // 2, N)]
    gaps = [r.half_gap for r in reps]
    last = reps[-1]
    body = {
        "dimension": N,
        "inner_z_a": _c(last.inner_z_a),
        "inner_z_b": _c(last.inner_z_b),
        "partial_sums_monotone": last.monotone,
        "half_gaps": {str(r.dimension): r.half_gap for r in reps},
        "gaps_decreasing": all(gaps[i + 1] < gaps[i] for i in range(len(gaps) - 1)),
    }
    ok = last.inner_z_a == 0 and last.inner_z_b.real < 0 and body["gaps_decreasing"]
    return body, EXIT_OK if ok else EXIT_VIOLATIONS


COMMANDS = {
    "compute": cmd_compute,
    "check": cmd_check,
    "verify": cmd_verify,
    "witness": cmd_witness,
    "counterexample": cmd_counterexample,
    "example": cmd_example,
}


# --------------------------------------------------------------------------


def _dims(text: str) -> list:
    lo, sep, hi = text.partition("..")
    try:
        a, b = int(lo), int(hi if sep else lo)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a..b, got {text!r}")
    if a < 1 or b < a:
        raise argparse.ArgumentTypeError(f"bad dimension range {text!r}")
    return [a, b]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=float, required=True, help="Schatten exponent, p > 1")
    common.add_argument("--tol", type=float, default=None, help="relative tolerance override")
    common.add_argument("--json", action="store_true", help="emit one JSON document")
    common.add_argument("--output", "-o", default=None, help="also write the JSON report here")

    parser = _Parser(prog="schatten-geom", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name in ("compute", "check", "witness"):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("inputs", nargs=2, metavar="MATRIX", help="X and Y matrix files")
        if name == "compute":
            sp.add_argument("--mean", default="heinz:0.5", help="am|gm|hm|qm|heinz:t")
        if name == "check":
            sp.add_argument("--mode", choices=("orth", "par"), default="orth")

    sp = sub.add_parser("verify", parents=[common])
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--dims", type=_dims, default=[2, 8], help="dimension range a..b")

    sp = sub.add_parser("counterexample", parents=[common])
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--n", type=int, default=2)

    sp = sub.add_parser("example", parents=[common])
    sp.add_argument("--truncation", type=int, default=200)
    return parser


def manifest_from_args(args) -> RunManifest:
    return RunManifest(
        command=args.command,
        p=args.p,
        seed=getattr(args, "seed", 0),
        trials=getattr(args, "trials", 0),
        tol=args.tol,
        dims=getattr(args, "dims", None),
        mode=getattr(args, "mode", None),
        mean=getattr(args, "mean", None),
        truncation=getattr(args, "truncation", None),
        n=getattr(args, "n", None),
        inputs=[str(Path(x)) for x in getattr(args, "inputs", [])],
        output=args.output,
    )


def render_json(manifest: RunManifest, body: dict, status: int) -> str:
    doc = {"manifest": manifest.to_dict(), "status": status, "report": body}
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def render_text(manifest: RunManifest, body: dict, status: int) -> str:
    lines = [f"command: {manifest.command}  p = {manifest.p:g}  status = {status}"]

    def walk(prefix, obj):
        if isinstance(obj, dict) and not {"rows", "cols", "data"} <= obj.keys():
            for k in sorted(obj):
                walk(f"{prefix}.{k}" if prefix else k, obj[k])
        elif isinstance(obj, list) and obj and isinstance(obj[0], dict):
            lines.append(f"{prefix}: {len(obj)} item(s)")
            for i, item in enumerate(obj[:10]):
                walk(f"{prefix}[{i}]", item)
        else:
            lines.append(f"{prefix}: {json.dumps(obj, sort_keys=True)}")

    walk("", body)
    return "\n".join(lines) + "\n"


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    manifest = manifest_from_args(args)
    try:
        body, status = COMMANDS[manifest.command](manifest)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DegenerateOperand as exc:
        print(f"degenerate operand: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except NumericalFailure as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ShapeError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report = render_json(manifest, body, status)
    if manifest.output:
        Path(manifest.output).write_text(report)
    sys.stdout.write(report if args.json else render_text(manifest, body, status))
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
