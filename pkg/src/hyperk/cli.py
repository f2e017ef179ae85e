"""Command-line entry point: ``hyperk <subcommand> ...``.

Exit status is 0 on success, 1 when a classification or verification comes
out negative (or an integral does not converge) and 2 on malformed input.
All results are printed as JSON; ``--plot-data FILE`` additionally writes a
whitespace-separated table with a ``#`` header row.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import HyperkError, NoConvergence
from .funcspace import SeparableFn
from .hypnum import Hyp, hyp_from_json, hyp_to_json, parse_scalar, scalar_to_json
from .interval import HypInterval
from .partition import (
    STRATEGIES,
    IntervalCollection,
    RealPartition,
    check_regular,
    check_strong,
    check_weak,
    gen_strong,
)
from .rs import integration_by_parts_sides, rs_integral
from .variation import total_variation_bruteforce, total_variation_separable

SUBCOMMANDS = ("classify", "partition-gen", "variation", "integrate", "verify")


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    inputs: dict = field(default_factory=dict)
    eps: Optional[float] = None
    seed: int = 0
    grid: Optional[tuple] = None
    output: Optional[str] = None
    plot_data: Optional[str] = None
    options: dict = field(default_factory=dict)

    def validate(self):
        if self.subcommand not in SUBCOMMANDS:
            raise InputError(f"unknown subcommand {self.subcommand!r}")
        if self.eps is not None and not self.eps > 0:
            raise InputError("--eps must be positive")
        if self.grid is not None and (len(self.grid) != 2 or min(self.grid) < 2):
            raise InputError("--grid needs two sizes >= 2, e.g. 6x6")
        if self.seed < 0:
            raise InputError("--seed must be non-negative")


# --- input helpers -------------------------------------------------------------------

def _load_json_or_text(text: str):
    """A file path, ``-`` for stdin, or inline JSON; returns parsed JSON or raw text."""
    if text == "-":
        text = sys.stdin.read()
    elif os.path.isfile(text):
        with open(text) as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def parse_number_list(text: str) -> list:
    try:
        return [parse_scalar(t) for t in text.replace(" ", "").split(",") if t]
    except (ValueError, TypeError) as exc:
        raise InputError(str(exc)) from exc


def parse_interval(text: str) -> HypInterval:
    obj = _load_json_or_text(text)
    if isinstance(obj, str):
        obj = parse_number_list(obj.strip().strip("[]"))
    try:
        return HypInterval.from_json(obj)
    except (ValueError, TypeError, KeyError) as exc:
        raise InputError(f"bad interval {text!r}: {exc}") from exc


def parse_function(text: str) -> SeparableFn:
    """A function literal ``{"f1": …, "f2": …}`` or one expression used for both components."""
    obj = _load_json_or_text(text)
    try:
        if isinstance(obj, dict):
            return SeparableFn.from_json(obj)
        if isinstance(obj, (str, int, float)):
            return SeparableFn(str(obj), str(obj))
    except (ValueError, KeyError, SyntaxError) as exc:
        raise InputError(f"bad function {text!r}: {exc}") from exc
    raise InputError(f"bad function {text!r}")


def _eps(value: Optional[float], default: float) -> Hyp:
    e = default if value is None else value
    return Hyp(e, e)


def _write_table(path: str, header: list, rows: list):
    with open(path, "w") as fh:
        fh.write("# " + " ".join(header) + "\n")
        for row in rows:
            fh.write(" ".join(_cell(v) for v in row) + "\n")


def _cell(v) -> str:
    if isinstance(v, Fraction):
        return repr(float(v))
    return str(v) if isinstance(v, (int, str)) else repr(float(v))


# --- subcommands ---------------------------------------------------------------------

def _classify(cfg: RunConfig) -> tuple:
    obj = _load_json_or_text(cfg.inputs["input"])
    if not isinstance(obj, (dict, list)):
        raise InputError("classify expects an interval collection or a point list as JSON")
    try:
        if isinstance(obj, dict) and "pieces" in obj:
            coll = IntervalCollection.from_json(obj)
            reg = check_regular(coll)
            weak = check_weak(coll, strict=cfg.options.get("strict", False))
            out = {
                "kind": "collection",
                "regular": reg.regular,
                "regular_reason": reg.reason,
                "weak": weak.weak,
                "length_sum": hyp_to_json(weak.length_sum),
                "parent_length": hyp_to_json(weak.parent_length),
                "deficit": hyp_to_json(weak.deficit),
            }
            if weak.covers is not None:
                out["covers"] = weak.covers
            require = cfg.options.get("require", "weak")
            ok = {"weak": weak.weak, "regular": reg.regular, "both": weak.weak and reg.regular}[require]
            rows = [(k, p.lo.a1, p.lo.a2, p.hi.a1, p.hi.a2) for k, p in enumerate(coll.pieces)]
            table = (["piece", "lo_e1", "lo_e2", "hi_e1", "hi_e2"], rows)
        else:
            raw = obj["points"] if isinstance(obj, dict) else obj
            points = [hyp_from_json(p) for p in raw]
            if not points:
                raise InputError("empty point list")
            parent = obj.get("parent") if isinstance(obj, dict) else None
            if parent is not None:
                parent = HypInterval.from_json(parent)
            elif points[0] <= points[-1]:
                parent = HypInterval(points[0], points[-1])
            verdict = check_strong(points, parent)
            out = {"kind": "points", "strong": verdict.strong, "violation": verdict.violation,
                   "detail": verdict.detail}
            ok = verdict.strong
            table = (["index", "e1", "e2"], [(k, p.a1, p.a2) for k, p in enumerate(points)])
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed classify input: {exc}") from exc
    return out, 0 if ok else 1, table


def _partition_gen(cfg: RunConfig) -> tuple:
    try:
        P = RealPartition(tuple(parse_number_list(cfg.inputs["p"])))
        Q = RealPartition(tuple(parse_number_list(cfg.inputs["q"])))
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    strategy = cfg.options.get("strategy", "e1_first")
    part = gen_strong(P, Q, strategy, cfg.seed)
    out = part.to_json()
    out["parent"] = part.parent.to_json()
    out["strategy"] = strategy
    out["projections"] = {
        "e1": [scalar_to_json(v) for v in P.points],
        "e2": [scalar_to_json(v) for v in Q.points],
    }
    table = (["index", "e1", "e2"], [(k, p.a1, p.a2) for k, p in enumerate(part.points)])
    return out, 0, table


def _variation(cfg: RunConfig) -> tuple:
    F = parse_function(cfg.inputs["f"])
    interval = parse_interval(cfg.inputs["interval"])
    if cfg.grid is not None:
        m, n = cfg.grid
        xs = RealPartition.uniform(interval.lo.a1, interval.hi.a1, m - 1).points
        ys = RealPartition.uniform(interval.lo.a2, interval.hi.a2, n - 1).points
        if len(xs) != m or len(ys) != n:
            raise InputError("--grid needs a non-degenerate interval")
        report = total_variation_bruteforce(F, xs, ys)
        method = "bruteforce"
    else:
        report = total_variation_separable(F, interval)
        method = "separable"
    out = {"method": method, **report.to_json()}
    rows = [(k, p.a1, p.a2) for k, p in enumerate(report.witness.points)]
    return out, 0, (["index", "e1", "e2"], rows)


def _trace_table(result) -> tuple:
    rows = [(k, d.a1, d.a2, s.a1, s.a2) for k, (d, s) in enumerate(result.trace)]
    return ["level", "diam_e1", "diam_e2", "sum_e1", "sum_e2"], rows


def _integrate(cfg: RunConfig) -> tuple:
    F = parse_function(cfg.inputs["f"])
    G = parse_function(cfg.inputs["g"])
    interval = parse_interval(cfg.inputs["interval"])
    result = rs_integral(
        F, G, interval, _eps(cfg.eps, 1e-8),
        mode=cfg.options.get("mode", "signed"),
        sample=cfg.options.get("sample", "mid"),
        max_halvings=cfg.options.get("max_halvings", 24),
        seed=cfg.seed,
    )
    return result.to_json(), 0 if result.converged else 1, _trace_table(result)


def _verify(cfg: RunConfig) -> tuple:
    if cfg.options.get("what") != "parts":
        raise InputError("verify supports: parts")
    F = parse_function(cfg.inputs["f"])
    G = parse_function(cfg.inputs["g"])
    interval = parse_interval(cfg.inputs["interval"])
    tol = cfg.options.get("tol", 1e-6)
    try:
        lhs, rhs = integration_by_parts_sides(F, G, interval, _eps(cfg.eps, 1e-8), cfg.options.get("mode", "signed"),
                                              seed=cfg.seed)
    except NoConvergence as exc:
        return {"verified": False, "error": str(exc)}, 1, None
    residual = abs(lhs.value - rhs.value)
    ok = residual < Hyp(tol, tol)
    out = {
        "verified": ok,
        "lhs": lhs.to_json(),
        "rhs": rhs.to_json(),
        "residual": hyp_to_json(residual),
        "tolerance": tol,
    }
    return out, 0 if ok else 1, _trace_table(lhs)


_HANDLERS = {
    "classify": _classify,
    "partition-gen": _partition_gen,
    "variation": _variation,
    "integrate": _integrate,
    "verify": _verify,
}


def run(cfg: RunConfig, stdout=None) -> int:
    stdout = stdout or sys.stdout
    try:
        cfg.validate()
        out, status, table = _HANDLERS[cfg.subcommand](cfg)
    except (InputError, HyperkError, ValueError, TypeError, KeyError) as exc:
        print(f"hyperk {cfg.subcommand}: error: {exc}", file=sys.stderr)
        return 2
    text = json.dumps(out, indent=2) + "\n"
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    if cfg.plot_data and table is not None:
        _write_table(cfg.plot_data, *table)
    return status


# --- argument parsing ------------------------------------------------------------------

def _grid(text: str) -> tuple:
    try:
        m, n = text.lower().split("x")
        return int(m), int(n)
    except ValueError as exc:
        raise argparse.ArgumentTypeError("grid must look like 6x6") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperk", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", help="write the JSON result here instead of stdout")
    common.add_argument("--plot-data", metavar="FILE", help="also write a plain-text table for plotting")
    common.add_argument("--seed", type=int, default=0)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("classify", parents=[common], help="classify an interval collection or a point chain")
    p.add_argument("input", help="JSON file, inline JSON or '-' for stdin")
    p.add_argument("--strict", action="store_true", help="weak check also demands planar coverage")
    p.add_argument("--require", choices=("weak", "regular", "both"), default="weak",
                   help="verdict that decides the exit status for collections")

    p = sub.add_parser("partition-gen", parents=[common], help="lift two real partitions to a strong partition")
    p.add_argument("--p", required=True, help="e1 partition, e.g. 0,1/3,2/3,1")
    p.add_argument("--q", required=True, help="e2 partition")
    p.add_argument("--strategy", choices=STRATEGIES, default="e1_first")

    p = sub.add_parser("variation", parents=[common], help="total variation of a separable function")
    p.add_argument("--f", required=True, help="function literal JSON, file, or expression in x")
    p.add_argument("--interval", required=True, help="e.g. [0,1] or {\"lo\":…, \"hi\":…}")
    p.add_argument("--grid", type=_grid, help="use the brute-force lattice oracle on an MxN grid")

    p = sub.add_parser("integrate", parents=[common], help="hyperbolic Riemann-Stieltjes integral")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--interval", required=True)
    p.add_argument("--eps", type=float, default=None)
    p.add_argument("--mode", choices=("signed", "absolute"), default="signed")
    p.add_argument("--sample", choices=("left", "right", "mid"), default="mid")
    p.add_argument("--max-halvings", type=int, default=24)

    p = sub.add_parser("verify", parents=[common], help="check an integral identity numerically")
    p.add_argument("what", choices=("parts",))
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--interval", required=True)
    p.add_argument("--eps", type=float, default=None)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--mode", choices=("signed", "absolute"), default="signed")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    inputs, options = {}, {}
    for key in ("input", "p", "q", "f", "g", "interval"):
        if getattr(ns, key, None) is not None:
            inputs[key] = getattr(ns, key)
    for key in ("strict", "require", "strategy", "mode", "sample", "max_halvings", "what", "tol"):
        if getattr(ns, key, None) is not None:
            options[key] = getattr(ns, key)
    return RunConfig(
        subcommand=ns.subcommand,
        inputs=inputs,
        eps=getattr(ns, "eps", None),
        seed=ns.seed,
        grid=getattr(ns, "grid", None),
        output=ns.output,
        plot_data=ns.plot_data,
        options=options,
    )


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    return run(config_from_args(ns))


if __name__ == "__main__":
    sys.exit(main())
