"""Command-line entry point.

Instance files are JSON::

    {"blaschke": [{"zero": [re, im], "mult": m}, ...],
     "functions": [{"num": [[re, im], ...], "den": [[re, im], ...]}, ...],
     "delta_claimed": 0.1, "mode": "solve"}

Complex numbers are ``[re, im]`` pairs and polynomials ascending coefficient
lists; ``den`` defaults to ``[[1, 0]]``.  Reports use the same grammar and go
to stdout unless ``--out`` is given.  Floats are written with ``repr`` so they
round-trip exactly.

Exit codes: 0 success, 2 verified negative (non-member, no corona, common
zero), 3 reduction search exhausted, 4 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .blaschke import BlaschkeSpec, MembershipReport, check_membership
from .errors import (AllConstantsZero, CertificationFailure, CoronaError, NoSolution, NotAMember,
                     SearchExhausted)
from .numcore import NonvanishingCert, Poly, RationalFn
from .reduce import ReductionCert, SearchBudget, UnimodularPair, reduce_pair
from .sampling import random_instance, random_spec
from .skew import SkewMatrix
from .solver import CoronaInstance, SolveReport, constrained_solve, ideal_solve
from .verify import GridConfig, corona_delta, grid_error, sup_norm, sup_sum

EXIT_OK = 0
EXIT_NEGATIVE = 2
EXIT_EXHAUSTED = 3
EXIT_INPUT = 4

# corona margins at or below this are reported as "no corona"
CORONA_FLOOR = 1e-3

MODES = ("solve", "solve-ideal", "check", "reduce", "norms")


class InputError(Exception):
    pass


# --------------------------------------------------------------------------
# file grammar

def _pair(v, where: str) -> complex:
    if (not isinstance(v, list) or len(v) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in v)):
        raise InputError(f"{where}: expected a [re, im] pair of numbers, got {v!r}")
    return complex(v[0], v[1])


def _poly(v, where: str) -> Poly:
    if not isinstance(v, list) or not v:
        raise InputError(f"{where}: expected a non-empty list of [re, im] pairs")
    return Poly([_pair(c, f"{where}[{i}]") for i, c in enumerate(v)])


@dataclass
class InstanceFile:
    spec: BlaschkeSpec
    functions: list[RationalFn]
    delta_claimed: float | None = None
    mode: str | None = None


def parse_instance(text: str) -> InstanceFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise InputError("top level: expected an object")
    for key in ("blaschke", "functions"):
        if key not in doc:
            raise InputError(f"{key}: missing field")
    bl = doc["blaschke"]
    if not isinstance(bl, list) or not bl:
        raise InputError("blaschke: expected a non-empty list")
    points = []
    for i, entry in enumerate(bl):
        if not isinstance(entry, dict) or "zero" not in entry:
            raise InputError(f"blaschke[{i}]: expected an object with 'zero' and 'mult'")
        m = entry.get("mult", 1)
        if not isinstance(m, int) or isinstance(m, bool):
            raise InputError(f"blaschke[{i}].mult: expected an integer")
        points.append((_pair(entry["zero"], f"blaschke[{i}].zero"), m))
    try:
        spec = BlaschkeSpec(tuple(points))
    except ValueError as exc:
        raise InputError(f"blaschke: {exc}") from exc
    fs = doc["functions"]
    if not isinstance(fs, list) or not fs:
        raise InputError("functions: expected a non-empty list")
    functions = []
    for i, entry in enumerate(fs):
        if not isinstance(entry, dict) or "num" not in entry:
            raise InputError(f"functions[{i}]: expected an object with 'num'")
        num = _poly(entry["num"], f"functions[{i}].num")
        den = _poly(entry["den"], f"functions[{i}].den") if "den" in entry else None
        try:
            functions.append(RationalFn(num, den))
        except CertificationFailure as exc:
            raise InputError(f"functions[{i}].den: denominator not certified zero-free "
                             f"on the closed disk ({exc.reason})") from exc
        except (ZeroDivisionError, ValueError) as exc:
            raise InputError(f"functions[{i}]: {exc}") from exc
    delta = doc.get("delta_claimed")
    if delta is not None and not isinstance(delta, (int, float)):
        raise InputError("delta_claimed: expected a number")
    mode = doc.get("mode")
    if mode is not None and mode not in MODES:
        raise InputError(f"mode: expected one of {', '.join(MODES)}")
    return InstanceFile(spec, functions, None if delta is None else float(delta), mode)


def encode(obj):
    """Map report values onto the file grammar (JSON-ready)."""
    if isinstance(obj, (bool, str)) or obj is None:
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, Poly):
        return [encode(c) for c in obj.coeffs]
    if isinstance(obj, RationalFn):
        return {"num": encode(obj.num), "den": encode(obj.den)}
    if isinstance(obj, SkewMatrix):
        return [[encode(c) for c in row] for row in obj.entries]
    if isinstance(obj, MembershipReport):
        return {"base_value": encode(obj.base_value), "a1_defect": obj.a1_defect,
                "jet_defect": obj.jet_defect, "defect": obj.defect}
    if isinstance(obj, NonvanishingCert):
        return {"margin": obj.margin, "samples": obj.samples,
                "lipschitz_bound": obj.lipschitz_bound, "lower_bound": obj.lower_bound}
    if isinstance(obj, BlaschkeSpec):
        return [{"zero": encode(a), "mult": m} for a, m in obj.points]
    if isinstance(obj, dict):
        return {(k if isinstance(k, str) else ",".join(map(str, k))): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [encode(v) for v in obj]
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(report: dict) -> str:
    return json.dumps(encode(report), indent=2) + "\n"


# --------------------------------------------------------------------------
# commands

def _grid(args) -> GridConfig:
    return GridConfig(boundary_samples=args.boundary_samples, radial_rings=args.grid_rings)


def _solve_report(rep: SolveReport) -> dict:
    return {
        "g": rep.g, "residual": rep.residual, "membership_defects": rep.membership_defects,
        "g_norms": rep.g_norms, "correction_norm": rep.correction_norm,
        "delta_measured": rep.delta_measured, "sup_sum_f": rep.sup_sum_f,
        "solver_path": rep.solver_path, "g0": rep.g0, "extras": rep.extras,
    }


def cmd_solve(inst: InstanceFile, args, ideal: bool = False) -> tuple[int, dict]:
    ci = CoronaInstance(tuple(inst.functions), inst.spec, inst.delta_claimed)
    solver = ideal_solve if ideal else constrained_solve
    try:
        rep = solver(ci, _grid(args), member_tol=args.tol)
    except NotAMember as exc:
        return EXIT_NEGATIVE, {"status": "non-member", "detail": str(exc)}
    except (NoSolution, AllConstantsZero) as exc:
        return EXIT_NEGATIVE, {"status": "no-solution", "detail": str(exc),
                               "delta_measured": corona_delta(inst.functions, _grid(args))}
    return EXIT_OK, {"status": "ok", **_solve_report(rep)}


def cmd_check(inst: InstanceFile, args) -> tuple[int, dict]:
    cfg = _grid(args)
    members = [check_membership(f, inst.spec) for f in inst.functions]
    delta = corona_delta(inst.functions, cfg)
    is_member = [m.passes(args.tol) for m in members]
    ok = all(is_member) and delta > CORONA_FLOOR
    status = "ok" if ok else ("non-member" if not all(is_member) else "no-corona")
    return (EXIT_OK if ok else EXIT_NEGATIVE), {
        "status": status, "membership": members, "is_member": is_member,
        "delta_measured": delta, "delta_claimed": inst.delta_claimed,
        "sup_sum_f": sup_sum(inst.functions, cfg),
    }


def cmd_norms(inst: InstanceFile, args) -> tuple[int, dict]:
    cfg = _grid(args)
    return EXIT_OK, {"status": "ok",
                     "sup_norms": [sup_norm(f, cfg) for f in inst.functions],
                     "grid_errors": [grid_error(f, cfg) for f in inst.functions]}


def _reduction_report(rc: ReductionCert) -> dict:
    return {"h": rc.h, "inverse_margin": rc.inverse_margin, "membership_h": rc.membership_h,
            "membership_sum": rc.membership_sum, "cert": rc.cert, "path": rc.path}


def cmd_reduce(inst: InstanceFile, args) -> tuple[int, dict]:
    if len(inst.functions) != 2:
        raise InputError(f"functions: reduce needs exactly two functions, got {len(inst.functions)}")
    try:
        pair = UnimodularPair(inst.functions[0], inst.functions[1], inst.spec, tol=args.tol)
    except NotAMember as exc:
        return EXIT_NEGATIVE, {"status": "non-member", "detail": str(exc)}
    budget = SearchBudget(max_degree=args.max_degree, seed=args.seed)
    try:
        rc = reduce_pair(pair, budget, _grid(args))
    except SearchExhausted as exc:
        return EXIT_EXHAUSTED, {"status": "search-exhausted", "best_margin": exc.best_margin}
    except CoronaError as exc:
        return EXIT_NEGATIVE, {"status": "not-unimodular", "detail": str(exc)}
    return EXIT_OK, {"status": "ok", **_reduction_report(rc)}


# --------------------------------------------------------------------------
# conjecture probe

@dataclass(frozen=True)
class ProbeRecord:
    n: int
    delta_measured: float | None
    max_g_norm: float | None
    solver_path: str
    seed: list[int]
    elapsed: float | None = None
    status: str = "ok"


def probe_one(n: int, index: int, seed: int, solver_path: str, delta_min: float,
              delta_max: float, cfg: GridConfig, timing: bool = False) -> ProbeRecord:
    """One probe row; its generator is seeded by ``[seed, n, index]`` so rows are order-independent."""
    key = [seed, n, index]
    rng = np.random.default_rng(key)
    t0 = time.perf_counter()
    try:
        inst = random_instance(rng, n, random_spec(rng), delta_min=delta_min,
                               delta_max=delta_max, cfg=cfg)
        solver = ideal_solve if solver_path == "ideal" else constrained_solve
        rep = solver(inst, cfg)
        delta, gmax, status = rep.delta_measured, max(rep.g_norms), "ok"
    except (CoronaError, RuntimeError) as exc:
        delta, gmax, status = None, None, type(exc).__name__
    elapsed = time.perf_counter() - t0 if timing else None
    return ProbeRecord(n, delta, gmax, solver_path, key, elapsed, status)


def _probe_task(task):
    return probe_one(*task)


def cmd_probe(args) -> tuple[int, dict]:
    cfg = _grid(args)
    tasks = [(n, i, args.seed, args.solver, args.delta_min, args.delta_max, cfg, args.timing)
             for n in range(1, args.n_max + 1) for i in range(args.instances)]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_probe_task, tasks))
    else:
        rows = [_probe_task(t) for t in tasks]
    records = [vars(r) for r in rows]
    return EXIT_OK, {"status": "ok", "seed": args.seed, "n_max": args.n_max,
                     "instances": args.instances, "delta_band": [args.delta_min, args.delta_max],
                     "records": records}


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-8, help="membership tolerance (default 1e-8)")
    common.add_argument("--boundary-samples", type=int, default=512)
    common.add_argument("--grid-rings", type=int, default=64)
    common.add_argument("--max-degree", type=int, default=8, help="degree cap of the reduce search")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", type=Path, default=None, help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(prog="coronab",
                                     description="Bezout solutions and reductions in C + B H^inf.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (("solve", "constrained Bezout solve"),
                       ("solve-ideal", "solve through the constant-plus-ideal splitting"),
                       ("check", "membership and corona margin"),
                       ("reduce", "certified reduction of a unimodular pair"),
                       ("norms", "sup norm of every function")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("instance", type=Path)
    p = sub.add_parser("probe-conjecture", parents=[common],
                       help="chart max |g_k| against n on random instances")
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--instances", type=int, default=50)
    p.add_argument("--solver", choices=("constrained", "ideal"), default="constrained")
    p.add_argument("--delta-min", type=float, default=0.05)
    p.add_argument("--delta-max", type=float, default=0.5)
    p.add_argument("--jobs", type=int, default=1, help="worker processes; output does not depend on it")
    p.add_argument("--timing", action="store_true", help="record elapsed seconds (breaks byte-identity)")
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _grid(args)
        if args.command == "probe-conjecture":
            if args.n_max < 1 or args.instances < 1:
                raise InputError("--n-max and --instances must be positive")
            code, report = cmd_probe(args)
        else:
            try:
                text = args.instance.read_text()
            except OSError as exc:
                raise InputError(f"{args.instance}: {exc.strerror}") from exc
            inst = parse_instance(text)
            if args.command in ("solve", "solve-ideal"):
                code, report = cmd_solve(inst, args, ideal=args.command == "solve-ideal")
            elif args.command == "check":
                code, report = cmd_check(inst, args)
            elif args.command == "reduce":
                code, report = cmd_reduce(inst, args)
            else:
                code, report = cmd_norms(inst, args)
    except (InputError, ValueError) as exc:
        print(f"coronab: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report = {"command": args.command, "exit_code": code, **report}
    text = dumps(report)
    if args.out is None:
        sys.stdout.write(text)
    else:
        args.out.write_text(text)
    return code


def main() -> None:
    sys.exit(run())
