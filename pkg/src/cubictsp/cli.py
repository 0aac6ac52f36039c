"""Command-line front end.

Exit codes: 0 success; 1 result failed verification or its bound;
2 usage error; 3 bridge found; 4 degree violation; 5 budget exceeded;
6 any other invalid input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from .bounds import HK_BUDGET, LP_BUDGET, held_karp_tour, ser_value, solve_exact
from .bridges import bridge_lower_bound, solve_with_bridges
from .errors import BridgeError, BudgetExceededError, DegreeError, GraphError
from .families import FAMILIES, FamilySpec, gen_family
from .graphio import format_graph, graph_digest, read_graph
from .matchcomb import solve_matchcomb
from .matching import ENUM_BUDGET, THREE_CUT_BUDGET
from .ms import solve_ms
from .records import dumps, record_from_report, report_from_record
from .report import SolveReport
from .verify import verify_report

EXIT_OK = 0
EXIT_UNVERIFIED = 1
EXIT_USAGE = 2
EXIT_BRIDGE = 3
EXIT_DEGREE = 4
EXIT_BUDGET = 5
EXIT_INVALID = 6

ALGORITHMS = ("ms", "matchcomb", "bridges", "exact")
BENCH_COLUMNS = ("family", "param", "n", "algorithm", "h_edges", "bound", "lower_bound", "ratio", "wall_ms", "status")


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, BridgeError):
        return EXIT_BRIDGE
    if isinstance(exc, DegreeError):
        return EXIT_DEGREE
    if isinstance(exc, BudgetExceededError):
        return EXIT_BUDGET
    return EXIT_INVALID


def run_solver(g, algorithm: str, enum_budget: int = ENUM_BUDGET, hk_budget: int = HK_BUDGET,
               cut_budget: int = THREE_CUT_BUDGET) -> SolveReport:
    if algorithm == "ms":
        return solve_ms(g)
    if algorithm == "matchcomb":
        return solve_matchcomb(g, enum_budget=enum_budget, cut_budget=cut_budget)
    if algorithm == "bridges":
        return solve_with_bridges(g)
    if algorithm == "exact":
        return solve_exact(g, budget=hk_budget)
    raise GraphError(f"unknown algorithm {algorithm!r}")


# ---------------------------------------------------------------------------
# verbs


def cmd_gen(args) -> int:
    g = gen_family(FamilySpec(args.family, args.param, seed=args.seed, simple=args.simple))
    label = args.family if args.param is None else f"{args.family} {args.param}"
    text = format_graph(g, comment=f"{label} seed={args.seed}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_solve(args) -> int:
    g = read_graph(args.graph)
    r = run_solver(g, args.algorithm, args.enum_budget, args.hk_budget)
    verdict = verify_report(g, r, hk_budget=args.hk_budget)
    rec = record_from_report(g, r, verdict, command=args.argv, timing=not args.no_timing)
    sys.stdout.write(dumps(rec))
    return EXIT_OK if verdict.ok and r.h_edges <= r.bound else EXIT_UNVERIFIED


def cmd_verify(args) -> int:
    g = read_graph(args.graph)
    with open(args.record, encoding="utf-8") as fh:
        rec = json.load(fh)
    verdict = verify_report(g, report_from_record(g, rec), hk_budget=args.hk_budget)
    out = verdict.as_dict()
    if rec.get("input_sha256") not in (None, graph_digest(g)):
        out["ok"] = False
        out["failed"].append("input_sha256")
    sys.stdout.write(json.dumps(out, sort_keys=True, indent=2) + "\n")
    return EXIT_OK if out["ok"] else EXIT_UNVERIFIED


def cmd_oracle(args) -> int:
    g = read_graph(args.graph)
    t0 = time.perf_counter()
    tour = held_karp_tour(g, budget=args.hk_budget)
    out = {
        "n": g.n,
        "m": g.m,
        "held_karp": tour.length,
        "tour": list(tour.order),
        "lower_bound": bridge_lower_bound(g),
        "wall_ms": 0 if args.no_timing else round((time.perf_counter() - t0) * 1000.0, 3),
    }
    sys.stdout.write(json.dumps(out, sort_keys=True, indent=2) + "\n")
    return EXIT_OK


def cmd_ser(args) -> int:
    g = read_graph(args.graph)
    t0 = time.perf_counter()
    res = ser_value(g, budget=args.lp_budget)
    out = {
        "n": g.n,
        "ser": res.value,
        "iterations": res.iterations,
        "cuts": [sorted(c) for c in res.active_cuts],
        "wall_ms": 0 if args.no_timing else round((time.perf_counter() - t0) * 1000.0, 3),
    }
    sys.stdout.write(json.dumps(out, sort_keys=True, indent=2) + "\n")
    return EXIT_OK


def parse_params(text: str) -> list[int]:
    """``"a:b:s"`` (inclusive range), ``"a:b"`` (step 1), ``"x,y,z"`` or empty."""
    text = text.strip()
    if not text:
        return []
    if ":" in text:
        parts = [int(p) for p in text.split(":")]
        if len(parts) == 2:
            parts.append(1)
        lo, hi, step = parts
        if step <= 0:
            raise ValueError("step must be positive")
        return list(range(lo, hi + 1, step))
    return [int(p) for p in text.split(",")]


def _bench_instance(task) -> list[dict]:
    family, param, seed, simple, algorithms, budgets, timing = task
    rows = []
    base = {"family": family, "param": "" if param is None else param}
    try:
        g = gen_family(FamilySpec(family, param, seed=seed, simple=simple))
    except GraphError as exc:
        return [dict(base, n="", algorithm=a, h_edges="", bound="", lower_bound="", ratio="", wall_ms="",
                     status=f"error:{type(exc).__name__}") for a in algorithms]
    lower: float | None = None
    ser_ms = 0.0
    ser_status = "ok"
    if "ser" in algorithms:
        t0 = time.perf_counter()
        try:
            lower = ser_value(g, budget=budgets["lp"]).value
        except GraphError as exc:
            ser_status = f"error:{type(exc).__name__}"
        ser_ms = (time.perf_counter() - t0) * 1000.0
    if lower is None:
        try:
            lower = float(bridge_lower_bound(g))
        except GraphError:
            lower = float(g.n)
    for alg in algorithms:
        row = dict(base, n=g.n, algorithm=alg, h_edges="", bound="", lower_bound=_fmt(lower), ratio="",
                   wall_ms="", status="ok")
        if alg == "ser":
            row["status"] = ser_status
            row["wall_ms"] = _fmt(ser_ms) if timing else 0
            rows.append(row)
            continue
        try:
            r = run_solver(g, alg, budgets["enum"], budgets["hk"])
            verdict = verify_report(g, r, hk_budget=budgets["hk"])
            value = r.tour.length if alg == "exact" else r.h_edges
            row.update(h_edges=value, bound=_fmt(float(r.bound)),
                       ratio=_fmt(value / lower) if lower else "",
                       wall_ms=_fmt(r.wall_time * 1000.0) if timing else 0,
                       status="ok" if verdict.ok else "unverified:" + "+".join(verdict.failed))
        except GraphError as exc:
            row["status"] = f"error:{type(exc).__name__}"
        rows.append(row)
    return rows


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def cmd_bench(args) -> int:
    algorithms = [a.strip() for a in args.algorithms.split(",") if a.strip()]
    for a in algorithms:
        if a not in ALGORITHMS + ("ser",):
            raise GraphError(f"unknown algorithm {a!r}")
    params: list[int | None] = parse_params(args.params) if args.params is not None else [None]
    budgets = {"enum": args.enum_budget, "hk": args.hk_budget, "lp": args.lp_budget}
    tasks = [(args.family, p, args.seed, args.simple, algorithms, budgets, not args.no_timing) for p in params]
    if args.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            chunks = list(pool.map(_bench_instance, tasks))
    else:
        chunks = [_bench_instance(t) for t in tasks]
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=BENCH_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for rows in chunks:
        writer.writerows(rows)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cubictsp", description="Graph-TSP approximations for (sub)cubic graphs.")
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp, *, seed=False, budgets=False, timing=False):
        if seed:
            sp.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
        if budgets:
            sp.add_argument("--enum-budget", type=int, default=ENUM_BUDGET, help="max vertices for matching enumeration")
            sp.add_argument("--hk-budget", type=int, default=HK_BUDGET, help="max vertices for Held-Karp")
            sp.add_argument("--lp-budget", type=int, default=LP_BUDGET, help="max vertices for the SER LP")
        if timing:
            sp.add_argument("--no-timing", action="store_true", help="report wall_ms as 0 for byte-stable output")

    g = sub.add_parser("gen", help="write a family graph")
    g.add_argument("family", choices=FAMILIES)
    g.add_argument("param", type=int, nargs="?")
    g.add_argument("-o", "--out")
    g.add_argument("--simple", action="store_true", help="reject parallel edges (random families)")
    common(g, seed=True)
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", help="solve a graph file and print a JSON record")
    s.add_argument("graph")
    s.add_argument("-a", "--algorithm", choices=ALGORITHMS, default="ms")
    common(s, seed=True, budgets=True, timing=True)
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="re-check a JSON record against its graph")
    v.add_argument("graph")
    v.add_argument("record")
    common(v, budgets=True)
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", help="exact optimum by Held-Karp")
    o.add_argument("graph")
    common(o, budgets=True, timing=True)
    o.set_defaults(func=cmd_oracle)

    r = sub.add_parser("ser", help="subtour elimination LP value")
    r.add_argument("graph")
    common(r, budgets=True, timing=True)
    r.set_defaults(func=cmd_ser)

    b = sub.add_parser("bench", help="sweep a family and write CSV")
    b.add_argument("family", choices=FAMILIES)
    b.add_argument("--params", help="'lo:hi:step', 'lo:hi' or 'a,b,c'; empty string for no rows")
    b.add_argument("--algorithms", default="ms", help="comma list from ms,matchcomb,bridges,exact,ser")
    b.add_argument("--simple", action="store_true")
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("-o", "--out")
    common(b, seed=True, budgets=True, timing=True)
    b.set_defaults(func=cmd_bench)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    args.argv = argv
    try:
        return args.func(args)
    except GraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exit_code_for(exc)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
