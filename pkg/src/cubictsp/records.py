"""JSON-friendly run records and their conversion back into reports."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .graph import EulerianSubgraph, Multigraph, Tour
from .graphio import graph_digest
from .matching import PerfectMatching
from .ms import contract_degree2_paths
from .report import SolveReport
from .verify import Verdict

_EXTRA_KEYS = ("c_matching", "n2", "n3", "average", "per_matching", "lambdas", "rainbows", "core_n",
               "k4_core", "h", "s", "lower_bound", "opt")


def record_from_report(g: Multigraph, r: SolveReport, verdict: Verdict, command: list[str] | None = None,
                       timing: bool = True) -> dict[str, Any]:
    rec: dict[str, Any] = {
        "algorithm": r.algorithm,
        "n": g.n,
        "m": g.m,
        "h_edges": r.h_edges,
        "tour": list(r.tour.order),
        "tour_length": r.tour.length,
        "bound": float(r.bound),
        "bound_exact": str(Fraction(r.bound)),
        "verified": verdict.ok,
        "failed_checks": verdict.failed,
        "wall_ms": round(r.wall_time * 1000.0, 3) if timing else 0,
        "h_multiplicity": list(r.h.multiplicity),
        "matching": sorted(r.matching_used.edge_ids) if r.matching_used is not None else None,
        "r_set": sorted(r.r_set),
        "input_sha256": graph_digest(g),
        "extras": {k: r.extras[k] for k in _EXTRA_KEYS if k in r.extras},
    }
    if command is not None:
        rec["command"] = list(command)
    return rec


def dumps(rec: dict[str, Any]) -> str:
    return json.dumps(rec, sort_keys=True, indent=2) + "\n"


def report_from_record(g: Multigraph, rec: dict[str, Any]) -> SolveReport:
    """Rebuild the parts of a report a verifier looks at.

    The multiplicity vector is installed without validation so a corrupted
    record reaches the verifier instead of failing on load.
    """
    h = object.__new__(EulerianSubgraph)
    object.__setattr__(h, "base", g)
    object.__setattr__(h, "multiplicity", tuple(int(k) for k in rec["h_multiplicity"]))
    extras = dict(rec.get("extras", {}))
    matching = rec.get("matching")
    if rec["algorithm"] == "ms" and matching is not None and extras.get("n2", 0) and extras.get("n3", 0):
        gc, qmap = contract_degree2_paths(g)
        extras["contracted"] = gc
        extras["qmap"] = qmap
    return SolveReport(
        algorithm=rec["algorithm"],
        h=h,
        tour=Tour(tuple(rec["tour"]), int(rec["tour_length"])),
        h_edges=int(rec["h_edges"]),
        bound=Fraction(rec.get("bound_exact", rec["bound"])),
        matching_used=PerfectMatching(frozenset(matching)) if matching is not None else None,
        r_set=frozenset(rec.get("r_set", [])),
        tree_star=None,
        extras=extras,
    )
