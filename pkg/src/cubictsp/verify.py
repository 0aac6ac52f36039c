"""Independent re-check of a :class:`SolveReport` against its graph.

Every check recomputes its quantity from the graph and the raw
multiplicities instead of trusting derived fields, so corrupted reports are
caught even when their dataclass validation was bypassed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bounds import HK_BUDGET, held_karp_opt
from .bridges import bridge_bound, decompose
from .errors import GraphError
from .graph import Multigraph, components, tour_length, weighted_degrees
from .matchcomb import matchcomb_bound
from .matching import is_perfect_matching
from .ms import contract_degree2_paths, dfs_structure, is_spanning_tree, ms_bound, ms_weights, subcubic_weights
from .report import SolveReport


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class Verdict:
    checks: tuple[Check, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failed(self) -> list[str]:
        return [c.name for c in self.checks if not c.ok]

    def as_dict(self) -> dict:
        return {"ok": self.ok, "failed": self.failed,
                "checks": {c.name: c.ok for c in self.checks}}


def expected_bound(g: Multigraph, algorithm: str, hk_budget: int = HK_BUDGET) -> Fraction | None:
    if algorithm == "ms":
        return ms_bound(g.n)
    if algorithm == "matchcomb":
        return matchcomb_bound(g.n)
    if algorithm == "bridges":
        d = decompose(g)
        return bridge_bound(g.n, d.h, d.singletons)
    if algorithm == "exact" and g.n <= hk_budget:
        return Fraction(held_karp_opt(g, hk_budget))
    return None


def _ms_certificate(g: Multigraph, r: SolveReport, mult) -> list[Check]:
    out = []
    contracted = r.extras.get("contracted")
    qmap = r.extras.get("qmap")
    if contracted is None:
        gc, qmap = g, [(e,) for e in range(g.m)]
    else:
        try:
            gc2, q2 = contract_degree2_paths(g)
        except GraphError as exc:
            return [Check("contraction", False, str(exc))]
        same = gc2 == contracted and [tuple(q) for q in q2] == [tuple(q) for q in qmap]
        out.append(Check("contraction", same, "" if same else "stored contraction differs from recomputed one"))
        gc = gc2
    m = r.matching_used
    perfect = is_perfect_matching(gc, m.edge_ids)
    out.append(Check("matching_perfect", perfect))
    d = dfs_structure(gc, 0)
    out.append(Check("removable_set", d.removable == frozenset(r.r_set)))
    rs = set(r.r_set)
    w = ms_weights(gc, rs) if contracted is None else subcubic_weights(gc, rs, qmap)
    c = sum(w[e] for e in m.edge_ids)
    out.append(Check("edge_count_identity", sum(mult) == g.m + c, f"{sum(mult)} vs {g.m} + {c}"))
    want = [1] * g.m
    for e, path in enumerate(qmap):
        if e in m.edge_ids:
            if e in rs:
                want[path[0]] = 0
                for x in path[1:]:
                    want[x] = 2
            else:
                for x in path:
                    want[x] = 2
    out.append(Check("certificate_consistent", list(mult) == want))
    if r.tree_star is not None:
        ok = is_spanning_tree(gc.n, (gc.edges[e] for e in r.tree_star))
        out.append(Check("tree_star_spanning", ok))
    return out


def verify_report(g: Multigraph, r: SolveReport, hk_budget: int = HK_BUDGET) -> Verdict:
    checks: list[Check] = []
    mult = list(r.h.multiplicity)
    checks.append(Check("base_graph", r.h.base == g))
    checks.append(Check("multiplicity_range", len(mult) == g.m and all(k in (0, 1, 2) for k in mult)))
    if len(mult) != g.m:
        return Verdict(tuple(checks))
    deg = weighted_degrees(g, mult)
    odd = [v for v, x in enumerate(deg) if x % 2]
    checks.append(Check("even_degrees", not odd, f"odd at {odd[:5]}" if odd else ""))
    bare = [v for v, x in enumerate(deg) if x == 0] if g.n > 1 else []
    checks.append(Check("spanning", not bare, f"unreached {bare[:5]}" if bare else ""))
    labels = components(g.n, (g.edges[e] for e, k in enumerate(mult) if k))
    checks.append(Check("connected", all(x == 0 for x in labels)))
    checks.append(Check("h_edges", r.h_edges == sum(mult), f"{r.h_edges} vs {sum(mult)}"))
    try:
        exp = expected_bound(g, r.algorithm, hk_budget)
    except GraphError as exc:
        exp = None
        checks.append(Check("bound_consistent", False, str(exc)))
    else:
        if exp is not None:
            checks.append(Check("bound_consistent", Fraction(r.bound) == exp, f"{r.bound} vs {exp}"))
    checks.append(Check("within_bound", sum(mult) <= r.bound, f"{sum(mult)} vs {r.bound}"))
    try:
        length = tour_length(g, r.tour.order)
        checks.append(Check("tour_valid", length == r.tour.length, f"{r.tour.length} vs {length}"))
    except GraphError as exc:
        length = None
        checks.append(Check("tour_valid", False, str(exc)))
    checks.append(Check("tour_within_h", r.tour.length <= sum(mult)))
    if r.algorithm == "ms" and r.matching_used is not None:
        checks.extend(_ms_certificate(g, r, mult))
    if r.algorithm == "matchcomb" and "average" in r.extras:
        checks.append(Check("average_within_bound", r.extras["average"] <= float(r.bound) + 1e-9))
    return Verdict(tuple(checks))
