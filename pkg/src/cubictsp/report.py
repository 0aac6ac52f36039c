"""Result record shared by all solvers."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .cycles import Cycle
from .graph import EulerianSubgraph, Tour
from .matching import PerfectMatching


@dataclass
class SolveReport:
    """Solution plus the certificates a verifier needs to re-check it.

    ``matching_used``, ``r_set`` and ``tree_star`` refer to edge ids of the
    graph the matching was solved on; for subcubic inputs that is the
    contracted graph stored in ``extras["contracted"]``.
    """

    algorithm: str
    h: EulerianSubgraph
    tour: Tour
    h_edges: int
    bound: Fraction
    matching_used: PerfectMatching | None = None
    r_set: frozenset[int] = frozenset()
    tree_star: frozenset[int] | None = None
    cycle_cover: list[Cycle] | None = None
    wall_time: float = 0.0
    extras: dict[str, Any] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.h.base.n

    @property
    def m(self) -> int:
        return self.h.base.m
