from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from cubictsp.graph import Multigraph

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def graph_with_rainbow(host: Multigraph, host_edge: int, p: int) -> tuple[Multigraph, dict[str, list[int]]]:
    """Replace ``host_edge = xy`` by a p-rainbow whose outer ends are x and y."""
    x, y = host.edges[host_edge]
    n = host.n
    us = list(range(n, n + p + 1))
    vs = list(range(n + p + 1, n + 2 * p + 2))
    a, b = n + 2 * p + 2, n + 2 * p + 3
    edges = [e for i, e in enumerate(host.edges) if i != host_edge]
    edges += [(us[0], a), (a, vs[0]), (vs[0], b), (b, us[0]), (a, b)]
    for i in range(p):
        edges += [(us[i], us[i + 1]), (vs[i], vs[i + 1])]
    for i in range(1, p + 1):
        edges.append((us[i], vs[i]))
    edges += [(us[p], x), (vs[p], y)]
    return Multigraph(n + 2 * p + 4, edges), {"u": us + [x], "v": vs + [y], "ab": [a, b]}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def petersen():
    from cubictsp.families import petersen as make

    return make()
