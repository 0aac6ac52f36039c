"""Plain-text graph files.

Format: UTF-8; lines starting with ``#`` are comments; the first data line is
``n m``; then exactly ``m`` lines ``u v`` with 0-indexed endpoints. Repeated
lines are parallel edges. Edge ids follow line order.
"""

from __future__ import annotations

import hashlib
from pathlib import Path

from .errors import InvalidGraphError
from .graph import Multigraph


def parse_graph(text: str) -> Multigraph:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise InvalidGraphError(f"line {lineno}: expected two integers, got {raw!r}")
        try:
            rows.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise InvalidGraphError(f"line {lineno}: expected two integers, got {raw!r}") from None
    if not rows:
        raise InvalidGraphError("missing 'n m' header")
    (n, m), body = rows[0], rows[1:]
    if len(body) != m:
        raise InvalidGraphError(f"header announces {m} edges but {len(body)} edge lines follow")
    return Multigraph(n, body)


def format_graph(g: Multigraph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"{g.n} {g.m}")
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def read_graph(path: str | Path) -> Multigraph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))


def write_graph(g: Multigraph, path: str | Path, comment: str | None = None) -> None:
    Path(path).write_text(format_graph(g, comment), encoding="utf-8")


def graph_digest(g: Multigraph) -> str:
    """SHA-256 of the comment-free serialisation."""
    return hashlib.sha256(format_graph(g).encode("utf-8")).hexdigest()
