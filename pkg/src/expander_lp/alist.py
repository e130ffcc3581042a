"""Reading and writing the alist sparse parity-check format.

Layout: ``n m``, ``max_col_degree max_row_degree``, the n column degrees,
the m row degrees, then n lines of 1-indexed check neighbors per variable and
m lines of 1-indexed variable neighbors per check. Neighbor lines are padded
with ``0`` up to the maximum degree.
"""

from __future__ import annotations

from pathlib import Path

from .code import GraphError, TannerGraph, build_graph


class AlistError(GraphError):
    pass


def write_alist(g: TannerGraph) -> str:
    col_deg = [len(a) for a in g.left_adj]
    row_deg = [len(a) for a in g.right_adj]
    max_col, max_row = max(col_deg, default=0), max(row_deg, default=0)

    def padded(adj: tuple[int, ...], width: int) -> str:
        vals = [k + 1 for k in adj] + [0] * (width - len(adj))
        return " ".join(map(str, vals))

    lines = [
        f"{g.n} {g.m}",
        f"{max_col} {max_row}",
        " ".join(map(str, col_deg)),
        " ".join(map(str, row_deg)),
    ]
    lines += [padded(a, max_col) for a in g.left_adj]
    lines += [padded(a, max_row) for a in g.right_adj]
    return "\n".join(lines) + "\n"


def _ints(line: str, what: str) -> list[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError as exc:
        raise AlistError(f"non-integer token in {what}: {line!r}") from exc


def parse_alist(text: str, *, uniform: bool = True) -> TannerGraph:
    """Parse alist text into a graph; raises :class:`AlistError` on inconsistency."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) < 4:
        raise AlistError("alist needs at least four header lines")
    header = _ints(lines[0], "header")
    if len(header) != 2:
        raise AlistError(f"malformed header: {lines[0]!r}")
    n, m = header
    maxes = _ints(lines[1], "max degrees")
    if len(maxes) != 2:
        raise AlistError(f"malformed max-degree line: {lines[1]!r}")
    col_deg = _ints(lines[2], "column degrees")
    row_deg = _ints(lines[3], "row degrees")
    if len(col_deg) != n or len(row_deg) != m:
        raise AlistError(
            f"header claims n={n}, m={m} but degree lines have "
            f"{len(col_deg)} and {len(row_deg)} entries")
    if len(lines) != 4 + n + m:
        raise AlistError(
            f"expected {n} column lists and {m} row lists, found {len(lines) - 4} lists")
    if max(col_deg, default=0) != maxes[0] or max(row_deg, default=0) != maxes[1]:
        raise AlistError("max-degree line disagrees with the degree lists")

    col_edges: set[tuple[int, int]] = set()
    for i in range(n):
        vals = [v for v in _ints(lines[4 + i], f"column {i + 1}") if v != 0]
        if len(vals) != col_deg[i]:
            raise AlistError(f"column {i + 1}: degree {col_deg[i]} but {len(vals)} entries")
        for v in vals:
            if not 1 <= v <= m:
                raise AlistError(f"column {i + 1}: check index {v} out of range")
            col_edges.add((i, v - 1))
    row_edges: set[tuple[int, int]] = set()
    for j in range(m):
        vals = [v for v in _ints(lines[4 + n + j], f"row {j + 1}") if v != 0]
        if len(vals) != row_deg[j]:
            raise AlistError(f"row {j + 1}: degree {row_deg[j]} but {len(vals)} entries")
        for v in vals:
            if not 1 <= v <= n:
                raise AlistError(f"row {j + 1}: variable index {v} out of range")
            row_edges.add((v - 1, j))
    if col_edges != row_edges:
        raise AlistError("column and row lists describe different edge sets")
    if len(col_edges) != sum(col_deg):
        raise AlistError("duplicate entries in column lists")
    return build_graph(n, m, sorted(col_edges), uniform=uniform)


def read_alist(path: str | Path, *, uniform: bool = True) -> TannerGraph:
    return parse_alist(Path(path).read_text(), uniform=uniform)


def save_alist(g: TannerGraph, path: str | Path) -> None:
    Path(path).write_bytes(write_alist(g).encode("ascii"))
