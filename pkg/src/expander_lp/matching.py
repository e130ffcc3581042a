"""q-matchings: every designated variable gets q private checks.

A q-matching with respect to X uses each check at most once and gives each
variable in X at least q checks. Existence is decided by splitting every
x in X into q copies and asking for a matching saturating the copies; here
the copies are implicit (a per-variable quota) and augmenting paths are found
by breadth-first search.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .code import TannerGraph


@dataclass(frozen=True)
class QMatching:
    edges: frozenset[tuple[int, int]]
    q: int
    X: tuple[int, ...]

    def checks_of(self, i: int) -> list[int]:
        return sorted(j for v, j in self.edges if v == i)

    def owner(self) -> dict[int, int]:
        """Map from matched check to its variable."""
        return {j: i for i, j in self.edges}

    def to_json(self) -> list[list[int]]:
        return [list(e) for e in sorted(self.edges)]


def _augment(
    g: TannerGraph,
    root: int,
    members: set[int],
    check_owner: dict[int, int],
) -> bool:
    """Grow ``root``'s share by one check along a shortest augmenting path.

    The search alternates variable -> non-matching edge -> check -> matching
    edge -> variable. Checks are scanned in ascending order and the frontier
    is FIFO, so the path found is deterministic. On success every variable on
    the path trades the check it arrived through for the next one, and the
    root gains a check; quotas of intermediate variables are unchanged.
    """
    parent: dict[int, int] = {}  # check -> variable that reached it
    via: dict[int, int] = {}  # variable -> owned check it was reached through
    frontier = deque([root])
    seen = {root}
    while frontier:
        v = frontier.popleft()
        for j in g.left_adj[v]:
            if j in parent or check_owner.get(j) == v:
                continue
            parent[j] = v
            owner = check_owner.get(j)
            if owner is None:
                while True:
                    u = parent[j]
                    handed_over = via.get(u)
                    check_owner[j] = u
                    if u == root:
                        return True
                    j = handed_over  # type: ignore[assignment]
            if owner in members and owner not in seen:
                seen.add(owner)
                via[owner] = j
                frontier.append(owner)
    return False


def find_q_matching(g: TannerGraph, X: Iterable[int], q: int) -> QMatching | None:
    """Return a q-matching with respect to ``X``, or ``None`` if none exists.

    Each variable of ``X`` ends up with exactly ``q`` checks. Variables are
    served in ascending order, one unit of quota at a time.
    """
    if q < 1:
        raise ValueError("q must be at least 1")
    xs = tuple(sorted(set(X)))
    members = set(xs)
    check_owner: dict[int, int] = {}
    for x in xs:
        for _ in range(q):
            if not _augment(g, x, members, check_owner):
                return None
    edges = frozenset((i, j) for j, i in check_owner.items())
    return QMatching(edges=edges, q=q, X=xs)


def verify_q_matching(g: TannerGraph, M: QMatching) -> bool:
    """Check M is inside E, uses each check once, and meets the quota on X."""
    host = set(g.edges)
    if not M.edges <= host:
        return False
    checks = [j for _, j in M.edges]
    if len(checks) != len(set(checks)):
        return False
    counts: dict[int, int] = {}
    for i, _ in M.edges:
        counts[i] = counts.get(i, 0) + 1
    return all(counts.get(u, 0) >= M.q for u in M.X)


def hall_violation(
    g: TannerGraph, X: Iterable[int], q: int, *, max_size: int = 20
) -> tuple[int, ...] | None:
    """First S of X (by size, then lexicographic) with |N(S)| < q|S|, else None."""
    xs = sorted(set(X))
    if len(xs) > max_size:
        raise ValueError(f"exhaustive Hall check limited to |X| <= {max_size}")
    masks = g._var_masks
    for size in range(1, len(xs) + 1):
        for subset in itertools.combinations(xs, size):
            mask = 0
            for i in subset:
                mask |= masks[i]
            if mask.bit_count() < q * size:
                return subset
    return None
