"""Tanner graphs, binary words and brute-force code oracles.

Variable nodes are indexed ``0..n-1`` and check nodes ``0..m-1``. Words are
plain tuples of 0/1 ints so they hash and compare cleanly; anything
sequence-like is accepted on input.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import comb, floor
from typing import Iterable, Iterator, Sequence

import numpy as np

BitWord = tuple[int, ...]


class GraphError(ValueError):
    """Raised for malformed Tanner graph input."""


@dataclass(frozen=True)
class TannerGraph:
    """Bipartite parity-check graph with sorted adjacency lists."""

    n: int
    m: int
    left_adj: tuple[tuple[int, ...], ...]
    right_adj: tuple[tuple[int, ...], ...]
    _var_masks: tuple[int, ...] = field(init=False, repr=False, compare=False)
    _check_masks: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "_var_masks",
            tuple(sum(1 << j for j in checks) for checks in self.left_adj))
        object.__setattr__(
            self, "_check_masks",
            tuple(sum(1 << i for i in vs) for vs in self.right_adj))

    @property
    def c(self) -> int:
        """Left degree. Only meaningful for left-regular graphs."""
        return len(self.left_adj[0]) if self.n else 0

    @property
    def is_left_regular(self) -> bool:
        return len({len(a) for a in self.left_adj}) <= 1

    @property
    def max_check_degree(self) -> int:
        return max((len(a) for a in self.right_adj), default=0)

    @property
    def edges(self) -> list[tuple[int, int]]:
        """All (variable, check) pairs, sorted."""
        return [(i, j) for i, checks in enumerate(self.left_adj) for j in checks]

    def neighbors(self, nodes: Iterable[int]) -> set[int]:
        """Check neighborhood N(S) of a set of variables."""
        out: set[int] = set()
        for i in nodes:
            out.update(self.left_adj[i])
        return out

    def neighbor_mask(self, nodes: Iterable[int]) -> int:
        mask = 0
        for i in nodes:
            mask |= self._var_masks[i]
        return mask

    def parity_check_matrix(self) -> np.ndarray:
        h = np.zeros((self.m, self.n), dtype=np.uint8)
        for i, checks in enumerate(self.left_adj):
            h[list(checks), i] = 1
        return h

    def permuted(self, perm: Sequence[int]) -> TannerGraph:
        """Relabel variables: old variable ``i`` becomes ``perm[i]``."""
        edges = [(perm[i], j) for i, j in self.edges]
        return build_graph(self.n, self.m, edges, uniform=self.is_left_regular)


def build_graph(
    n: int,
    m: int,
    edges: Iterable[tuple[int, int]],
    *,
    uniform: bool = True,
) -> TannerGraph:
    """Validate an edge list and build a :class:`TannerGraph`.

    Raises :class:`GraphError` on duplicate edges, out-of-range indices,
    checks of degree zero, or (with ``uniform``) unequal variable degrees.
    """
    left: list[list[int]] = [[] for _ in range(n)]
    right: list[list[int]] = [[] for _ in range(m)]
    seen: set[tuple[int, int]] = set()
    for i, j in edges:
        if not (0 <= i < n and 0 <= j < m):
            raise GraphError(f"edge ({i}, {j}) out of range for n={n}, m={m}")
        if (i, j) in seen:
            raise GraphError(f"duplicate edge ({i}, {j})")
        seen.add((i, j))
        left[i].append(j)
        right[j].append(i)
    if any(not vs for vs in right):
        raise GraphError("every check node needs at least one neighbor")
    if uniform and len({len(a) for a in left}) > 1:
        raise GraphError("variable degrees are not uniform")
    return TannerGraph(
        n=n,
        m=m,
        left_adj=tuple(tuple(sorted(a)) for a in left),
        right_adj=tuple(tuple(sorted(a)) for a in right),
    )


def generate_regular(
    n: int, m: int, c: int, seed: int, *, max_restarts: int = 1000
) -> TannerGraph:
    """Sample a c-left-regular bipartite graph from a seeded configuration model.

    Check stubs are spread as evenly as possible over the ``m`` checks (extra
    stubs go to randomly chosen checks). Each variable then draws ``c``
    distinct checks with probability proportional to remaining stubs; a dead
    end restarts the draw. Checks left with degree zero are pruned, so the
    returned graph may have fewer than ``m`` checks.
    """
    if m < 1 or n < 1 or c < 1:
        raise GraphError("n, m and c must be positive")
    if c > m:
        raise GraphError(f"cannot give {c} distinct checks to a variable with m={m}")
    rng = np.random.default_rng(seed)
    total = n * c
    for _ in range(max_restarts):
        capacity = np.full(m, total // m, dtype=np.int64)
        extra = rng.choice(m, size=total % m, replace=False)
        capacity[extra] += 1
        edges = []
        ok = True
        for i in range(n):
            if np.count_nonzero(capacity) < c:
                ok = False
                break
            p = capacity / capacity.sum()
            chosen = rng.choice(m, size=c, replace=False, p=p)
            capacity[chosen] -= 1
            edges.extend((i, int(j)) for j in chosen)
        if not ok:
            continue
        used = sorted({j for _, j in edges})
        relabel = {j: k for k, j in enumerate(used)}
        return build_graph(n, len(used), [(i, relabel[j]) for i, j in edges])
    raise GraphError(f"resampling budget of {max_restarts} restarts exhausted")


def as_word(bits: Iterable[int], length: int | None = None) -> BitWord:
    word = tuple(int(b) for b in bits)
    if any(b not in (0, 1) for b in word):
        raise ValueError("words must be over {0, 1}")
    if length is not None and len(word) != length:
        raise ValueError(f"expected a word of length {length}, got {len(word)}")
    return word


def word_from_support(n: int, support: Iterable[int]) -> BitWord:
    bits = [0] * n
    for i in support:
        bits[i] = 1
    return tuple(bits)


def support(w: Sequence[int]) -> list[int]:
    return [i for i, b in enumerate(w) if b]


def hamming_distance(x: Sequence[int], y: Sequence[int]) -> int:
    return sum(a != b for a, b in zip(x, y, strict=True))


def xor_words(x: Sequence[int], y: Sequence[int]) -> BitWord:
    return tuple(a ^ b for a, b in zip(x, y, strict=True))


def syndrome(g: TannerGraph, w: Sequence[int]) -> BitWord:
    w = as_word(w, g.n)
    return tuple(sum(w[i] for i in vs) & 1 for vs in g.right_adj)


def is_codeword(g: TannerGraph, w: Sequence[int]) -> bool:
    return not any(syndrome(g, w))


# --- expansion ---------------------------------------------------------------


@dataclass(frozen=True)
class ExpansionParams:
    """Exact expansion parameters (c, epsilon, delta)."""

    epsilon: Fraction
    delta: Fraction
    c: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "epsilon", Fraction(self.epsilon))
        object.__setattr__(self, "delta", Fraction(self.delta))
        if not 0 < self.epsilon <= 1:
            raise ValueError(f"epsilon must lie in (0, 1], got {self.epsilon}")
        if not 0 < self.delta <= 1:
            raise ValueError(f"delta must lie in (0, 1], got {self.delta}")
        if self.c < 1:
            raise ValueError("c must be positive")

    @property
    def eps_c(self) -> Fraction:
        return self.epsilon * self.c

    @property
    def eps_c_integral(self) -> bool:
        return self.eps_c.denominator == 1

    def size_bound(self, n: int) -> int:
        """floor(delta * n), the largest subset size expansion covers."""
        return floor(self.delta * n)


class CertStatus(str, Enum):
    CERTIFIED = "certified"
    VIOLATED = "violated"
    UNVERIFIED = "unverified"


@dataclass(frozen=True)
class ExpansionCertificate:
    status: CertStatus
    violating_subset: tuple[int, ...] | None
    checked_budget: int

    @property
    def certified(self) -> bool:
        return self.status is CertStatus.CERTIFIED


def certify_expansion(
    g: TannerGraph, params: ExpansionParams, budget: int = 10**6
) -> ExpansionCertificate:
    """Exhaustively test |N(S)| >= epsilon*c*|S| for all 1 <= |S| <= floor(delta*n).

    Subsets are visited by increasing size, lexicographically within a size,
    so a reported violation is the first one in that order. At most
    ``budget`` subsets are examined; running out gives ``unverified``.
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    if not g.is_left_regular or g.c != params.c:
        raise ValueError(f"graph is not {params.c}-left-regular")
    masks = g._var_masks
    checked = 0
    for size in range(1, params.size_bound(g.n) + 1):
        need = params.eps_c * size
        for subset in itertools.combinations(range(g.n), size):
            if checked >= budget:
                return ExpansionCertificate(CertStatus.UNVERIFIED, None, checked)
            checked += 1
            mask = 0
            for i in subset:
                mask |= masks[i]
            if mask.bit_count() < need:
                return ExpansionCertificate(CertStatus.VIOLATED, subset, checked)
    return ExpansionCertificate(CertStatus.CERTIFIED, None, checked)


def subset_count(n: int, max_size: int) -> int:
    return sum(comb(n, k) for k in range(1, max_size + 1))


def expansion_deficit(left_masks: Sequence[int], max_size: int, eps_c: Fraction) -> Fraction:
    """Sum of eps*c*|S| - |N(S)| over the subsets that fall short."""
    num, den = eps_c.numerator, eps_c.denominator
    total = 0
    for size in range(1, max_size + 1):
        need = num * size
        for subset in itertools.combinations(range(len(left_masks)), size):
            mask = 0
            for i in subset:
                mask |= left_masks[i]
            short = need - den * mask.bit_count()
            if short > 0:
                total += short
    return Fraction(total, den)


def search_expander(
    n: int,
    m: int,
    c: int,
    params: ExpansionParams,
    seed: int,
    *,
    max_steps: int = 50_000,
) -> TannerGraph | None:
    """Seeded local search for a graph that certifies at ``params``.

    Starts from :func:`generate_regular` and proposes swaps of the check
    endpoints of two random edges (degrees on both sides are preserved).
    A swap is kept when it does not increase :func:`expansion_deficit`.
    Returns ``None`` if the deficit is still positive after ``max_steps``.
    """
    g = generate_regular(n, m, c, seed)
    rng = np.random.default_rng([seed, 1])
    left = [set(a) for a in g.left_adj]
    k = params.size_bound(n)

    def masks() -> list[int]:
        return [sum(1 << j for j in a) for a in left]

    score = expansion_deficit(masks(), k, params.eps_c)
    for _ in range(max_steps):
        if score == 0:
            return build_graph(n, g.m, [(i, j) for i, a in enumerate(left) for j in a])
        i1, i2 = (int(v) for v in rng.choice(n, size=2, replace=False))
        j1 = sorted(left[i1])[rng.integers(c)]
        j2 = sorted(left[i2])[rng.integers(c)]
        if j1 == j2 or j2 in left[i1] or j1 in left[i2]:
            continue
        left[i1].symmetric_difference_update((j1, j2))
        left[i2].symmetric_difference_update((j1, j2))
        new = expansion_deficit(masks(), k, params.eps_c)
        if new <= score:
            score = new
        else:
            left[i1].symmetric_difference_update((j1, j2))
            left[i2].symmetric_difference_update((j1, j2))
    if score == 0:
        return build_graph(n, g.m, [(i, j) for i, a in enumerate(left) for j in a])
    return None


# --- small-code oracles ------------------------------------------------------


def nullspace_basis(g: TannerGraph) -> np.ndarray:
    """Basis of the code (kernel of H over F2), one codeword per row."""
    h = g.parity_check_matrix().copy()
    rows, cols = h.shape
    pivots: list[int] = []
    r = 0
    for col in range(cols):
        hits = np.nonzero(h[r:, col])[0]
        if hits.size == 0:
            continue
        p = r + hits[0]
        h[[r, p]] = h[[p, r]]
        others = np.nonzero(h[:, col])[0]
        for k in others:
            if k != r:
                h[k] ^= h[r]
        pivots.append(col)
        r += 1
        if r == rows:
            break
    free = [col for col in range(cols) if col not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.uint8)
    for b, f in enumerate(free):
        basis[b, f] = 1
        for row, pc in enumerate(pivots):
            basis[b, pc] = h[row, f]
    return basis


def dimension(g: TannerGraph) -> int:
    return nullspace_basis(g).shape[0]


def codewords(g: TannerGraph) -> Iterator[BitWord]:
    """All codewords, in the order of the binary counter over the basis."""
    basis = nullspace_basis(g).astype(np.int64)
    for coeffs in itertools.product((0, 1), repeat=basis.shape[0]):
        word = np.array(coeffs, dtype=np.int64) @ basis % 2 if coeffs else np.zeros(g.n, int)
        yield tuple(int(b) for b in word)


def random_codeword(g: TannerGraph, rng: np.random.Generator) -> BitWord:
    basis = nullspace_basis(g)
    if basis.shape[0] == 0:
        return (0,) * g.n
    coeffs = rng.integers(0, 2, size=basis.shape[0])
    return tuple(int(b) for b in coeffs @ basis.astype(np.int64) % 2)


def min_distance(g: TannerGraph, weight_cap: int) -> int | None:
    """Minimum weight of a nonzero codeword, or ``None`` if it exceeds ``weight_cap``."""
    masks = g._var_masks
    for w in range(1, min(weight_cap, g.n) + 1):
        for subset in itertools.combinations(range(g.n), w):
            acc = 0
            for i in subset:
                acc ^= masks[i]
            if acc == 0:
                return w
    return None
