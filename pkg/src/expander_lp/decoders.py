"""LP decoding over the fundamental polytope, bit flipping, and an ML oracle."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .code import (
    BitWord,
    TannerGraph,
    as_word,
    codewords,
    hamming_distance,
    is_codeword,
    syndrome,
)
from .lp import Constraint, LinearProgram, LPStatus, Uniqueness, solve

MAX_CHECK_DEGREE = 12


class DecodeStatus(str, Enum):
    DECODED = "decoded"
    FRACTIONAL = "fractional_optimum"
    AMBIGUOUS = "ambiguous_optimum"
    NO_CONVERGENCE = "no_convergence"


@dataclass(frozen=True)
class DecodeResult:
    status: DecodeStatus
    word: BitWord | None = None
    lp_value: Fraction | None = None
    iterations: int = 0
    point: tuple | None = None

    @property
    def decoded(self) -> bool:
        return self.status is DecodeStatus.DECODED


def odd_set_rows(neighborhood: Sequence[int], n: int) -> list[Constraint]:
    """Parity-polytope facets of one check.

    For each odd-size S within the check's neighborhood:
    sum_{S} f - sum_{N \\ S} f <= |S| - 1.
    """
    rows = []
    nbrs = list(neighborhood)
    for size in range(1, len(nbrs) + 1, 2):
        for S in itertools.combinations(nbrs, size):
            coeffs = [0] * n
            for i in nbrs:
                coeffs[i] = -1
            for i in S:
                coeffs[i] = 1
            rows.append(Constraint(tuple(coeffs), "<=", size - 1))
    return rows


def build_decoding_lp(g: TannerGraph, y: Sequence[int]) -> LinearProgram:
    """Fundamental-polytope LP for received word ``y``.

    Cost ``1 - 2 y_i`` per coordinate, so the objective differs from the
    Hamming distance to ``y`` by a constant on integral points.
    """
    y = as_word(y, g.n)
    if g.max_check_degree > MAX_CHECK_DEGREE:
        raise ValueError(
            f"check degree {g.max_check_degree} exceeds {MAX_CHECK_DEGREE}; "
            "the odd-set description would be too large")
    constraints = []
    for nbrs in g.right_adj:
        constraints.extend(odd_set_rows(nbrs, g.n))
    objective = tuple(1 - 2 * b for b in y)
    return LinearProgram(g.n, objective, tuple(constraints), ((0, 1),) * g.n)


def lp_decode(g: TannerGraph, y: Sequence[int]) -> DecodeResult:
    """Exact LP decoding. Success needs an integral optimum proven unique."""
    lp = build_decoding_lp(g, y)
    sol = solve(lp, "exact")
    if sol.status is not LPStatus.OPTIMAL:
        # the polytope is nonempty and bounded, so this means a solver bug
        raise RuntimeError(f"decoding LP reported {sol.status.value}")
    integral = all(v.denominator == 1 for v in sol.point)
    if not integral:
        return DecodeResult(DecodeStatus.FRACTIONAL, lp_value=sol.value, point=sol.point)
    if sol.unique is not Uniqueness.YES:
        return DecodeResult(DecodeStatus.AMBIGUOUS, lp_value=sol.value, point=sol.point)
    word = tuple(int(v) for v in sol.point)
    return DecodeResult(DecodeStatus.DECODED, word, sol.value, point=sol.point)


def flip_decode(g: TannerGraph, y: Sequence[int], max_rounds: int = 1000) -> DecodeResult:
    """Serial greedy bit flipping.

    Each round flips the variable with the most unsatisfied checks, provided
    that is strictly more than half its checks (lowest index on ties).
    """
    word = list(as_word(y, g.n))
    unsat = list(syndrome(g, word))
    for rounds in range(max_rounds + 1):
        if not any(unsat):
            return DecodeResult(DecodeStatus.DECODED, tuple(word), iterations=rounds)
        if rounds == max_rounds:
            break
        best, best_count = None, -1
        for i, checks in enumerate(g.left_adj):
            bad = sum(unsat[j] for j in checks)
            if 2 * bad > len(checks) and bad > best_count:
                best, best_count = i, bad
        if best is None:
            return DecodeResult(DecodeStatus.NO_CONVERGENCE, tuple(word), iterations=rounds)
        word[best] ^= 1
        for j in g.left_adj[best]:
            unsat[j] ^= 1
    return DecodeResult(DecodeStatus.NO_CONVERGENCE, tuple(word), iterations=max_rounds)


def nearest_codeword(g: TannerGraph, y: Sequence[int], *, max_n: int = 20) -> BitWord:
    """Closest codeword to ``y``; ties go to the lexicographically smallest."""
    y = as_word(y, g.n)
    if g.n > max_n:
        raise ValueError(f"exhaustive ML decoding limited to n <= {max_n}")
    return min(codewords(g), key=lambda cw: (hamming_distance(cw, y), cw))


def is_ml_certificate(g: TannerGraph, y: Sequence[int], result: DecodeResult) -> bool:
    """A decoded word must be a codeword at minimum distance from ``y``."""
    if not result.decoded:
        return True
    best = hamming_distance(nearest_codeword(g, y), y)
    return is_codeword(g, result.word) and hamming_distance(result.word, y) == best
