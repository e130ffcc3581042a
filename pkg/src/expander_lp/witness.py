"""Dual witnesses for LP decoding of expander codes.

Given an error set U on a (c, eps, delta)-expander, the construction is:

1. dilate U by every clean variable sharing at least (2 eps - 1) c checks
   with N(U);
2. find an (eps c)-matching for the dilated set;
3. put weight -x on each matching edge at an error variable, +x on the other
   edges of that check, and 0 everywhere else.

The resulting edge weights satisfy the two feasibility conditions checked by
:func:`verify_feasible`, which is written to work on any weight assignment.
All arithmetic is in :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import Iterable, Mapping

from .code import CertStatus, ExpansionParams, TannerGraph
from .matching import QMatching, find_q_matching, verify_q_matching

TWO_THIRDS = Fraction(2, 3)


class WitnessError(Exception):
    """A stage of the witness pipeline failed; ``stage`` names which one."""

    def __init__(self, stage: str, message: str):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage


def fraction_str(v: Fraction) -> str:
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


@dataclass(frozen=True)
class ErrorContext:
    U: frozenset[int]
    gamma: tuple[int, ...]

    @classmethod
    def from_errors(cls, n: int, U: Iterable[int]) -> ErrorContext:
        U = frozenset(U)
        return cls(U, tuple(-1 if i in U else 1 for i in range(n)))


@dataclass(frozen=True)
class DilatedErrorSet:
    U: frozenset[int]
    U_hat: frozenset[int]

    @property
    def U_prime(self) -> frozenset[int]:
        return self.U | self.U_hat


@dataclass(frozen=True)
class WeightAssignment:
    tau: Mapping[tuple[int, int], Fraction]
    x: Fraction

    def sign(self, edge: tuple[int, int]) -> str:
        v = self.tau[edge]
        return "-" if v < 0 else "+" if v > 0 else "0"


def _require_two_thirds(params: ExpansionParams) -> None:
    if params.epsilon <= TWO_THIRDS:
        raise ValueError(f"need epsilon > 2/3, got {params.epsilon}")


def overlap_threshold(params: ExpansionParams) -> Fraction:
    return (2 * params.epsilon - 1) * params.c


def dilate(g: TannerGraph, U: Iterable[int], params: ExpansionParams) -> DilatedErrorSet:
    U = frozenset(U)
    thresh = overlap_threshold(params)
    nu = g.neighbor_mask(U)
    masks = g._var_masks
    hat = frozenset(
        i for i in range(g.n) if i not in U and (masks[i] & nu).bit_count() >= thresh
    )
    return DilatedErrorSet(U, hat)


@dataclass(frozen=True)
class DilationReport:
    holds: bool
    premise_ok: bool
    size_U: int
    size_U_hat: int
    delta_n: Fraction
    hat_bound: Fraction
    hat_within_bound: bool

    @property
    def size_U_prime(self) -> int:
        return self.size_U + self.size_U_hat


def dilation_premise(params: ExpansionParams, n: int) -> Fraction:
    """Strict upper limit on |U| under which |U'| <= delta n is guaranteed."""
    _require_two_thirds(params)
    e = params.epsilon
    return (3 * e - 2) / (2 * e - 1) * params.size_bound(n)


def check_dilation_bound(
    g: TannerGraph, U: Iterable[int], params: ExpansionParams, *, strict: bool = True
) -> DilationReport:
    """Check |U'| <= delta n and report |U_hat| against (1-eps)/(3eps-2)|U|.

    With ``strict`` a violated premise raises :class:`WitnessError`;
    otherwise it is only flagged in the report.
    """
    U = frozenset(U)
    premise_ok = len(U) < dilation_premise(params, g.n)
    if strict and not premise_ok:
        raise WitnessError(
            "dilation_bound",
            f"|U|={len(U)} is not below {dilation_premise(params, g.n)}")
    d = dilate(g, U, params)
    e = params.epsilon
    hat_bound = (1 - e) / (3 * e - 2) * len(U)
    delta_n = params.delta * g.n
    return DilationReport(
        holds=len(d.U_prime) <= delta_n,
        premise_ok=premise_ok,
        size_U=len(U),
        size_U_hat=len(d.U_hat),
        delta_n=delta_n,
        hat_bound=hat_bound,
        hat_within_bound=len(d.U_hat) <= hat_bound,
    )


def x_interval(params: ExpansionParams) -> tuple[Fraction, Fraction | None]:
    """Open interval of admissible weight magnitudes x.

    lo = 1/((2eps-1)c), hi = min(1/((1-eps)c), 1/((2eps-1)c - 1)); a term
    with zero denominator imposes no bound, and ``hi=None`` means no upper
    limit at all.
    """
    if not params.eps_c_integral:
        raise ValueError(f"eps*c = {params.eps_c} must be an integer")
    if params.epsilon <= TWO_THIRDS:
        raise ValueError(f"x interval is empty for epsilon = {params.epsilon} <= 2/3")
    e, c = params.epsilon, params.c
    lo = 1 / ((2 * e - 1) * c)
    caps = [d for d in ((1 - e) * c, (2 * e - 1) * c - 1) if d > 0]
    hi = min(1 / d for d in caps) if caps else None
    assert hi is None or lo < hi
    return lo, hi


def choose_x(params: ExpansionParams) -> Fraction:
    lo, hi = x_interval(params)
    return 2 * lo if hi is None else (lo + hi) / 2


def assign_weights(
    g: TannerGraph, U: Iterable[int], M: QMatching, params: ExpansionParams
) -> WeightAssignment:
    U = frozenset(U)
    dil = dilate(g, U, params)
    x = choose_x(params)
    q = int(params.eps_c)
    if M.q < q or not dil.U_prime <= set(M.X) or not verify_q_matching(g, M):
        raise WitnessError("weights", "M is not a verified (eps c)-matching for U'")
    tau = {e: Fraction(0) for e in g.edges}
    for j, i in M.owner().items():
        if i in U:
            for k in g.right_adj[j]:
                tau[(k, j)] = -x if k == i else x
    return WeightAssignment(tau, x)


@dataclass(frozen=True)
class FeasibilityReport:
    feasible: bool
    pairs_ok: bool
    sums_ok: bool
    node_sums: tuple[Fraction, ...]
    slack: tuple[Fraction, ...]  # gamma_i - sum, must be > 0
    bad_checks: tuple[int, ...]
    bad_nodes: tuple[int, ...]


def verify_feasible(
    g: TannerGraph, w: WeightAssignment, ctx: ErrorContext
) -> FeasibilityReport:
    """Check both feasibility conditions on an arbitrary weight assignment.

    (1) tau[i,j] + tau[i',j] >= 0 for every check j and distinct i, i' in N(j);
    (2) sum_{j in N(i)} tau[i,j] < gamma_i for every variable i.
    """
    try:
        tau = {e: Fraction(w.tau[e]) for e in g.edges}
    except KeyError as exc:
        raise WitnessError("verify", f"no weight for edge {exc.args[0]}") from None
    bad_checks = []
    for j, vs in enumerate(g.right_adj):
        ok = all(
            tau[(a, j)] + tau[(b, j)] >= 0
            for pos, a in enumerate(vs) for b in vs[pos + 1:]
        )
        if not ok:
            bad_checks.append(j)
    sums = tuple(sum((tau[(i, j)] for j in g.left_adj[i]), Fraction(0)) for i in range(g.n))
    slack = tuple(ctx.gamma[i] - s for i, s in enumerate(sums))
    bad_nodes = tuple(i for i, s in enumerate(slack) if not s > 0)
    return FeasibilityReport(
        feasible=not bad_checks and not bad_nodes,
        pairs_ok=not bad_checks,
        sums_ok=not bad_nodes,
        node_sums=sums,
        slack=slack,
        bad_checks=tuple(bad_checks),
        bad_nodes=bad_nodes,
    )


def pairwise_ok_fast(g: TannerGraph, w: WeightAssignment) -> bool:
    """Condition (1) via the two smallest weights at each check."""
    for j, vs in enumerate(g.right_adj):
        if len(vs) >= 2:
            a, b = sorted(Fraction(w.tau[(i, j)]) for i in vs)[:2]
            if a + b < 0:
                return False
    return True


def case_bounds(
    g: TannerGraph, dil: DilatedErrorSet, w: WeightAssignment, params: ExpansionParams
) -> list[tuple[str, Fraction, Fraction]]:
    """Per-node (case, weight sum, bound from the three-case analysis).

    Error nodes: c x (1 - 2 eps); dilation nodes: (1 - eps) c x; the rest:
    ((2 eps - 1) c - 1) x.
    """
    e, c, x = params.epsilon, params.c, w.x
    out = []
    for i in range(g.n):
        s = sum((Fraction(w.tau[(i, j)]) for j in g.left_adj[i]), Fraction(0))
        if i in dil.U:
            out.append(("error", s, c * x * (1 - 2 * e)))
        elif i in dil.U_hat:
            out.append(("dilated", s, (1 - e) * c * x))
        else:
            out.append(("clean", s, ((2 * e - 1) * c - 1) * x))
    return out


@dataclass(frozen=True)
class Witness:
    weights: WeightAssignment
    dilation: DilatedErrorSet
    matching: QMatching
    report: FeasibilityReport
    certificate: CertStatus | None = None
    notes: tuple[str, ...] = field(default=())

    def to_json(self) -> dict:
        return witness_json(self.weights, self.dilation)


def witness_json(w: WeightAssignment, dil: DilatedErrorSet) -> dict:
    return {
        "x": fraction_str(w.x),
        "edges": [[i, j, w.sign((i, j))] for (i, j) in sorted(w.tau)],
        "U": sorted(dil.U),
        "U_hat": sorted(dil.U_hat),
    }


def construct_witness(
    g: TannerGraph,
    U: Iterable[int],
    params: ExpansionParams,
    *,
    certificate: CertStatus | None = None,
) -> Witness:
    """Dilate, match, weight, verify. Raises :class:`WitnessError` naming the failed stage."""
    U = frozenset(U)
    if params.c != g.c or not g.is_left_regular:
        raise WitnessError("params", f"graph is not {params.c}-left-regular")
    try:
        x_interval(params)
    except ValueError as exc:
        raise WitnessError("params", str(exc)) from None
    dil = dilate(g, U, params)
    if len(dil.U_prime) > params.delta * g.n:
        raise WitnessError(
            "dilation_bound",
            f"|U'| = {len(dil.U_prime)} exceeds delta*n = {params.delta * g.n}")
    q = int(params.eps_c)
    notes: list[str] = []
    if dil.U_prime:
        M = find_q_matching(g, dil.U_prime, q)
        if M is None:
            raise WitnessError("matching", f"no {q}-matching for U' = {sorted(dil.U_prime)}")
    else:
        M = QMatching(frozenset(), q, ())
    w = assign_weights(g, U, M, params)
    report = verify_feasible(g, w, ErrorContext.from_errors(g.n, U))
    if not report.feasible:
        raise WitnessError(
            "verify",
            f"weights infeasible at checks {list(report.bad_checks)} "
            f"and variables {list(report.bad_nodes)}")
    if certificate is not None and certificate is not CertStatus.CERTIFIED:
        notes.append(f"expansion certificate status: {certificate.value}")
    return Witness(w, dil, M, report, certificate, tuple(notes))


def decoding_radius(params: ExpansionParams, n: int) -> int:
    """floor((3 eps - 2)/(2 eps - 1) * (floor(delta n) - 1))."""
    _require_two_thirds(params)
    k = params.size_bound(n)
    if k < 1:
        raise ValueError("floor(delta * n) must be at least 1")
    e = params.epsilon
    return floor((3 * e - 2) / (2 * e - 1) * (k - 1))
