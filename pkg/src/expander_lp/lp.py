"""Dense two-phase primal simplex with an exact rational mode.

Problems are stated as ``minimize c.x`` subject to rows ``a.x (<=|>=|=) b``
and per-variable bounds ``lo <= x <= hi`` with finite ``lo``. The solver
shifts variables to ``x - lo >= 0``, turns finite upper bounds into rows and
runs a textbook tableau simplex with Bland's rule, so it always terminates.

``enumerate_vertices`` and ``vertex_oracle`` are an independent brute-force
path (basis enumeration plus extreme rays) used to cross-check the solver.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import comb
from typing import Any, Iterable, Sequence

import numpy as np

try:  # same semantics as Fraction, roughly ten times faster
    from gmpy2 import mpq as _rational
except ImportError:  # pragma: no cover
    _rational = Fraction

FLOAT_TOL = 1e-9
RELATIONS = ("<=", ">=", "=")


class LPStatus(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


class Uniqueness(str, Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple
    relation: str
    rhs: Any

    def __post_init__(self) -> None:
        if self.relation not in RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")


@dataclass(frozen=True)
class LinearProgram:
    """``minimize objective . x`` subject to ``constraints`` and ``bounds``.

    ``bounds`` holds one ``(lower, upper)`` pair per variable; ``upper=None``
    means unbounded above. Lower bounds must be finite.
    """

    num_vars: int
    objective: tuple
    constraints: tuple[Constraint, ...] = ()
    bounds: tuple[tuple[Any, Any], ...] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "objective", tuple(self.objective))
        cons = tuple(
            c if isinstance(c, Constraint) else Constraint(tuple(c[0]), c[1], c[2])
            for c in self.constraints
        )
        object.__setattr__(self, "constraints", cons)
        if self.bounds is None:
            object.__setattr__(self, "bounds", ((0, None),) * self.num_vars)
        else:
            object.__setattr__(self, "bounds", tuple(tuple(b) for b in self.bounds))
        if len(self.objective) != self.num_vars:
            raise ValueError("objective length differs from num_vars")
        if len(self.bounds) != self.num_vars:
            raise ValueError("bounds length differs from num_vars")
        for con in cons:
            if len(con.coeffs) != self.num_vars:
                raise ValueError("constraint length differs from num_vars")
        for lo, hi in self.bounds:
            if lo is None:
                raise ValueError("lower bounds must be finite")
            if hi is not None and hi < lo:
                raise ValueError(f"empty bound interval [{lo}, {hi}]")

    def evaluate(self, x: Sequence) -> Any:
        return sum(ci * xi for ci, xi in zip(self.objective, x))

    def violation(self, x: Sequence) -> Any:
        """Largest constraint or bound violation at ``x`` (0 when feasible)."""
        worst = 0
        for con in self.constraints:
            lhs = sum(a * xi for a, xi in zip(con.coeffs, x))
            if con.relation == "<=":
                worst = max(worst, lhs - con.rhs)
            elif con.relation == ">=":
                worst = max(worst, con.rhs - lhs)
            else:
                worst = max(worst, abs(lhs - con.rhs))
        for (lo, hi), xi in zip(self.bounds, x):
            worst = max(worst, lo - xi)
            if hi is not None:
                worst = max(worst, xi - hi)
        return worst


@dataclass(frozen=True)
class LPSolution:
    status: LPStatus
    point: tuple | None = None
    value: Any = None
    unique: Uniqueness = Uniqueness.UNKNOWN
    pivots: int = 0
    _state: Any = field(default=None, repr=False, compare=False)


def format_lp(lp: LinearProgram) -> str:
    """Human-readable dump; meant for debugging, not for parsing."""

    def expr(coeffs: Iterable) -> str:
        terms = [f"{a} x{k}" for k, a in enumerate(coeffs) if a != 0]
        return " + ".join(terms) if terms else "0"

    lines = ["minimize", f"  {expr(lp.objective)}", "subject to"]
    for con in lp.constraints:
        lines.append(f"  {expr(con.coeffs)} {con.relation} {con.rhs}")
    lines.append("bounds")
    for k, (lo, hi) in enumerate(lp.bounds):
        lines.append(f"  {lo} <= x{k} <= {'inf' if hi is None else hi}")
    return "\n".join(lines)


# --- tableau machinery -------------------------------------------------------


class _Arith:
    """Number conversion and sign tests for one arithmetic mode."""

    def __init__(self, exact: bool, tol: float = FLOAT_TOL):
        self.exact = exact
        self.tol = 0 if exact else tol
        self.zero = _rational(0) if exact else 0.0
        self.one = _rational(1) if exact else 1.0

    def conv(self, v: Any) -> Any:
        if not self.exact:
            return float(v)
        return _rational(v if isinstance(v, (int, Fraction)) else Fraction(v))

    def out(self, v: Any) -> Any:
        """Convert a tableau number to the public type."""
        if not self.exact:
            return float(v)
        return Fraction(int(v.numerator), int(v.denominator))

    def pos(self, v: Any) -> bool:
        return v > self.tol

    def neg(self, v: Any) -> bool:
        return v < -self.tol

    def is_zero(self, v: Any) -> bool:
        return -self.tol <= v <= self.tol


class _Tableau:
    """Rows ``[a_1 .. a_ncols | rhs]`` plus a reduced-cost row in the same layout.

    The reduced-cost row stores ``c_j - c_B B^-1 A_j`` and, in its last slot,
    minus the current objective value.
    """

    def __init__(self, rows: list[list], basis: list[int], ncols: int, ar: _Arith):
        self.rows = rows
        self.basis = basis
        self.ncols = ncols
        self.ar = ar
        self.z: list = [ar.zero] * (ncols + 1)
        self.pivots = 0

    def copy(self) -> _Tableau:
        t = _Tableau([r[:] for r in self.rows], self.basis[:], self.ncols, self.ar)
        t.z = self.z[:]
        t.pivots = self.pivots
        return t

    def set_costs(self, cost: Sequence) -> None:
        """Price out the basis for a cost vector over all columns."""
        z = list(cost) + [self.ar.zero]
        for r, b in zip(self.rows, self.basis):
            cb = cost[b]
            if cb != 0:
                for k, v in enumerate(r):
                    if v != 0:
                        z[k] -= cb * v
        self.z = z

    def pivot(self, r: int, col: int) -> None:
        ar = self.ar
        prow = self.rows[r]
        p = prow[col]
        if p != ar.one:
            prow = [v / p if v != 0 else v for v in prow]
            self.rows[r] = prow
        nz = [k for k, v in enumerate(prow) if v != 0]
        for other in itertools.chain(self.rows, (self.z,)):
            if other is prow:
                continue
            f = other[col]
            if f == 0:
                continue
            for k in nz:
                other[k] -= f * prow[k]
            if not ar.exact:
                for k in nz:
                    if -1e-12 < other[k] < 1e-12:
                        other[k] = 0.0
            other[col] = ar.zero
        self.basis[r] = col
        self.pivots += 1

    def entering(self, allowed: Sequence[bool]) -> int | None:
        """Bland: lowest-index column with negative reduced cost."""
        for k in range(self.ncols):
            if allowed[k] and self.ar.neg(self.z[k]):
                return k
        return None

    def leaving(self, col: int) -> int | None:
        """Minimum-ratio row; ties go to the smallest basic column index."""
        best = None
        best_ratio = None
        for r, row in enumerate(self.rows):
            a = row[col]
            if not self.ar.pos(a):
                continue
            ratio = row[-1] / a
            if (best is None or ratio < best_ratio
                    or (ratio == best_ratio and self.basis[r] < self.basis[best])):
                best, best_ratio = r, ratio
        return best

    def run(self, allowed: Sequence[bool], trace: list | None, limit: int) -> LPStatus:
        while True:
            col = self.entering(allowed)
            if col is None:
                return LPStatus.OPTIMAL
            r = self.leaving(col)
            if r is None:
                return LPStatus.UNBOUNDED
            self.pivot(r, col)
            if trace is not None:
                trace.append(tuple(sorted(self.basis)))
            if self.pivots > limit:
                raise RuntimeError(f"simplex exceeded {limit} pivots")

    def value_of(self, col: int) -> Any:
        for r, b in enumerate(self.basis):
            if b == col:
                return self.rows[r][-1]
        return self.ar.zero


@dataclass
class _Standard:
    tab: _Tableau
    n: int
    n_real: int  # structural + slack columns
    shifts: list
    cost: list


def _standard_form(lp: LinearProgram, ar: _Arith) -> tuple[list, list, list]:
    """Rows as (coeffs, relation, rhs) over shifted variables, plus shifts and cost."""
    shifts = [ar.conv(lo) for lo, _ in lp.bounds]
    rows = []
    for con in lp.constraints:
        a = [ar.conv(v) for v in con.coeffs]
        b = ar.conv(con.rhs) - sum(ai * s for ai, s in zip(a, shifts))
        rows.append((a, con.relation, b))
    for k, (lo, hi) in enumerate(lp.bounds):
        if hi is not None:
            a = [ar.zero] * lp.num_vars
            a[k] = ar.one
            rows.append((a, "<=", ar.conv(hi) - shifts[k]))
    cost = [ar.conv(v) for v in lp.objective]
    return rows, shifts, cost


def _build(lp: LinearProgram, ar: _Arith) -> tuple[_Standard, list[int]]:
    rows, shifts, cost = _standard_form(lp, ar)
    n = lp.num_vars
    n_slack = sum(rel != "=" for _, rel, _ in rows)
    norm = []
    slack_col = n
    for a, rel, b in rows:
        a = a[:]
        slack = None
        if rel == ">=":
            a, b = [-v for v in a], -b
        if rel != "=":
            slack = slack_col
            slack_col += 1
        sign = ar.one
        if ar.neg(b):
            a, b, sign = [-v for v in a], -b, -ar.one
        norm.append((a, slack, sign, b))
    n_real = n + n_slack
    needs_art = [slack is None or sign != 1 for _, slack, sign, _ in norm]
    n_art = sum(needs_art)
    ncols = n_real + n_art
    tab_rows, basis, art_cols = [], [], []
    art = n_real
    for (a, slack, sign, b), need in zip(norm, needs_art):
        row = a + [ar.zero] * (ncols - n) + [b]
        if slack is not None:
            row[slack] = sign
        if need:
            row[art] = ar.one
            basis.append(art)
            art_cols.append(art)
            art += 1
        else:
            basis.append(slack)
        tab_rows.append(row)
    tab = _Tableau(tab_rows, basis, ncols, ar)
    full_cost = cost + [ar.zero] * (ncols - n)
    return _Standard(tab, n, n_real, shifts, full_cost), art_cols


def _drop_artificials(std: _Standard) -> None:
    """Pivot zero-level artificials out of the basis, drop redundant rows and columns."""
    tab = std.tab
    n_real = std.n_real
    keep = []
    for r in range(len(tab.rows)):
        if tab.basis[r] < n_real:
            keep.append(r)
            continue
        row = tab.rows[r]
        col = next((k for k in range(n_real) if not tab.ar.is_zero(row[k])), None)
        if col is None:
            continue  # redundant equality
        tab.pivot(r, col)
        keep.append(r)
    tab.rows = [tab.rows[r][:n_real] + [tab.rows[r][-1]] for r in keep]
    tab.basis = [tab.basis[r] for r in keep]
    tab.ncols = n_real
    std.cost = std.cost[:n_real]


def _uniqueness(tab: _Tableau, resolve: bool, limit: int) -> Uniqueness:
    """Decide whether the optimal vertex held by ``tab`` is the only optimum.

    Zero-reduced-cost nonbasic columns span the optimal face. If one of them
    can enter with a positive step (or without bound), the optimum moves.
    Otherwise, with ``resolve``, maximize their sum over the optimal face
    (other nonbasic columns pinned to zero): the face is a single point
    exactly when that maximum is zero.
    """
    ar = tab.ar
    basic = set(tab.basis)
    zero_cols = [k for k in range(tab.ncols) if k not in basic and ar.is_zero(tab.z[k])]
    if not zero_cols:
        return Uniqueness.YES
    for k in zero_cols:
        r = tab.leaving(k)
        if r is None or ar.pos(tab.rows[r][-1]):
            return Uniqueness.NO
    if not resolve:
        return Uniqueness.UNKNOWN
    aux = tab.copy()
    face = set(zero_cols)
    allowed = [k in basic or k in face for k in range(aux.ncols)]
    aux.set_costs([-ar.one if k in face else ar.zero for k in range(aux.ncols)])
    status = aux.run(allowed, None, limit)
    if status is LPStatus.UNBOUNDED or ar.neg(-aux.z[-1]):
        return Uniqueness.NO
    return Uniqueness.YES


def solve(
    lp: LinearProgram,
    mode: str = "exact",
    *,
    check_unique: bool = True,
    trace: list | None = None,
    max_pivots: int = 100_000,
) -> LPSolution:
    """Two-phase simplex with Bland's rule.

    ``mode="exact"`` pivots in :class:`fractions.Fraction`; ``mode="float"``
    uses floats with tolerance 1e-9 on pivot and optimality tests. When
    ``trace`` is a list, the sorted basis after each pivot is appended to it.
    """
    if mode not in ("exact", "float"):
        raise ValueError(f"unknown mode {mode!r}")
    ar = _Arith(mode == "exact")
    std, art_cols = _build(lp, ar)
    tab = std.tab

    if art_cols:
        arts = set(art_cols)
        tab.set_costs([ar.one if k in arts else ar.zero for k in range(tab.ncols)])
        tab.run([True] * tab.ncols, trace, max_pivots)
        if ar.pos(-tab.z[-1]):
            return LPSolution(LPStatus.INFEASIBLE, pivots=tab.pivots)
    _drop_artificials(std)

    tab.set_costs(std.cost)
    status = tab.run([True] * tab.ncols, trace, max_pivots)
    if status is LPStatus.UNBOUNDED:
        return LPSolution(LPStatus.UNBOUNDED, pivots=tab.pivots)

    raw = [tab.value_of(k) + std.shifts[k] for k in range(std.n)]
    unique = _uniqueness(tab, True, max_pivots) if check_unique else Uniqueness.UNKNOWN
    value = sum((ar.conv(c) * x for c, x in zip(lp.objective, raw)), ar.zero)
    point = tuple(ar.out(x) for x in raw)
    return LPSolution(LPStatus.OPTIMAL, point, ar.out(value), unique, tab.pivots, _state=tab)


def is_unique_optimum(
    lp: LinearProgram, sol: LPSolution, *, resolve: bool = True
) -> Uniqueness:
    """Tri-state uniqueness of an optimal solution.

    ``no``: a zero-reduced-cost column enters with a positive step.
    ``yes``: every nonbasic reduced cost is strictly positive, or (with
    ``resolve``) the optimal face is shown to be a single point.
    ``unknown``: only degenerate zero-reduced-cost columns remain and
    ``resolve`` is off.
    """
    if sol.status is not LPStatus.OPTIMAL:
        raise ValueError("uniqueness needs an optimal solution")
    tab = sol._state
    if tab is None:
        again = solve(lp, "exact" if isinstance(sol.value, Fraction) else "float",
                      check_unique=False)
        tab = again._state
    return _uniqueness(tab.copy(), resolve, 100_000)


# --- brute-force oracle ------------------------------------------------------


def _all_rows(lp: LinearProgram) -> tuple[list[list[Fraction]], list[Fraction], list[str]]:
    """Every constraint and bound as a row ``a.x rel b`` in exact arithmetic."""
    A, b, rel = [], [], []
    for con in lp.constraints:
        A.append([Fraction(v) for v in con.coeffs])
        b.append(Fraction(con.rhs))
        rel.append(con.relation)
    for k, (lo, hi) in enumerate(lp.bounds):
        e = [Fraction(0)] * lp.num_vars
        e[k] = Fraction(1)
        A.append(e)
        b.append(Fraction(lo))
        rel.append(">=")
        if hi is not None:
            A.append(e[:])
            b.append(Fraction(hi))
            rel.append("<=")
    return A, b, rel


def _solve_exact(M: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Gauss-Jordan on a square system; ``None`` when singular."""
    n = len(M)
    aug = [row[:] + [v] for row, v in zip(M, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [v / p for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [v - f * w for v, w in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


def _feasible(A, b, rel, x) -> bool:
    for a, bi, r in zip(A, b, rel):
        lhs = sum(ai * xi for ai, xi in zip(a, x))
        if (r == "<=" and lhs > bi) or (r == ">=" and lhs < bi) or (r == "=" and lhs != bi):
            return False
    return True


def _basic_points(A, b, rel, n: int, chunk: int = 50_000) -> list[tuple[Fraction, ...]]:
    """All feasible points where ``n`` linearly independent rows are tight.

    Every n-subset of rows is a candidate. Small instances are solved exactly
    throughout. Large ones are screened in floating point (batched
    determinant and solve on row-normalized systems, generous tolerances);
    survivors are re-solved and re-checked exactly, so every reported point
    is an exact vertex.
    """
    R = len(A)
    if n == 0:
        return [()] if _feasible(A, b, rel, ()) else []
    found: set[tuple[Fraction, ...]] = set()
    combos = itertools.combinations(range(R), n)
    total = comb(R, n)
    if total <= 2000:
        for idx in combos:
            x = _solve_exact([A[i] for i in idx], [b[i] for i in idx])
            if x is not None and _feasible(A, b, rel, x):
                found.add(tuple(x))
        return sorted(found)

    Af = np.array([[float(v) for v in row] for row in A])
    bf = np.array([float(v) for v in b])
    norms = np.linalg.norm(Af, axis=1)
    norms[norms == 0] = 1.0
    An, bn = Af / norms[:, None], bf / norms
    scale = 1.0 + np.abs(bn).max()
    le = np.array([r == "<=" for r in rel])
    ge = np.array([r == ">=" for r in rel])
    eq = np.array([r == "=" for r in rel])
    while True:
        block = list(itertools.islice(combos, chunk))
        if not block:
            break
        idx = np.array(block)
        M = An[idx]
        det = np.linalg.det(M)
        ok = np.abs(det) > 1e-10
        if not ok.any():
            continue
        idx, M = idx[ok], M[ok]
        X = np.linalg.solve(M, bn[idx][..., None])[..., 0]
        lhs = X @ An.T
        tol = 1e-6 * scale
        viol = np.zeros(len(idx), dtype=bool)
        if le.any():
            viol |= (lhs[:, le] > bn[le] + tol).any(axis=1)
        if ge.any():
            viol |= (lhs[:, ge] < bn[ge] - tol).any(axis=1)
        if eq.any():
            viol |= (np.abs(lhs[:, eq] - bn[eq]) > tol).any(axis=1)
        for row in idx[~viol]:
            x = _solve_exact([A[i] for i in row], [b[i] for i in row])
            if x is not None and _feasible(A, b, rel, x):
                found.add(tuple(x))
    return sorted(found)


def enumerate_vertices(
    lp: LinearProgram, *, max_vars: int = 10, max_rows: int = 24
) -> list[tuple[Fraction, ...]]:
    """All vertices of the feasible region, exact and deduplicated.

    ``max_rows`` limits the number of general constraints (bounds excluded).
    """
    if lp.num_vars > max_vars or len(lp.constraints) > max_rows:
        raise ValueError(
            f"vertex enumeration limited to {max_vars} variables and {max_rows} constraints")
    A, b, rel = _all_rows(lp)
    return _basic_points(A, b, rel, lp.num_vars)


def extreme_rays(lp: LinearProgram) -> list[tuple[Fraction, ...]]:
    """Extreme rays of the recession cone, normalized to coordinate sum 1.

    Finite lower bounds make every ray nonnegative, so the normalization
    turns rays into vertices of a bounded slice of the cone.
    """
    n = lp.num_vars
    A, b, rel = [], [], []
    for con in lp.constraints:
        A.append([Fraction(v) for v in con.coeffs])
        b.append(Fraction(0))
        rel.append(con.relation)
    for k, (_, hi) in enumerate(lp.bounds):
        e = [Fraction(0)] * n
        e[k] = Fraction(1)
        A.append(e)
        b.append(Fraction(0))
        rel.append("=" if hi is not None else ">=")
    A.append([Fraction(1)] * n)
    b.append(Fraction(1))
    rel.append("=")
    return _basic_points(A, b, rel, n)


@dataclass(frozen=True)
class OracleResult:
    status: LPStatus
    value: Fraction | None
    optimal_vertices: tuple[tuple[Fraction, ...], ...]
    unique: bool | None


def vertex_oracle(lp: LinearProgram) -> OracleResult:
    """Solve by exhaustion: vertices give the optimum, rays detect unboundedness."""
    verts = enumerate_vertices(lp)
    if not verts:
        return OracleResult(LPStatus.INFEASIBLE, None, (), None)
    cost = [Fraction(v) for v in lp.objective]
    rays = extreme_rays(lp)
    ray_costs = [sum(c * d for c, d in zip(cost, ray)) for ray in rays]
    if any(rc < 0 for rc in ray_costs):
        return OracleResult(LPStatus.UNBOUNDED, None, (), None)
    values = [sum(c * x for c, x in zip(cost, v)) for v in verts]
    best = min(values)
    opt = tuple(v for v, val in zip(verts, values) if val == best)
    unique = len(opt) == 1 and not any(rc == 0 for rc in ray_costs)
    return OracleResult(LPStatus.OPTIMAL, best, opt, unique)
