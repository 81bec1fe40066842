"""Exact rational linear programming and zero-sum matrix games.

The solver is a dense two-phase tableau simplex over :class:`fractions.Fraction`
using Bland's rule, so it terminates on degenerate problems and every number
it returns is exact.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InputError

__all__ = [
    "LPStatus",
    "LPResult",
    "GameSolution",
    "simplex_solve",
    "solve_game",
]


class LPStatus(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    """Outcome of :func:`simplex_solve`.

    For an optimal result, ``duals`` certifies optimality: ``b . duals`` equals
    ``objective`` and the duals are feasible for the dual program (``>= 0`` and
    ``A^T y >= c`` when maximizing, ``<= 0`` and ``A^T y <= c`` when minimizing).
    """

    status: LPStatus
    x: tuple[Fraction, ...] | None = None
    objective: Fraction | None = None
    duals: tuple[Fraction, ...] | None = None

    @property
    def optimal(self) -> bool:
        return self.status is LPStatus.OPTIMAL


@dataclass(frozen=True)
class GameSolution:
    value: Fraction
    row_strategy: tuple[Fraction, ...]
    col_strategy: tuple[Fraction, ...]


class _Tableau:
    # rows[i] . vars = rhs[i]; basis[i] is the basic column of row i.
    def __init__(self, rows, rhs, basis):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.ncols = len(rows[0]) if rows else 0

    def pivot(self, r: int, col: int, extra: list[list[Fraction]]) -> None:
        row = self.rows[r]
        piv = row[col]
        if piv != 1:
            inv = 1 / piv
            for j in range(self.ncols):
                if row[j]:
                    row[j] *= inv
            self.rhs[r] *= inv
        support = [j for j in range(self.ncols) if row[j]]
        for i, other in enumerate(self.rows):
            if i == r:
                continue
            f = other[col]
            if f:
                for j in support:
                    other[j] -= f * row[j]
                self.rhs[i] -= f * self.rhs[r]
        # extra = objective rows stored as [coeffs..., value]
        for obj in extra:
            f = obj[col]
            if f:
                for j in support:
                    obj[j] -= f * row[j]
                obj[-1] -= f * self.rhs[r]
        self.basis[r] = col

    def objective_row(self, cost: Sequence[Fraction]) -> list[Fraction]:
        """Row of z_j - c_j followed by the current objective value."""
        obj = [-c for c in cost] + [Fraction(0)]
        for i, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                row = self.rows[i]
                for j in range(self.ncols):
                    if row[j]:
                        obj[j] += cb * row[j]
                obj[-1] += cb * self.rhs[i]
        return obj

    def optimize(self, obj: list[Fraction], allowed: int) -> bool:
        """Maximize with Bland's rule over columns ``< allowed``.

        Returns False if the problem is unbounded.
        """
        while True:
            enter = next((j for j in range(allowed) if obj[j] < 0), None)
            if enter is None:
                return True
            best = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = self.rhs[i] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return False
            self.pivot(best[1], enter, [obj])


def _as_fraction(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


def simplex_solve(
    constraint_matrix: Sequence[Sequence],
    rhs: Sequence,
    objective: Sequence,
    sense: str = "max",
) -> LPResult:
    """Optimize ``objective . x`` subject to ``A x <= rhs`` and ``x >= 0``.

    ``sense`` is ``"max"`` or ``"min"``. Infeasible and unbounded programs are
    reported through :attr:`LPResult.status`, not raised.
    """
    if sense not in ("max", "min"):
        raise InputError(f"sense must be 'max' or 'min', got {sense!r}")
    A = [[_as_fraction(v) for v in row] for row in constraint_matrix]
    b = [_as_fraction(v) for v in rhs]
    c = [_as_fraction(v) for v in objective]
    m, n = len(A), len(c)
    if len(b) != m:
        raise InputError(f"{m} constraint rows but {len(b)} right-hand sides")
    for i, row in enumerate(A):
        if len(row) != n:
            raise InputError(f"row {i} has {len(row)} entries, expected {n}")
    if sense == "min":
        c = [-v for v in c]

    negative = [i for i in range(m) if b[i] < 0]
    n_art = len(negative)
    width = n + m + n_art
    rows, rhs_t, basis = [], [], []
    art_of_row = {i: n + m + k for k, i in enumerate(negative)}
    for i in range(m):
        row = [Fraction(0)] * width
        sign = -1 if i in art_of_row else 1
        for j in range(n):
            row[j] = sign * A[i][j]
        row[n + i] = Fraction(sign)
        if i in art_of_row:
            row[art_of_row[i]] = Fraction(1)
            basis.append(art_of_row[i])
        else:
            basis.append(n + i)
        rows.append(row)
        rhs_t.append(sign * b[i])
    tab = _Tableau(rows, rhs_t, basis)

    if n_art:
        phase1_cost = [Fraction(0)] * (n + m) + [Fraction(-1)] * n_art
        obj1 = tab.objective_row(phase1_cost)
        tab.optimize(obj1, width)
        if obj1[-1] < 0:
            return LPResult(LPStatus.INFEASIBLE)
        for r in range(m):
            if tab.basis[r] >= n + m:
                col = next((j for j in range(n + m) if tab.rows[r][j]), None)
                # [A | D] has full row rank, so a non-artificial pivot exists.
                assert col is not None
                tab.pivot(r, col, [])
        for row in tab.rows:
            del row[n + m:]
        tab.ncols = n + m

    cost = c + [Fraction(0)] * m
    obj = tab.objective_row(cost)
    if not tab.optimize(obj, n + m):
        return LPResult(LPStatus.UNBOUNDED)

    x = [Fraction(0)] * (n + m)
    for i, bv in enumerate(tab.basis):
        x[bv] = tab.rhs[i]
    duals = [obj[n + i] for i in range(m)]
    value = obj[-1]
    if sense == "min":
        value = -value
        duals = [-y for y in duals]
    return LPResult(LPStatus.OPTIMAL, tuple(x[:n]), value, tuple(duals))


def solve_game(payoff: Sequence[Sequence]) -> GameSolution:
    """Solve the zero-sum game where the row player maximizes ``p^T M q``.

    Returns the exact value together with optimal mixed strategies for both
    players. The zero duality gap is checked before returning.
    """
    M = [[_as_fraction(v) for v in row] for row in payoff]
    if not M or not M[0]:
        raise InputError("payoff matrix must be nonempty")
    ncols = len(M[0])
    if any(len(row) != ncols for row in M):
        raise InputError("payoff matrix rows have unequal lengths")
    nrows = len(M)

    low = min(min(row) for row in M)
    shift = 1 - low if low <= 0 else Fraction(0)
    shifted = [[v + shift for v in row] for row in M]
    # Column player: max sum(y) s.t. M' y <= 1; value(M') = 1 / sum(y).
    res = simplex_solve(shifted, [1] * nrows, [1] * ncols, "max")
    assert res.optimal and res.objective > 0
    total = res.objective
    q = tuple(v / total for v in res.x)
    p = tuple(v / total for v in res.duals)
    value = 1 / total - shift

    guaranteed = min(sum(p[i] * M[i][j] for i in range(nrows)) for j in range(ncols))
    conceded = max(sum(M[i][j] * q[j] for j in range(ncols)) for i in range(nrows))
    if not (guaranteed == value == conceded):
        raise ArithmeticError(
            f"duality gap: row guarantees {guaranteed}, column concedes {conceded}"
        )
    return GameSolution(value, p, q)
