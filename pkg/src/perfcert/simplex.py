"""Two-phase tableau simplex over exact rationals with Bland's rule.

Solves ``max c.x  s.t.  A_ub x <= b_ub,  A_eq x = b_eq,  x >= 0``.  Bland's
rule makes pivoting terminate and deterministic; with exact arithmetic
there is no tolerance anywhere.  Dual values are read off the final
objective row, which lets callers check optimality independently.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: tuple[Fraction, ...] | None = None
    value: Fraction | None = None
    duals_ub: tuple[Fraction, ...] | None = None
    duals_eq: tuple[Fraction, ...] | None = None
    pivots: int = 0


class _Tableau:
    def __init__(self, rows, rhs, basis, n_cols):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.n_cols = n_cols
        self.obj = [Fraction(0)] * n_cols
        self.obj_rhs = Fraction(0)
        self.pivots = 0

    def set_objective(self, cost):
        # reduced costs z_j = c_B B^-1 A_j - c_j (row already in canonical form)
        self.obj = [-c for c in cost]
        self.obj_rhs = Fraction(0)
        for i, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                row = self.rows[i]
                for j in range(self.n_cols):
                    if row[j]:
                        self.obj[j] += cb * row[j]
                self.obj_rhs += cb * self.rhs[i]

    def pivot(self, r, c):
        row = self.rows[r]
        p = row[c]
        if p != 1:
            self.rows[r] = row = [v / p for v in row]
            self.rhs[r] /= p
        for i in range(len(self.rows)):
            if i != r:
                f = self.rows[i][c]
                if f:
                    other = self.rows[i]
                    self.rows[i] = [a - f * b if b else a for a, b in zip(other, row)]
                    self.rhs[i] -= f * self.rhs[r]
        f = self.obj[c]
        if f:
            self.obj = [a - f * b if b else a for a, b in zip(self.obj, row)]
            self.obj_rhs -= f * self.rhs[r]
        self.basis[r] = c
        self.pivots += 1

    def run(self, allowed):
        """Maximise the current objective; returns False if unbounded."""
        while True:
            enter = next((j for j in range(self.n_cols) if allowed[j] and self.obj[j] < 0), None)
            if enter is None:
                return True
            best, leave = None, None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = self.rhs[i] / a
                    if best is None or ratio < best or (ratio == best and self.basis[i] < self.basis[leave]):
                        best, leave = ratio, i
            if leave is None:
                return False
            self.pivot(leave, enter)


def solve_lp(c, A_ub=(), b_ub=(), A_eq=(), b_eq=()) -> LPResult:
    c = [Fraction(v) for v in c]
    n = len(c)
    A_ub = [[Fraction(v) for v in row] for row in A_ub]
    A_eq = [[Fraction(v) for v in row] for row in A_eq]
    b_ub = [Fraction(v) for v in b_ub]
    b_eq = [Fraction(v) for v in b_eq]
    m_ub, m_eq = len(A_ub), len(A_eq)
    m = m_ub + m_eq
    for row in A_ub + A_eq:
        if len(row) != n:
            raise ValueError("constraint row length differs from objective length")

    # columns: x (n) | slack (m_ub) | artificial (m)
    n_cols = n + m_ub + m
    rows, rhs, basis, signs = [], [], [], []
    unit_col = []  # column equal to e_i in the sign-normalised system
    for i in range(m):
        row = [Fraction(0)] * n_cols
        if i < m_ub:
            row[:n] = A_ub[i]
            row[n + i] = Fraction(1)
            b = b_ub[i]
        else:
            row[:n] = A_eq[i - m_ub]
            b = b_eq[i - m_ub]
        sign = 1
        if b < 0:
            sign = -1
            row = [-v for v in row]
            b = -b
        art = n + m_ub + i
        row[art] = Fraction(1)
        rows.append(row)
        rhs.append(b)
        signs.append(sign)
        if i < m_ub and sign == 1:
            basis.append(n + i)
            row[art] = Fraction(0)
            unit_col.append(n + i)
        else:
            basis.append(art)
            unit_col.append(art)

    tab = _Tableau(rows, rhs, basis, n_cols)
    is_art = [j >= n + m_ub for j in range(n_cols)]
    phase1_cost = [Fraction(-1) if is_art[j] else Fraction(0) for j in range(n_cols)]
    tab.set_objective(phase1_cost)
    tab.run([True] * n_cols)
    if tab.obj_rhs < 0:
        return LPResult(INFEASIBLE, pivots=tab.pivots)

    # drive zero-level artificials out of the basis where possible
    for i in range(m):
        if is_art[tab.basis[i]]:
            j = next((j for j in range(n + m_ub) if tab.rows[i][j] != 0), None)
            if j is not None:
                tab.pivot(i, j)

    cost = c + [Fraction(0)] * (m_ub + m)
    tab.set_objective(cost)
    allowed = [not a for a in is_art]
    if not tab.run(allowed):
        return LPResult(UNBOUNDED, pivots=tab.pivots)

    x = [Fraction(0)] * n_cols
    for i, b in enumerate(tab.basis):
        x[b] = tab.rhs[i]
    y = [signs[i] * tab.obj[unit_col[i]] for i in range(m)]
    return LPResult(OPTIMAL, tuple(x[:n]), tab.obj_rhs, tuple(y[:m_ub]), tuple(y[m_ub:]),
                    tab.pivots)
