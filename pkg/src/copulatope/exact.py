"""Exact rational scalars, exact linear algebra, and an exact simplex LP solver.

Every polyhedral computation in this package runs on arbitrary-precision
rationals; ``Rational`` is gmpy2's ``mpq`` when available (≈10x faster than
``fractions.Fraction``) and ``Fraction`` otherwise.  Both are canonical
(gcd-reduced, positive denominator) after every operation.

The LP solver works on the dual: for ``max c.x  s.t.  A x <= b, E x = f`` it
runs a two-phase tableau simplex with Bland's rule on the dual standard form
(whose row count is the primal dimension, small for all systems here) and
recovers the primal point from the final basis multipliers.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm
from typing import Iterable, Literal, Sequence

from .errors import DimensionMismatch, NotSquare, ZeroDenominator

try:
    from gmpy2 import mpq as _mpq

    Rational = type(_mpq(0))

    def rat(num: int | str | Rational = 0, den: int = 1):
        return _mpq(num, den) if den != 1 else _mpq(num)

except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as _mpq

    Rational = _mpq

    def rat(num=0, den=1):
        return _mpq(num, den)


R0 = rat(0)
R1 = rat(1)


def rat_normalize(num: int, den: int):
    """Canonical fraction num/den; sign carried by the numerator.

    Raises ZeroDenominator when den == 0.
    """
    if den == 0:
        raise ZeroDenominator(f"denominator is zero for numerator {num}")
    return rat(num, den)


def rat_to_str(x) -> str:
    """Serialize as "num/den", omitting "/den" when the denominator is 1."""
    x = rat(x)
    return str(x)


def rat_from_str(s: str):
    s = s.strip()
    if "/" in s:
        num, den = s.split("/")
        return rat_normalize(int(num), int(den))
    return rat(int(s))


@dataclass(frozen=True)
class RatMatrix:
    """Dense rational matrix, row-major entries."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RatMatrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        if any(len(row) != c for row in rows):
            raise DimensionMismatch("ragged rows")
        return cls(r, c, tuple(rat(x) for row in rows for x in row))

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, tuple(R1 if i == j else R0 for i in range(n) for j in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "RatMatrix":
        return RatMatrix(
            self.cols, self.rows, tuple(self[i, j] for j in range(self.cols) for i in range(self.rows))
        )

    def mul(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch("inner dimensions differ")
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                out.append(sum((ri[k] * other[k, j] for k in range(self.cols)), R0))
        return RatMatrix(self.rows, other.cols, tuple(out))


def _integerize_rows(m: RatMatrix) -> tuple[list[list[int]], "Rational"]:
    """Scale each row by the lcm of its denominators; return integer rows and
    the product of the scale factors (so det(int) = factor * det(m))."""
    rows: list[list[int]] = []
    factor = R1
    for i in range(m.rows):
        row = [rat(x) for x in m.row(i)]
        mult = lcm(*(int(x.denominator) for x in row)) if row else 1
        factor *= mult
        rows.append([int(x.numerator) * (mult // int(x.denominator)) for x in row])
    return rows, factor


def det(m: RatMatrix):
    """Exact determinant via fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise NotSquare(f"{m.rows}x{m.cols}")
    n = m.rows
    if n == 0:
        return R1
    a, factor = _integerize_rows(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return R0
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            rowi = a[i]
            rowk = a[k]
            for j in range(k + 1, n):
                rowi[j] = (pivot * rowi[j] - aik * rowk[j]) // prev
            rowi[k] = 0
        prev = pivot
    return rat(sign * a[n - 1][n - 1]) / factor

def rank(m: RatMatrix) -> int:
    """Exact row rank via rational Gaussian elimination."""
    if m.rows == 0 or m.cols == 0:
        return 0
    return rank_rows([list(m.row(i)) for i in range(m.rows)])


def rank_rows(rows_in: Sequence[Sequence]) -> int:
    """Rank of a list of rational row vectors."""
    rows = [[rat(x) for x in row] for row in rows_in if any(row)]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    col = 0
    while r < len(rows) and col < ncols:
        piv = None
        for i in range(r, len(rows)):
            if rows[i][col] != 0:
                piv = i
                break
        if piv is None:
            col += 1
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        pval = prow[col]
        for i in range(r + 1, len(rows)):
            f = rows[i][col]
            if f:
                fi = f / pval
                rows[i] = [x - fi * y for x, y in zip(rows[i], prow)]
        r += 1
        col += 1
    return r


# ---------------------------------------------------------------------------
# Linear programming
# ---------------------------------------------------------------------------

LpStatus = Literal["optimal", "infeasible", "unbounded"]


@dataclass(frozen=True)
class LpResult:
    status: LpStatus
    value: object = None  # Rational when optimal
    point: tuple | None = None  # Rational coordinates when optimal

    @property
    def is_optimal(self) -> bool:
        return self.status == "optimal"


def _split_constraints(h) -> tuple[list[tuple], list[tuple]]:
    """Normalize an HRep-like object into (<=) inequalities and equalities."""
    ineq: list[tuple] = []
    eq: list[tuple] = []
    for c in h.constraints:
        a = [rat(x) for x in c.coeffs]
        b = rat(c.rhs)
        if c.kind == "<=":
            ineq.append((a, b))
        elif c.kind == ">=":
            ineq.append(([-x for x in a], -b))
        elif c.kind == "=":
            eq.append((a, b))
        else:  # pragma: no cover
            raise ValueError(f"unknown constraint kind {c.kind!r}")
    return ineq, eq


class _Simplex:
    """Two-phase tableau simplex (minimization, standard form, Bland's rule).

    min cost.w  s.t.  M w = rhs, w >= 0.  Artificial columns are appended for
    phase 1 and pinned to zero afterwards (never re-entering), which keeps
    dependent rows harmless and makes the final basis square for multiplier
    recovery.
    """

    def __init__(self, m_rows: list[list], rhs: list, cost: list):
        self.nreal = len(cost)
        nrows = len(m_rows)
        self.tab = []
        self.basis = []
        for i in range(nrows):
            row = list(m_rows[i])
            b = rhs[i]
            if b < 0:
                row = [-x for x in row]
                b = -b
            art = [R1 if k == i else R0 for k in range(nrows)]
            self.tab.append(row + art + [b])
            self.basis.append(self.nreal + i)
        self.ncols = self.nreal + nrows
        self.cost = list(cost) + [R0] * nrows

    def _pivot(self, r: int, c: int) -> None:
        tab = self.tab
        prow = tab[r]
        piv = prow[c]
        inv = R1 / piv
        tab[r] = prow = [x * inv for x in prow]
        for i, row in enumerate(tab):
            if i != r:
                f = row[c]
                if f:
                    tab[i] = [x - f * y for x, y in zip(row, prow)]
        self.basis[r] = c

    def _iterate(self, cost: list, allow: set[int]) -> LpStatus:
        """Bland's rule: entering = lowest-index improving column; leaving =
        smallest basic-variable index among the minimum-ratio rows."""
        while True:
            # reduced cost of column j is cost_j - sum_i cost_basis[i]*tab[i][j];
            # scan lazily and stop at the first negative one (Bland).
            cb = [(i, cost[b]) for i, b in enumerate(self.basis) if cost[b]]
            enter = -1
            for j in range(self.ncols):
                if j >= self.nreal and j not in allow:
                    continue
                s = cost[j]
                for i, c in cb:
                    t = self.tab[i][j]
                    if t:
                        s -= c * t
                if s < 0:
                    enter = j
                    break
            if enter < 0:
                return "optimal"
            leave = -1
            best = None
            for i, row in enumerate(self.tab):
                coef = row[enter]
                if coef > 0:
                    ratio = row[-1] / coef
                    if best is None or ratio < best or (ratio == best and self.basis[i] < self.basis[leave]):
                        best = ratio
                        leave = i
            if leave < 0:
                return "unbounded"
            self._pivot(leave, enter)

    def solve(self) -> tuple[LpStatus, object]:
        # Phase 1: minimize the sum of artificials.
        art_cost = [R0] * self.nreal + [R1] * (self.ncols - self.nreal)
        status = self._iterate(art_cost, allow=set(range(self.nreal, self.ncols)))
        assert status == "optimal"  # phase-1 objective is bounded below by 0
        infeas = sum((row[-1] for i, row in enumerate(self.tab) if self.basis[i] >= self.nreal), R0)
        if infeas > 0:
            return "infeasible", None
        status = self._iterate(self.cost, allow=set())
        if status == "unbounded":
            return "unbounded", None
        value = sum((self.cost[b] * row[-1] for b, row in zip(self.basis, self.tab)), R0)
        return "optimal", value

    def solution(self) -> list:
        w = [R0] * self.ncols
        for b, row in zip(self.basis, self.tab):
            w[b] = row[-1]
        return w

    def multipliers(self) -> list:
        """Solve B^T pi = cost_B exactly for the final basis."""
        n = len(self.basis)
        bt = []
        for b in self.basis:
            if b < self.nreal:
                col = [self.m_full[i][b] for i in range(n)]
            else:
                k = b - self.nreal
                col = [self.art_sign[k] if i == k else R0 for i in range(n)]
            bt.append(col + [self.cost[b]])
        return _solve_square(bt)


def _solve_square(aug: list[list]) -> list:
    """Gaussian elimination on an n x (n+1) augmented rational system."""
    n = len(aug)
    a = [row[:] for row in aug]
    for k in range(n):
        piv = None
        for i in range(k, n):
            if a[i][k] != 0:
                piv = i
                break
        if piv is None:  # pragma: no cover - basis matrices are invertible
            raise ValueError("singular basis")
        a[k], a[piv] = a[piv], a[k]
        pk = a[k][k]
        a[k] = [x / pk for x in a[k]]
        for i in range(n):
            if i != k and a[i][k]:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return [a[i][n] for i in range(n)]


def _solve_standard_min(m_rows: list[list], rhs: list, cost: list) -> tuple[LpStatus, object, list | None, list | None]:
    """Solve min cost.w s.t. m_rows w = rhs, w >= 0.

    Returns (status, value, w, pi) where pi are the row multipliers taken from
    the final basis (pi solves B^T pi = cost_B).
    """
    sim = _Simplex(m_rows, rhs, cost)
    # record data needed for multiplier recovery before pivoting mutates rows
    sim.m_full = [row[:] for row in m_rows]
    sim.art_sign = [R1 if rhs[i] >= 0 else -R1 for i in range(len(m_rows))]
    status, value = sim.solve()
    if status != "optimal":
        return status, None, None, None
    return status, value, sim.solution()[: sim.nreal], sim.multipliers()


def _lp_max(ineq: list[tuple], eq: list[tuple], c: list) -> LpResult:
    """max c.x s.t. ineq (<=) and eq, x free — solved through the dual."""
    d = len(c)
    if d == 0:
        ok = all(b >= 0 for _, b in ineq) and all(b == 0 for _, b in eq)
        return LpResult("optimal", R0, ()) if ok else LpResult("infeasible")
    m = len(ineq)
    e = len(eq)
    # Dual: min b.y + f.(z+ - z-)  s.t.  A^T y + E^T z+ - E^T z- = c,  y, z± >= 0
    cols: list[list] = []
    cost: list = []
    for a, b in ineq:
        cols.append(list(a))
        cost.append(b)
    for a, b in eq:
        cols.append(list(a))
        cost.append(b)
    for a, b in eq:
        cols.append([-x for x in a])
        cost.append(-b)
    m_rows = [[cols[j][i] for j in range(m + 2 * e)] for i in range(d)]
    status, value, _, pi = _solve_standard_min(m_rows, list(c), cost)
    if status == "optimal":
        x = tuple(pi)
        # strong duality: dual optimum equals the primal maximum at x
        assert all(_dot(a, x) <= b for a, b in ineq) and all(_dot(a, x) == b for a, b in eq)
        assert _dot(c, x) == value
        return LpResult("optimal", value, x)
    if status == "unbounded":
        return LpResult("infeasible")
    # Dual infeasible: primal is unbounded or infeasible; decide by the
    # auxiliary always-feasible LP  min t  s.t.  Ax - t <= b, |Ex - f| <= t.
    aux_ineq = [(list(a) + [-R1], b) for a, b in ineq]
    for a, b in eq:
        aux_ineq.append((list(a) + [-R1], b))
        aux_ineq.append(([-x for x in a] + [-R1], -b))
    aux_ineq.append(([R0] * d + [-R1], R0))  # t >= 0
    aux_obj = [R0] * d + [-R1]  # max -t
    res = _lp_max(aux_ineq, [], aux_obj)
    assert res.is_optimal
    return LpResult("unbounded") if res.value == 0 else LpResult("infeasible")


def _dot(a: Iterable, x: Iterable):
    return sum((u * v for u, v in zip(a, x)), R0)


def lp_solve(objective: Sequence, h, sense: Literal["max", "min"] = "max") -> LpResult:
    """Exact LP over an H-representation.

    ``h`` is any object with ``dim`` and ``constraints`` (each constraint
    carrying ``coeffs``, ``rhs`` and ``kind`` in {"<=", ">=", "="}).  Returns
    Optimal(value, point) / Infeasible / Unbounded; every pivot is exact and
    any optimal point satisfies all constraints exactly.
    """
    if len(objective) != h.dim:
        raise DimensionMismatch(f"objective length {len(objective)} != dim {h.dim}")
    c = [rat(x) for x in objective]
    ineq, eq = _split_constraints(h)
    if sense == "min":
        res = _lp_max(ineq, eq, [-x for x in c])
        if res.is_optimal:
            return LpResult("optimal", -res.value, res.point)
        return res
    return _lp_max(ineq, eq, c)
