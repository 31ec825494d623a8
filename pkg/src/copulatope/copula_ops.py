"""Functional predicates, checkerboard extension, and the grade correlation.

Membership predicates check the exact constraint systems of the corresponding
families and report the violated constraint labels.  The checkerboard
extension is the piecewise-bilinear interpolant of the grid values; cells are
half-open [i/p, (i+1)/p) with the last cell closed, which agrees with any
left-closed convention at every grid node and in all cell interiors.

Spearman's rho of the extension has an exact closed form: the integral of a
bilinear patch over its cell is the cell area times the mean of the four
corner values, so

    rho = (12/(pq)) * sum_cells (c_ij + c_{i+1,j} + c_{i,j+1} + c_{i+1,j+1})/4 - 3.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import families
from .errors import OutOfRange, PreconditionFailed
from .exact import R0, R1, rat
from .polytope import contains
from .transforms import GridMatrix


@dataclass(frozen=True)
class ExtensionQuery:
    """A point of the unit square at which the extension is evaluated."""

    u: object
    v: object

    def __post_init__(self):
        object.__setattr__(self, "u", rat(self.u))
        object.__setattr__(self, "v", rat(self.v))
        if not (0 <= self.u <= 1 and 0 <= self.v <= 1):
            raise OutOfRange(f"query ({self.u}, {self.v}) outside the unit square")


def pi_restriction(p: int, q: int) -> GridMatrix:
    """Independence copula restricted to the grid."""
    return GridMatrix.from_function(p, q, lambda u, v: u * v)


def w_restriction(p: int, q: int) -> GridMatrix:
    """Lower Frechet bound max(0, u+v-1) restricted to the grid."""
    return GridMatrix.from_function(p, q, lambda u, v: max(R0, u + v - 1))


def min_restriction(p: int, q: int) -> GridMatrix:
    """Upper Frechet bound min(u, v) restricted to the grid."""
    return GridMatrix.from_function(p, q, lambda u, v: min(u, v))


def _membership(g: GridMatrix, h) -> tuple[bool, list[str]]:
    return contains(h, g.to_vector())


def is_discrete_copula(g: GridMatrix) -> tuple[bool, list[str]]:
    """Boundary equalities plus all pq supermodularity inequalities."""
    return _membership(g, families.build_dc(g.p, g.q, "grid", "defining"))


def is_ultramodular(g: GridMatrix) -> tuple[bool, list[str]]:
    """Membership in the ultramodular family (minimal grid system)."""
    return _membership(g, families.build_udc(g.p, g.q, "grid", "minimal"))


def is_quasi(g: GridMatrix) -> tuple[bool, list[str]]:
    return _membership(g, families.build_dq(g.p, g.q, "grid", "defining"))


def is_convex_quasi(g: GridMatrix) -> tuple[bool, list[str]]:
    return _membership(g, families.build_cdq(g.p, g.q, "grid", "defining"))


def checkerboard_eval(g: GridMatrix, query: ExtensionQuery | None = None, u=None, v=None):
    """Bilinear interpolation on the cell containing (u, v)."""
    if query is None:
        query = ExtensionQuery(u, v)
    p, q = g.p, g.q
    iu = min(int(query.u * p), p - 1)
    jv = min(int(query.v * q), q - 1)
    lam = query.u * p - iu
    mu = query.v * q - jv
    return (
        (1 - lam) * (1 - mu) * g[iu, jv]
        + (1 - lam) * mu * g[iu, jv + 1]
        + lam * (1 - mu) * g[iu + 1, jv]
        + lam * mu * g[iu + 1, jv + 1]
    )


def _refined_axis(n: int, refinement: int) -> list:
    steps = n * refinement
    return [rat(k, steps) for k in range(steps + 1)]


def _sections_midpoint_convex(g: GridMatrix, refinement: int, horizontal: bool) -> bool:
    """Jensen midpoint convexity of all sections on the refined grid.

    Sections of the extension are piecewise linear with breakpoints on the
    grid, so midpoint convexity over any refinement containing the
    breakpoints is exact convexity.
    """
    p, q = g.p, g.q
    var_axis = _refined_axis(p if horizontal else q, refinement)
    sec_axis = _refined_axis(q if horizontal else p, refinement)
    for a in sec_axis:
        vals = [
            checkerboard_eval(g, u=t, v=a) if horizontal else checkerboard_eval(g, u=a, v=t)
            for t in var_axis
        ]
        for i in range(len(var_axis)):
            for j in range(i + 2, len(var_axis), 2):
                if 2 * vals[(i + j) // 2] > vals[i] + vals[j]:
                    return False
    return True


def verify_extension_ultramodular(g: GridMatrix, refinement: int = 2) -> bool:
    """Convexity of every horizontal/vertical section of the extension of an
    ultramodular grid (exact midpoint test on the refined rational grid)."""
    ok, violated = is_ultramodular(g)
    if not ok:
        raise PreconditionFailed(f"not ultramodular: violates {violated[:3]}")
    return _sections_midpoint_convex(g, refinement, True) and _sections_midpoint_convex(g, refinement, False)


def verify_extension_quasi(g: GridMatrix, refinement: int = 2) -> bool:
    """Boundary, monotonicity, 1-Lipschitz continuity and section convexity
    of the extension of a convex discrete quasi-copula, on refined-grid pairs."""
    ok, violated = is_convex_quasi(g)
    if not ok:
        raise PreconditionFailed(f"not a convex quasi grid: violates {violated[:3]}")
    p, q = g.p, g.q
    us = _refined_axis(p, refinement)
    vs = _refined_axis(q, refinement)
    vals = {(u, v): checkerboard_eval(g, u=u, v=v) for u in us for v in vs}
    for u in us:
        if vals[(u, R0)] != 0 or vals[(u, R1)] != u:
            return False
    for v in vs:
        if vals[(R0, v)] != 0 or vals[(R1, v)] != v:
            return False
    for u1 in us:
        for v1 in vs:
            a = vals[(u1, v1)]
            for u2 in us:
                for v2 in vs:
                    b = vals[(u2, v2)]
                    if u2 >= u1 and v2 >= v1 and b < a:
                        return False
                    if abs(b - a) > abs(u2 - u1) + abs(v2 - v1):
                        return False
    return _sections_midpoint_convex(g, refinement, True) and _sections_midpoint_convex(g, refinement, False)


def spearman_rho(g: GridMatrix):
    """Population Spearman's rho of the checkerboard extension, exact."""
    okc, _ = is_discrete_copula(g)
    if not okc:
        okq, violated = is_quasi(g)
        if not okq:
            raise PreconditionFailed(f"neither copula nor quasi-copula grid: violates {violated[:3]}")
    p, q = g.p, g.q
    total = R0
    for i in range(p):
        for j in range(q):
            total += g[i, j] + g[i + 1, j] + g[i, j + 1] + g[i + 1, j + 1]
    return rat(12, p * q) * total / 4 - 3


def rho_numeric_oracle(g: GridMatrix, refinement: int):
    """Midpoint-rule integration of the extension at an aligned refinement.

    Exact for any refinement because each subcell's bilinear patch integrates
    to its center value times its area."""
    p, q = g.p, g.q
    nu, nv = p * refinement, q * refinement
    total = R0
    for a in range(nu):
        for b in range(nv):
            total += checkerboard_eval(g, u=rat(2 * a + 1, 2 * nu), v=rat(2 * b + 1, 2 * nv))
    return 12 * total / (nu * nv) - 3
