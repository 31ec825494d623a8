"""Decomposable/indecomposable census of square-family vertices.

Every vertex of the square ultramodular (or convex-quasi) density polytope
decomposes uniquely into an anti-diagonal chain of indecomposable blocks; a
vertex is decomposable when the chain has at least two blocks.  The census
counts both classes per order p.

With the series conventions V_0 = D_0 = 1 and ID_0 = 0 (the empty matrix
counts as a vertex and as trivially decomposed), unique decomposition gives
the composition identity

    V(x) = sum_k ID(x)^k = 1 / (1 - ID(x)),

equivalently V(x)*D(x) = V(x)^2 - V(x) + 1 using D = V - ID.  `gf_check`
verifies these identities coefficient-wise over exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Literal, Sequence

from . import families
from .errors import InsufficientData, UnsupportedSize
from .exact import R0, R1, rat
from .polytope import enumerate_vertices
from .transforms import DensityMatrix, decompose


@dataclass(frozen=True)
class VertexCensus:
    p: int
    family: Literal["udc", "cdq"]
    total: int
    decomposable: int
    indecomposable: int

    def __post_init__(self):
        if self.total != self.decomposable + self.indecomposable:
            raise ValueError("census classes must partition the vertex set")


@lru_cache(maxsize=None)
def square_vertices(family: Literal["udc", "cdq"], p: int) -> tuple[DensityMatrix, ...]:
    """Density-space vertices of the square family of order p (cached)."""
    if p == 1:
        return (DensityMatrix.from_rows([[R1]]),)
    builder = families.build_udc if family == "udc" else families.build_cdq
    form = "minimal" if p >= 3 else "defining"
    h = builder(p, p, "density", form)
    vrep = enumerate_vertices(h)
    return tuple(DensityMatrix.from_vector(p, p, v) for v in vrep.vertices)


def run_census(family: Literal["udc", "cdq"], p_max: int) -> list[VertexCensus]:
    """Census for p = 1..p_max (enumeration is desk-scale up to p = 5)."""
    if p_max > 5:
        raise UnsupportedSize("census is capped at p = 5 (22890 vertices)")
    out = []
    for p in range(1, p_max + 1):
        verts = square_vertices(family, p)
        dec = sum(1 for v in verts if len(decompose(v)) > 1)
        out.append(VertexCensus(p, family, len(verts), dec, len(verts) - dec))
    return out


def census_csv(rows: Sequence[VertexCensus]) -> str:
    lines = ["p,family,total,decomposable,indecomposable"]
    for r in rows:
        lines.append(f"{r.p},{r.family},{r.total},{r.decomposable},{r.indecomposable}")
    return "\n".join(lines) + "\n"


def _series_mul(a: list, b: list, deg: int) -> list:
    out = [R0] * (deg + 1)
    for i, ai in enumerate(a[: deg + 1]):
        if ai == 0:
            continue
        for j, bj in enumerate(b[: deg + 1 - i]):
            out[i + j] += ai * bj
    return out


def _series_inv(a: list, deg: int) -> list:
    assert a[0] != 0
    inv = [R1 / a[0]] + [R0] * deg
    for n in range(1, deg + 1):
        acc = R0
        for k in range(1, min(n, len(a) - 1) + 1):
            acc += a[k] * inv[n - k]
        inv[n] = -acc / a[0]
    return inv


def census_series(census: Sequence[VertexCensus], degree: int) -> tuple[list, list, list]:
    """(V, D, ID) truncated series with V_0 = D_0 = 1, ID_0 = 0."""
    by_p = {c.p: c for c in census}
    if any(p not in by_p for p in range(1, degree + 1)):
        raise InsufficientData(f"census must cover p = 1..{degree}")
    V = [R1] + [rat(by_p[p].total) for p in range(1, degree + 1)]
    D = [R1] + [rat(by_p[p].decomposable) for p in range(1, degree + 1)]
    ID = [R0] + [rat(by_p[p].indecomposable) for p in range(1, degree + 1)]
    return V, D, ID


def gf_check(census: Sequence[VertexCensus], degree: int) -> bool:
    """Coefficient-wise verification of the composition identity.

    Checks (a) the class partition, (b) V = 1/(1 - ID), and (c) the
    equivalent product form V*D = V^2 - V + 1, all to the given degree.
    """
    V, D, ID = census_series(census, degree)
    for p in range(degree + 1):
        if V[p] != D[p] + ID[p]:
            return False
    one_minus_id = [R1] + [-x for x in ID[1:]]
    if _series_inv(one_minus_id, degree) != V:
        return False
    lhs = _series_mul(V, D, degree)
    v2 = _series_mul(V, V, degree)
    rhs = [v2[k] - V[k] + (R1 if k == 0 else R0) for k in range(degree + 1)]
    return lhs == rhs
