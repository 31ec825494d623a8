"""Constructors for the polytope families, in grid and density coordinates.

Grid space: variables c_ij, i in 0..p, j in 0..q (row-major, dim (p+1)(q+1)),
the cumulative values of a discrete (quasi-)copula.  Density space: variables
x_ij, i in 1..p, j in 1..q (dim pq), related to the grid by
x_ij = pq * (c_ij + c_{i-1,j-1} - c_{i,j-1} - c_{i-1,j}), so rows sum to q and
columns to p for the uniform families.

Constraint labels are stable and carry the traceability tags d1/d2/d3a/d3b
(ultramodular), b1/b2/b3a/b3b (their density images), q2a/q2b (quasi), v1/v3
(convex quasi), a1/a2/a3 (alternating-sign systems) and af2 (aggregation).
The defining builders emit the would-be-minimal rows first under their
canonical names, so that geometric duplicates introduced by the remaining
rows collapse onto those names and `certify_minimal` output is comparable,
as a label set, with the formula-emitted minimal systems.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional, Sequence

from .errors import MarginMismatch, NonIncreasingMargins, UnsupportedSize
from .exact import R0, R1, rat, rat_from_str, rat_to_str
from .polytope import HRep, LinConstraint, certify_minimal

Family = Literal[
    "dc", "udc", "dq", "cdq", "birkhoff", "asm",
    "transport", "alt_transport", "udc_margins", "cdq_margins", "saf", "asa",
]
Space = Literal["grid", "density"]
Form = Literal["defining", "minimal"]

_MARGIN_FAMILIES = {"transport", "alt_transport", "udc_margins", "cdq_margins", "saf", "asa"}


@dataclass(frozen=True)
class FamilySpec:
    """Symbolic identifier of a polytope family, parseable from CLI strings."""

    family: Family
    p: int = 0
    q: int = 0
    u: Optional[tuple] = None
    v: Optional[tuple] = None
    space: Space = "density"
    form: Form = "defining"

    def __post_init__(self):
        if self.family in _MARGIN_FAMILIES:
            if self.u is None or self.v is None:
                raise MarginMismatch(f"{self.family} requires margin vectors u and v")
            object.__setattr__(self, "u", tuple(rat(x) for x in self.u))
            object.__setattr__(self, "v", tuple(rat(x) for x in self.v))
            object.__setattr__(self, "p", len(self.u))
            object.__setattr__(self, "q", len(self.v))
        if self.p < 1 or self.q < 1:
            raise UnsupportedSize(f"p={self.p}, q={self.q} must be >= 1")

    @classmethod
    def parse(cls, text: str) -> "FamilySpec":
        parts = text.strip().lower().split(":")
        family = parts[0]
        p = q = 0
        u = v = None
        space: Space = "density"
        form: Form = "defining"
        alt = False
        for part in parts[1:]:
            if not part:
                continue
            if part in ("grid", "density"):
                space = part
            elif part in ("defining", "minimal"):
                form = part
            elif part == "alt":
                alt = True
            elif part.startswith("u="):
                u = tuple(rat_from_str(s) for s in part[2:].split(","))
            elif part.startswith("v="):
                v = tuple(rat_from_str(s) for s in part[2:].split(","))
            elif "x" in part:
                ps, qs = part.split("x")
                p, q = int(ps), int(qs)
            else:
                raise ValueError(f"cannot parse family segment {part!r}")
        if family == "transport" and alt:
            family = "alt_transport"
        return cls(family, p, q, u, v, space, form)

    def format(self) -> str:
        parts = [self.family if self.family != "alt_transport" else "transport"]
        if self.u is not None:
            parts.append("u=" + ",".join(rat_to_str(x) for x in self.u))
            parts.append("v=" + ",".join(rat_to_str(x) for x in self.v))
        else:
            parts.append(f"{self.p}x{self.q}")
            parts.append(self.space)
            parts.append(self.form)
        if self.family == "alt_transport":
            parts.append("alt")
        return ":".join(parts)


def _lbl(tag: str, *idx: int) -> str:
    return tag + "(" + ",".join(f"{i:02d}" for i in idx) + ")"


class _GridRows:
    """Accumulates labelled constraints over the grid variables c_ij."""

    def __init__(self, p: int, q: int):
        self.p, self.q = p, q
        self.dim = (p + 1) * (q + 1)
        self.cons: list[LinConstraint] = []
        self._seen: dict[tuple, str] = {}

    def _vec(self, terms: Sequence[tuple]) -> list:
        a = [R0] * self.dim
        for coef, i, j in terms:
            a[i * (self.q + 1) + j] += rat(coef)
        return a

    def eq(self, terms, rhs, label):
        self.cons.append(LinConstraint(tuple(self._vec(terms)), rhs, "=", label))

    def ge(self, terms, rhs, label):
        a = self._vec(terms)
        key = _dedup_key(a, rhs, ">=")
        if key in self._seen:
            return
        self._seen[key] = label
        self.cons.append(LinConstraint(tuple(a), rhs, ">=", label))

    def le(self, terms, rhs, label):
        a = self._vec(terms)
        key = _dedup_key([-x for x in a], -rat(rhs), ">=")
        if key in self._seen:
            return
        self._seen[key] = label
        self.cons.append(LinConstraint(tuple(a), rhs, "<=", label))

    def hrep(self) -> HRep:
        return HRep(self.dim, tuple(self.cons))


class _DensityRows(_GridRows):
    """Same accumulator over the density variables x_ij (1-based indices)."""

    def __init__(self, p: int, q: int):
        self.p, self.q = p, q
        self.dim = p * q
        self.cons = []
        self._seen = {}

    def _vec(self, terms: Sequence[tuple]) -> list:
        a = [R0] * self.dim
        for coef, i, j in terms:
            a[(i - 1) * self.q + (j - 1)] += rat(coef)
        return a


def _dedup_key(a: list, rhs, kind: str) -> tuple:
    from math import gcd, lcm

    dens = [int(rat(x).denominator) for x in a] + [int(rat(rhs).denominator)]
    m = lcm(*dens)
    ints = [int(rat(x).numerator) * (m // int(rat(x).denominator)) for x in a]
    ib = int(rat(rhs).numerator) * (m // int(rat(rhs).denominator))
    g = 0
    for vv in ints:
        g = gcd(g, vv)
    g = gcd(g, ib)
    if g > 1:
        ints = [vv // g for vv in ints]
        ib //= g
    return (tuple(ints), ib, kind)


# ---------------------------------------------------------------------------
# Shared row groups
# ---------------------------------------------------------------------------


def _grid_boundary(g: _GridRows, tag: str) -> None:
    p, q = g.p, g.q
    for j in range(q + 1):
        g.eq([(1, 0, j)], R0, _lbl(tag, 0, j))
        g.eq([(1, p, j)], rat(j, q), _lbl(tag, p, j))
    for i in range(1, p):
        g.eq([(1, i, 0)], R0, _lbl(tag, i, 0))
        g.eq([(1, i, q)], rat(i, p), _lbl(tag, i, q))


def _grid_supermod_terms(i: int, j: int) -> list[tuple]:
    return [(1, i, j), (1, i - 1, j - 1), (-1, i, j - 1), (-1, i - 1, j)]


def _udc_supermod_label(p: int, q: int, i: int, j: int) -> str:
    if (i, j) == (1, 1):
        return "d1a"
    if (i, j) == (p, q):
        return "d1b"
    if 2 <= i <= p - 1 and 2 <= j <= q - 1:
        return _lbl("d2", i - 1, j - 1)
    return _lbl("c2", i, j)


def _grid_convexity(g: _GridRows, tag_a: str, tag_b: str) -> None:
    """Section convexity: c_ij + c_{i,j+2} >= 2 c_{i,j+1} and transpose."""
    p, q = g.p, g.q
    for i in range(1, p):
        for j in range(q - 1):
            g.ge([(1, i, j), (1, i, j + 2), (-2, i, j + 1)], R0, _lbl(tag_a, i, j))
    for j in range(1, q):
        for i in range(p - 1):
            g.ge([(1, i, j), (1, i + 2, j), (-2, i + 1, j)], R0, _lbl(tag_b, i, j))


def _grid_quasi(g: _GridRows) -> None:
    p, q = g.p, g.q
    for i in range(p):
        for j in range(1, q + 1):
            g.ge([(1, i + 1, j), (-1, i, j)], R0, _lbl("q2a_lo", i, j))
            g.le([(1, i + 1, j), (-1, i, j)], rat(1, p), _lbl("q2a_hi", i, j))
    for i in range(1, p + 1):
        for j in range(q):
            g.ge([(1, i, j + 1), (-1, i, j)], R0, _lbl("q2b_lo", i, j))
            g.le([(1, i, j + 1), (-1, i, j)], rat(1, q), _lbl("q2b_hi", i, j))


def _density_margins(d: _DensityRows, u: Sequence, v: Sequence) -> None:
    p, q = d.p, d.q
    for i in range(1, p + 1):
        d.eq([(1, i, j) for j in range(1, q + 1)], u[i - 1], _lbl("rowsum", i))
    for j in range(1, q + 1):
        d.eq([(1, i, j) for i in range(1, p + 1)], v[j - 1], _lbl("colsum", j))


def _udc_nonneg_label(p: int, q: int, i: int, j: int) -> str:
    if (i, j) == (1, 1):
        return "b1a"
    if (i, j) == (p, q):
        return "b1b"
    if 2 <= i <= p - 1 and 2 <= j <= q - 1:
        return _lbl("b2", i - 1, j - 1)
    return _lbl("nn", i, j)


def _density_monotone(d: _DensityRows, tag_a: str, tag_b: str,
                      u: Sequence | None = None, v: Sequence | None = None) -> None:
    """Column/row partial-sum monotonicity (density image of section convexity).

    With margin vectors the partial sums are compared relative to their
    column/row totals (cross-multiplied to stay rational):

        v_j * sum_{l<=i} x_{l,j+1}  >=  v_{j+1} * sum_{l<=i} x_{lj}

    and the row analogue.  For uniform margins this is the plain system.
    The normalization is what makes anti-diagonal direct sums of vertices
    extreme in the mixed-margin polytopes: the seam rows become active,
    whereas the unweighted comparison is violated outright whenever the two
    summands have different scales.
    """
    p, q = d.p, d.q
    for i in range(1, p):
        for j in range(1, q):
            if v is None:
                cl, cr = R1, R1
            else:
                cl, cr = rat(v[j - 1]), rat(v[j])
            d.ge([(cl, l, j + 1) for l in range(1, i + 1)] + [(-cr, l, j) for l in range(1, i + 1)],
                 R0, _lbl(tag_a, i, j))
    for i in range(1, p):
        for j in range(1, q):
            if u is None:
                cl, cr = R1, R1
            else:
                cl, cr = rat(u[i - 1]), rat(u[i])
            d.ge([(cl, i + 1, h) for h in range(1, j + 1)] + [(-cr, i, h) for h in range(1, j + 1)],
                 R0, _lbl(tag_b, i, j))


def _density_alternating(d: _DensityRows, u: Sequence, v: Sequence, corner_tag: str | None) -> None:
    """Partial column/row sums bounded by [0, margin] (alternating systems)."""
    p, q = d.p, d.q
    if corner_tag:
        for (i, j) in ((1, 1), (1, q), (p, 1), (p, q)):
            d.ge([(1, i, j)], R0, _lbl(corner_tag, i, j))
    for i in range(1, p + 1):
        for j in range(1, q + 1):
            col = [(1, l, j) for l in range(1, i + 1)]
            d.ge(col, R0, _lbl("a2lo", i, j))
            d.le(col, v[j - 1], _lbl("a2hi", i, j))
    for i in range(1, p + 1):
        for j in range(1, q + 1):
            row = [(1, i, h) for h in range(1, j + 1)]
            d.ge(row, R0, _lbl("a3lo", i, j))
            d.le(row, u[i - 1], _lbl("a3hi", i, j))


# ---------------------------------------------------------------------------
# Family builders
# ---------------------------------------------------------------------------


def build_dc(p: int, q: int, space: Space = "density", form: Form = "defining") -> HRep:
    """Discrete copulas (c1)+(c2); density form is the generalized Birkhoff
    polytope with row sums q and column sums p."""
    if space == "grid":
        g = _GridRows(p, q)
        _grid_boundary(g, "c1")
        for i in range(1, p + 1):
            for j in range(1, q + 1):
                g.ge(_grid_supermod_terms(i, j), R0, _lbl("c2", i, j))
        h = g.hrep()
    else:
        d = _DensityRows(p, q)
        _density_margins(d, [rat(q)] * p, [rat(p)] * q)
        for i in range(1, p + 1):
            for j in range(1, q + 1):
                d.ge([(1, i, j)], R0, _lbl("nn", i, j))
        h = d.hrep()
    if form == "minimal":
        h, _ = certify_minimal(h)
    return h


def udc_minimal_count(p: int, q: int) -> int:
    """Number of facets of the ultramodular family for p,q >= 3.

    The closed form (p-2)(q-2) + 2(p-1)(q-1) assumes the two excluded
    supermodularity indices (1,1) and (p-2,q-2) are distinct; at p = q = 3
    they coincide and the polytope has one more facet.
    """
    base = (p - 2) * (q - 2) + 2 * (p - 1) * (q - 1)
    return base + 1 if (p, q) == (3, 3) else base


def _udc_d2_excluded(p: int, q: int, i: int, j: int) -> bool:
    return (i, j) in {(1, 1), (p - 2, q - 2)}


def build_udc(p: int, q: int, space: Space = "density", form: Form = "defining") -> HRep:
    """Ultramodular discrete copulas: DC plus convex coordinatewise sections."""
    if p < 2 or q < 2:
        raise UnsupportedSize("ultramodular family needs p,q >= 2")
    minimal_by_formula = form == "minimal" and min(p, q) >= 3
    if space == "grid":
        g = _GridRows(p, q)
        _grid_boundary(g, "c1")
        for i in range(1, p + 1):
            for j in range(1, q + 1):
                lbl = _udc_supermod_label(p, q, i, j)
                if minimal_by_formula:
                    if lbl.startswith("c2"):
                        continue
                    if lbl.startswith("d2") and _udc_d2_excluded(p, q, i - 1, j - 1):
                        continue
                g.ge(_grid_supermod_terms(i, j), R0, lbl)
        _grid_convexity(g, "d3a", "d3b")
        h = g.hrep()
    else:
        d = _DensityRows(p, q)
        _density_margins(d, [rat(q)] * p, [rat(p)] * q)
        for i in range(1, p + 1):
            for j in range(1, q + 1):
                lbl = _udc_nonneg_label(p, q, i, j)
                if minimal_by_formula:
                    if lbl.startswith("nn"):
                        continue
                    if lbl.startswith("b2") and _udc_d2_excluded(p, q, i - 1, j - 1):
                        continue
                d.ge([(1, i, j)], R0, lbl)
        _density_monotone(d, "b3a", "b3b")
        h = d.hrep()
    if form == "minimal" and not minimal_by_formula:
        h, _ = certify_minimal(h)
    return h


def asm_minimal_count(p: int, q: int) -> int:
    """Facet count of the generalized alternating sign matrix polytope, p,q >= 3."""
    if p == q:
        return 4 * ((p - 2) ** 2 + 1)
    if p > q:
        return asm_minimal_count(q, p)
    k = q // p
    return 2 * ((p - 1) * (q - 2) + 2) + 2 * (p - 2) * (q - k - 1)


def _asm_minimal_ranges(p: int, q: int):
    """Index sets (as (tag, i, j) triples) of the minimal alternating system.

    Column partial sums keep prefix/suffix lengths 1..p-1 for p < q and
    1..p-2 for p = q (interior columns only); row partial sums keep lengths
    1..q-k-1 where q = kp+r.  Corners are listed separately under a1.
    """
    assert 3 <= p <= q
    rows = [("a1", 1, 1), ("a1", 1, q), ("a1", p, 1), ("a1", p, q)]
    if p == q:
        ilo = range(1, p - 1)          # prefix lengths 1..p-2
        ihi = range(2, p)              # suffix lengths 1..p-2 (start i+1)
        jlo = range(1, p - 1)
        jhi = range(2, p)
    else:
        k = q // p
        ilo = range(1, p)              # prefix lengths 1..p-1
        ihi = range(1, p)
        jlo = range(1, q - k)          # prefix lengths 1..q-k-1
        jhi = range(k + 1, q)          # suffix lengths 1..q-k-1
    for j in range(2, q):
        for i in ilo:
            rows.append(("a2lo", i, j))
        for i in ihi:
            rows.append(("a2hi", i, j))
    for i in range(2, p):
        for j in jlo:
            rows.append(("a3lo", i, j))
        for j in jhi:
            rows.append(("a3hi", i, j))
    return rows


def build_dq(p: int, q: int, space: Space = "density", form: Form = "defining") -> HRep:
    """Discrete quasi-copulas; density form is the generalized alternating
    sign matrix polytope.  MINIMAL requires min(p,q) >= 3 (Thm-style closed
    forms); smaller sizes should be certified from the DEFINING system."""
    if form == "minimal" and min(p, q) < 3:
        raise UnsupportedSize("no closed-form minimal system below 3; certify the defining form")
    if form == "minimal":
        if space == "grid":
            return _density_hrep_to_grid(p, q, build_dq(p, q, "density", "minimal"), "q1")
        d = _DensityRows(p, q)
        _density_margins(d, [rat(q)] * p, [rat(p)] * q)
        pp, qq = (p, q) if p <= q else (q, p)
        for tag, i, j in _asm_minimal_ranges(pp, qq):
            ii, jj = (i, j) if p <= q else (j, i)
            if p > q:
                tag = {"a1": "a1", "a2lo": "a3lo", "a2hi": "a3hi", "a3lo": "a2lo", "a3hi": "a2hi"}[tag]
            if tag == "a1":
                d.ge([(1, ii, jj)], R0, _lbl("a1", ii, jj))
            elif tag == "a2lo":
                d.ge([(1, l, jj) for l in range(1, ii + 1)], R0, _lbl("a2lo", ii, jj))
            elif tag == "a2hi":
                d.le([(1, l, jj) for l in range(1, ii + 1)], rat(p), _lbl("a2hi", ii, jj))
            elif tag == "a3lo":
                d.ge([(1, ii, h) for h in range(1, jj + 1)], R0, _lbl("a3lo", ii, jj))
            else:
                d.le([(1, ii, h) for h in range(1, jj + 1)], rat(q), _lbl("a3hi", ii, jj))
        return d.hrep()
    if space == "grid":
        g = _GridRows(p, q)
        _grid_boundary(g, "q1")
        _grid_quasi(g)
        return g.hrep()
    d = _DensityRows(p, q)
    _density_margins(d, [rat(q)] * p, [rat(p)] * q)
    _density_alternating(d, [rat(q)] * p, [rat(p)] * q, "a1")
    return d.hrep()


def cdq_minimal_count(p: int, q: int) -> int:
    """Facet count of the convex quasi-copula family, p,q >= 3."""
    return 2 * ((p - 1) * (q - 1) + 1)


def build_cdq(p: int, q: int, space: Space = "density", form: Form = "defining") -> HRep:
    """Discrete quasi-copulas with convex coordinatewise sections."""
    if p < 2 or q < 2:
        raise UnsupportedSize("convex quasi family needs p,q >= 2")
    minimal_by_formula = form == "minimal" and min(p, q) >= 3
    if space == "grid":
        g = _GridRows(p, q)
        _grid_boundary(g, "q1")
        g.ge([(1, 1, 1)], R0, "v1a")
        g.ge([(1, p - 1, q - 1)], rat((p - 1) * (q - 1) - 1, p * q), "v1b")
        _grid_convexity(g, "v3a", "v3b")
        if not minimal_by_formula:
            _grid_quasi(g)
        h = g.hrep()
    else:
        d = _DensityRows(p, q)
        _density_margins(d, [rat(q)] * p, [rat(p)] * q)
        d.ge([(1, 1, 1)], R0, _lbl("a1", 1, 1))
        d.ge([(1, p, q)], R0, _lbl("a1", p, q))
        _density_monotone(d, "a3a", "a3b")
        if not minimal_by_formula:
            _density_alternating(d, [rat(q)] * p, [rat(p)] * q, None)
        h = d.hrep()
    if form == "minimal" and not minimal_by_formula:
        h, _ = certify_minimal(h)
    return h


def build_transport(u: Sequence, v: Sequence, alternating: bool = False) -> HRep:
    """Transportation polytope T(u,v), or the alternating variant A(u,v)."""
    u = [rat(x) for x in u]
    v = [rat(x) for x in v]
    if any(x <= 0 for x in u) or any(x <= 0 for x in v):
        raise MarginMismatch("margins must be strictly positive")
    if sum(u, R0) != sum(v, R0):
        raise MarginMismatch(f"margin sums differ: {sum(u, R0)} != {sum(v, R0)}")
    p, q = len(u), len(v)
    d = _DensityRows(p, q)
    _density_margins(d, u, v)
    if alternating:
        _density_alternating(d, u, v, "a1")
    else:
        for i in range(1, p + 1):
            for j in range(1, q + 1):
                d.ge([(1, i, j)], R0, _lbl("nn", i, j))
    return d.hrep()


def build_udc_margins(u: Sequence, v: Sequence) -> HRep:
    """Subpolytope of T(u,v) with margin-relative monotone partial sums
    (the mixed-margin generalization of the ultramodular density family)."""
    h = build_transport(u, v, alternating=False)
    d = _DensityRows(len(u), len(v))
    d.cons = list(h.constraints)
    d._seen = {}
    _density_monotone(d, "b3a", "b3b", u, v)
    return d.hrep()


def build_cdq_margins(u: Sequence, v: Sequence) -> HRep:
    """Subpolytope of A(u,v) with margin-relative monotone partial sums
    (the mixed-margin generalization of the convex-quasi density family)."""
    h = build_transport(u, v, alternating=True)
    d = _DensityRows(len(u), len(v))
    d.cons = list(h.constraints)
    d._seen = {}
    _density_monotone(d, "a3a", "a3b", u, v)
    return d.hrep()


def _validate_cumulative(ut: Sequence, vt: Sequence) -> tuple[list, list]:
    ut = [rat(x) for x in ut]
    vt = [rat(x) for x in vt]
    p, q = len(ut), len(vt)
    if any(b <= a for a, b in zip([R0] + ut[:-1], ut)) or any(b <= a for a, b in zip([R0] + vt[:-1], vt)):
        raise NonIncreasingMargins("cumulative margins must be strictly increasing from 0")
    if ut[-1] != p * q or vt[-1] != p * q:
        raise MarginMismatch(f"cumulative margins must end at pq = {p * q}")
    return ut, vt


def _aggregation_boundary(g: _GridRows, ut: list, vt: list) -> None:
    p, q = g.p, g.q
    pq = rat(p * q)
    for j in range(q + 1):
        g.eq([(1, 0, j)], R0, _lbl("af1a", 0, j))
        if j > 0:
            g.eq([(1, p, j)], vt[j - 1] / pq, _lbl("af1b", p, j))
        else:
            g.eq([(1, p, 0)], R0, _lbl("af1a", p, 0))
    for i in range(1, p):
        g.eq([(1, i, 0)], R0, _lbl("af1a", i, 0))
        g.eq([(1, i, q)], ut[i - 1] / pq, _lbl("af1b", i, q))


def build_saf(ut: Sequence, vt: Sequence) -> HRep:
    """Supermodular aggregation functions with cumulative margins ut, vt."""
    ut, vt = _validate_cumulative(ut, vt)
    p, q = len(ut), len(vt)
    g = _GridRows(p, q)
    _aggregation_boundary(g, ut, vt)
    for i in range(1, p + 1):
        for j in range(1, q + 1):
            g.ge(_grid_supermod_terms(i, j), R0, _lbl("af2a", i, j))
    return g.hrep()


def build_asa(ut: Sequence, vt: Sequence) -> HRep:
    """Alternating-supermodular aggregation functions: rectangle inequalities
    touching the boundary of the index grid."""
    ut, vt = _validate_cumulative(ut, vt)
    p, q = len(ut), len(vt)
    g = _GridRows(p, q)
    _aggregation_boundary(g, ut, vt)
    for i1 in range(p):
        for i2 in range(i1 + 1, p + 1):
            for j1 in range(q):
                for j2 in range(j1 + 1, q + 1):
                    if i1 == 0 or i2 == p or j1 == 0 or j2 == q:
                        g.ge(
                            [(1, i1, j1), (1, i2, j2), (-1, i1, j2), (-1, i2, j1)],
                            R0,
                            _lbl("af2b", i1, i2, j1, j2),
                        )
    return g.hrep()


def _density_hrep_to_grid(p: int, q: int, h: HRep, boundary_tag: str) -> HRep:
    """Pull a density-space system back through x = pq * second difference."""
    g = _GridRows(p, q)
    _grid_boundary(g, boundary_tag)
    pq = rat(p * q)
    for c in h.constraints:
        if c.label.startswith(("rowsum", "colsum")):
            continue  # implied by the grid boundary
        terms: list[tuple] = []
        for i in range(1, p + 1):
            for j in range(1, q + 1):
                coef = c.coeffs[(i - 1) * q + (j - 1)]
                if coef == 0:
                    continue
                coef = coef * pq
                terms += [(coef, i, j), (coef, i - 1, j - 1), (-coef, i, j - 1), (-coef, i - 1, j)]
        if c.kind == ">=":
            g.ge(terms, c.rhs, c.label)
        elif c.kind == "<=":
            g.le(terms, c.rhs, c.label)
        else:
            g.eq(terms, c.rhs, c.label)
    return g.hrep()


def build(spec: FamilySpec) -> HRep:
    """Dispatch a FamilySpec to its constructor."""
    f = spec.family
    if f == "dc":
        return build_dc(spec.p, spec.q, spec.space, spec.form)
    if f == "udc":
        return build_udc(spec.p, spec.q, spec.space, spec.form)
    if f == "dq":
        return build_dq(spec.p, spec.q, spec.space, spec.form)
    if f == "cdq":
        return build_cdq(spec.p, spec.q, spec.space, spec.form)
    if f == "birkhoff":
        return build_dc(spec.p, spec.q, "density", spec.form)
    if f == "asm":
        return build_dq(spec.p, spec.q, "density", spec.form)
    if f == "transport":
        return build_transport(spec.u, spec.v, alternating=False)
    if f == "alt_transport":
        return build_transport(spec.u, spec.v, alternating=True)
    if f == "udc_margins":
        return build_udc_margins(spec.u, spec.v)
    if f == "cdq_margins":
        return build_cdq_margins(spec.u, spec.v)
    if f == "saf":
        return build_saf(spec.u, spec.v)
    if f == "asa":
        return build_asa(spec.u, spec.v)
    raise ValueError(f"unknown family {f!r}")
