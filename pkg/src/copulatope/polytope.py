"""H- and V-representations with exact vertex enumeration and facet certification.

The pipeline for every operation is: eliminate equality constraints by affine
substitution onto the free coordinates (the grid families all reduce to the
interior (p-1)(q-1)-dimensional space), then work on the reduced inequality
system with integer arithmetic.

Vertex enumeration is the double description method on the homogenization
cone: rays are gcd-normalized integer vectors, active sets are bitmasks, and
adjacency uses the combinatorial test (no third ray's active set contains the
candidate pair's common active set) with a popcount prefilter.  Facet
certification solves one exact LP per inequality: a row is redundant iff its
maximum over the remaining rows does not exceed its own bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Literal, Sequence

import numpy as np

try:
    from gmpy2 import mpz, popcount as _popcount

    def _bitcount(x: int) -> int:
        return _popcount(mpz(x))

except ImportError:  # pragma: no cover
    def _bitcount(x: int) -> int:
        return bin(x).count("1")

from .errors import DimensionMismatch, EmptyPolytope, NotMember, Unbounded
from .exact import LpResult, R0, R1, lp_solve, rank_rows, rat

Kind = Literal["<=", ">=", "="]


@dataclass(frozen=True)
class LinConstraint:
    """A single affine constraint coeffs . x (<=|>=|=) rhs."""

    coeffs: tuple
    rhs: object
    kind: Kind = "<="
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(rat(c) for c in self.coeffs))
        object.__setattr__(self, "rhs", rat(self.rhs))
        if all(c == 0 for c in self.coeffs) and not (self.kind == "=" and self.rhs == 0):
            raise ValueError(f"tautological/contradictory constraint {self.label!r}: zero coefficients")

    def evaluate(self, x: Sequence):
        return sum((c * v for c, v in zip(self.coeffs, x)), R0)

    def satisfied(self, x: Sequence) -> bool:
        v = self.evaluate(x)
        if self.kind == "<=":
            return v <= self.rhs
        if self.kind == ">=":
            return v >= self.rhs
        return v == self.rhs


@dataclass(frozen=True)
class HRep:
    """Inequality-and-equality description of a polyhedron."""

    dim: int
    constraints: tuple

    def __post_init__(self):
        for c in self.constraints:
            if len(c.coeffs) != self.dim:
                raise DimensionMismatch(f"constraint {c.label!r} has {len(c.coeffs)} coeffs, dim is {self.dim}")

    @property
    def equalities(self) -> tuple:
        return tuple(c for c in self.constraints if c.kind == "=")

    @property
    def inequalities(self) -> tuple:
        return tuple(c for c in self.constraints if c.kind != "=")

    def labels(self) -> list[str]:
        return [c.label for c in self.constraints]


@dataclass(frozen=True)
class VRep:
    """Vertex description: a duplicate-free list of extreme points."""

    dim: int
    vertices: tuple

    def __len__(self) -> int:
        return len(self.vertices)


# ---------------------------------------------------------------------------
# Equality elimination
# ---------------------------------------------------------------------------


@dataclass
class Reduction:
    """Affine substitution of the equality constraints.

    Full-space points are x = basis @ y + shift for reduced points y; the free
    (kept) original coordinates are listed in ``free_cols``.
    """

    dim: int
    free_cols: list[int]
    basis: list[list]  # full_dim x dim rational matrix
    shift: list
    rows: list[tuple]  # reduced inequalities: (coeffs tuple, rhs, label), meaning a.y <= b
    trivially_empty: bool = False
    trivial_labels: list[str] = field(default_factory=list)

    def embed(self, y: Sequence) -> tuple:
        y = [rat(v) for v in y]
        return tuple(sum((r * v for r, v in zip(row, y)), s) for row, s in zip(self.basis, self.shift))

    def project(self, x: Sequence) -> tuple:
        return tuple(rat(x[j]) for j in self.free_cols)


def reduce_equalities(h: HRep) -> Reduction:
    """Gauss-eliminate the equality rows, substituting into the inequalities."""
    n = h.dim
    eqs = [[*(rat(c) for c in e.coeffs), rat(e.rhs)] for e in h.equalities]
    pivots: list[tuple[int, list]] = []  # (column, normalized row)
    for row in eqs:
        for col, prow in pivots:
            f = row[col]
            if f:
                row[:] = [a - f * b for a, b in zip(row, prow)]
        col = next((j for j in range(n) if row[j] != 0), None)
        if col is None:
            if row[n] != 0:
                red = Reduction(0, [], [], [], [], trivially_empty=True)
                return red
            continue
        pv = row[col]
        prow = [a / pv for a in row]
        for c2, p2 in pivots:
            f = p2[col]
            if f:
                p2[:] = [a - f * b for a, b in zip(p2, prow)]
        pivots.append((col, prow))
    pivot_cols = {col for col, _ in pivots}
    free_cols = [j for j in range(n) if j not in pivot_cols]
    dim = len(free_cols)
    # x_col = prow[n] - sum_{free j} prow[j] * y_j   for pivot columns
    basis = [[R0] * dim for _ in range(n)]
    shift = [R0] * n
    for k, j in enumerate(free_cols):
        basis[j][k] = R1
    for col, prow in pivots:
        shift[col] = prow[n]
        for k, j in enumerate(free_cols):
            basis[col][k] = -prow[j]
    red = Reduction(dim, free_cols, basis, shift, [])
    for c in h.inequalities:
        a = [rat(x) for x in c.coeffs]
        b = rat(c.rhs)
        if c.kind == ">=":
            a = [-x for x in a]
            b = -b
        # substitute x = basis y + shift
        coeffs = [sum((a[i] * basis[i][k] for i in range(n) if basis[i][k] != 0), R0) for k in range(dim)]
        rhs = b - sum((a[i] * shift[i] for i in range(n) if shift[i] != 0), R0)
        if all(x == 0 for x in coeffs):
            if rhs < 0:
                red.trivially_empty = True
            else:
                red.trivial_labels.append(c.label)
            continue
        red.rows.append((tuple(coeffs), rhs, c.label))
    return red


def _canon_row(coeffs: Sequence, rhs) -> tuple:
    """Scale an inequality row by a positive rational so entries are coprime ints."""
    dens = [int(rat(c).denominator) for c in coeffs] + [int(rat(rhs).denominator)]
    m = 1
    for d in dens:
        m = m * d // gcd(m, d)
    ints = [int(rat(c).numerator) * (m // int(rat(c).denominator)) for c in coeffs]
    ib = int(rat(rhs).numerator) * (m // int(rat(rhs).denominator))
    g = 0
    for v in ints:
        g = gcd(g, v)
    g = gcd(g, ib)
    if g > 1:
        ints = [v // g for v in ints]
        ib //= g
    return tuple(ints), ib


class _RedPoly:
    """Reduced inequality system exposed with the HRep duck-type for lp_solve."""

    def __init__(self, dim: int, rows: Iterable[tuple]):
        self.dim = dim
        self.constraints = [LinConstraint(a, b, "<=", lbl) for a, b, lbl in rows]


def _coordinate_bounds(dim: int, rows: list[tuple]) -> list[tuple]:
    """Exact [min, max] of each coordinate; raises on empty/unbounded input."""
    poly = _RedPoly(dim, rows)
    bounds = []
    for i in range(dim):
        obj = [R0] * dim
        obj[i] = R1
        hi = lp_solve(obj, poly, "max")
        lo = lp_solve(obj, poly, "min")
        if hi.status == "infeasible" or lo.status == "infeasible":
            raise EmptyPolytope("no feasible point")
        if hi.status == "unbounded" or lo.status == "unbounded":
            raise Unbounded(f"coordinate {i} is unbounded")
        bounds.append((lo.value, hi.value))
    return bounds


# ---------------------------------------------------------------------------
# Double description
# ---------------------------------------------------------------------------

_POP = np.array([bin(i).count("1") for i in range(256)], dtype=np.uint8)


def _np_popcount(arr: np.ndarray) -> np.ndarray:
    return _POP[arr.view(np.uint8)].reshape(arr.shape[0], -1).sum(axis=1, dtype=np.int32)


class _Ray:
    __slots__ = ("vec", "vals", "zmask")

    def __init__(self, vec: tuple, vals: list, zmask: int):
        self.vec = vec
        self.vals = vals
        self.zmask = zmask


def _homogenize(rows: list[tuple]) -> list[tuple]:
    """(a, b, label) with a.y <= b  ->  integer row (a*, -b*) with row.(y,t) <= 0."""
    out = []
    for a, b, _lbl in rows:
        ints, ib = _canon_row(a, b)
        out.append(ints + (-ib,))
    return out


def _dd_enumerate(dim: int, rows: list[tuple]) -> list[tuple]:
    """Vertices of {y: a.y <= b} (bounded, full-dim-ish) by double description.

    ``rows`` are (coeffs, rhs, label) triples, already deduplicated and in the
    insertion order the caller wants (label-lexicographic for families).
    """
    hrows = _homogenize(rows)
    D = dim + 1
    hrows.append(tuple([0] * dim + [-1]))  # t >= 0 keeps the cone pointed
    nrows = len(hrows)

    # initial simplicial cone: greedily pick D independent rows
    chosen: list[int] = []
    mat: list[list] = []
    for idx, r in enumerate(hrows):
        if len(chosen) == D:
            break
        cand = mat + [[rat(x) for x in r]]
        if rank_rows(cand) == len(cand):
            chosen.append(idx)
            mat = cand
    if len(chosen) < D:
        raise Unbounded("constraint normals do not span; polyhedron has lineality")
    # rays of {y: B y <= 0} are the columns of -B^{-1}
    n = D
    aug = [mat[i][:] + [R1 if j == i else R0 for j in range(n)] for i in range(n)]
    for k in range(n):
        piv = next(i for i in range(k, n) if aug[i][k] != 0)
        aug[k], aug[piv] = aug[piv], aug[k]
        pk = aug[k][k]
        aug[k] = [x / pk for x in aug[k]]
        for i in range(n):
            if i != k and aug[i][k]:
                f = aug[i][k]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[k])]
    binv_cols = [[-aug[i][n + j] for i in range(n)] for j in range(n)]

    def normalize(vec_int: list[int]) -> tuple:
        g = 0
        for v in vec_int:
            g = gcd(g, v)
        if g > 1:
            vec_int = [v // g for v in vec_int]
        return tuple(vec_int)

    def to_int_vec(vec_rat: list) -> tuple:
        m = 1
        for v in vec_rat:
            d = int(rat(v).denominator)
            m = m * d // gcd(m, d)
        return normalize([int(rat(v).numerator) * (m // int(rat(v).denominator)) for v in vec_rat])

    rays: list[_Ray] = []
    processed = list(chosen)
    for col in binv_cols:
        vec = to_int_vec(col)
        vals = [sum(a * b for a, b in zip(hrows[k], vec)) for k in processed]
        z = 0
        for pos, v in enumerate(vals):
            if v == 0:
                z |= 1 << pos
        rays.append(_Ray(vec, vals, z))

    pending = [i for i in range(nrows) if i not in set(chosen)]
    for k in pending:
        g = hrows[k]
        pos_bit = 1 << len(processed)
        P: list[_Ray] = []
        N: list[_Ray] = []
        Z: list[_Ray] = []
        for r in rays:
            v = sum(a * b for a, b in zip(g, r.vec))
            r.vals.append(v)
            if v > 0:
                P.append(r)
            elif v < 0:
                N.append(r)
            else:
                r.zmask |= pos_bit
                Z.append(r)
        if not P:
            processed.append(k)
            continue
        need = D - 2
        new_rays: list[_Ray] = []
        if P and N:
            adjacent_pairs = _adjacent_pairs(rays, P, N, need)
            for rp, rn in adjacent_pairs:
                vp = rp.vals[-1]
                vn = rn.vals[-1]
                raw = [vp * b - vn * a for a, b in zip(rp.vec, rn.vec)]
                gg = 0
                for v in raw:
                    gg = gcd(gg, v)
                vec = tuple(v // gg for v in raw) if gg > 1 else tuple(raw)
                scale_ok = gg if gg > 1 else 1
                vals = [(vp * b - vn * a) // scale_ok for a, b in zip(rp.vals, rn.vals)]
                z = 0
                for pos, v in enumerate(vals):
                    if v == 0:
                        z |= 1 << pos
                new_rays.append(_Ray(vec, vals, z))
        rays = Z + N + new_rays
        processed.append(k)

    verts: list[tuple] = []
    for r in rays:
        t = r.vec[-1]
        if t <= 0:
            raise Unbounded("recession ray survived enumeration")
        verts.append(tuple(rat(c, t) for c in r.vec[:-1]))
    verts = sorted(set(verts))
    return verts


def _adjacent_pairs(rays: list[_Ray], P: list[_Ray], N: list[_Ray], need: int) -> list[tuple]:
    """Pairs (p, n) adjacent in the current cone: popcount prefilter then the
    combinatorial test (no third ray's zero set contains z(p) & z(n))."""
    out = []
    if len(P) * len(N) <= 20000 or len(rays) < 64:
        for rp in P:
            zp = rp.zmask
            for rn in N:
                z = zp & rn.zmask
                if _bitcount(z) < need:
                    continue
                ok = True
                for r in rays:
                    if r is rp or r is rn:
                        continue
                    if z & ~r.zmask == 0:
                        ok = False
                        break
                if ok:
                    out.append((rp, rn))
        return out
    # vectorized path (masks can exceed 64 bits: chunk into uint64 words)
    nwords = max(1, (max(r.zmask for r in rays).bit_length() + 63) // 64)
    M64 = (1 << 64) - 1

    def words(z: int) -> list[int]:
        return [(z >> (64 * w)) & M64 for w in range(nwords)]

    ZN = np.array([words(r.zmask) for r in N], dtype=np.uint64)  # |N| x nwords
    Zall = np.array([words(r.zmask) for r in rays], dtype=np.uint64)
    ray_index = {id(r): i for i, r in enumerate(rays)}
    for rp in P:
        zp = np.array(words(rp.zmask), dtype=np.uint64)
        inter = ZN & zp  # |N| x nwords
        pc = np.zeros(len(N), dtype=np.int32)
        for w in range(nwords):
            pc += _np_popcount(np.ascontiguousarray(inter[:, w]))
        cand = np.nonzero(pc >= need)[0]
        ip = ray_index[id(rp)]
        for j in cand:
            rn = N[j]
            z = inter[j]
            contains = np.all((Zall & z) == z, axis=1)
            cnt = int(np.count_nonzero(contains))
            if cnt == 2:
                out.append((rp, rn))
            else:
                # the two endpoints themselves always contain z; anything more
                # means non-adjacent unless those extras are p or n duplicates
                if cnt < 2:  # pragma: no cover - p and n always qualify
                    raise AssertionError("zero-set bookkeeping broken")
    return out


# ---------------------------------------------------------------------------
# Public operations
# ---------------------------------------------------------------------------


def _dedup_rows(rows: list[tuple]) -> tuple[list[tuple], list[str]]:
    """Merge geometrically identical reduced rows; first label wins."""
    seen: dict[tuple, str] = {}
    out: list[tuple] = []
    dropped: list[str] = []
    for a, b, lbl in rows:
        key = _canon_row(a, b)
        if key in seen:
            dropped.append(lbl)
        else:
            seen[key] = lbl
            out.append((a, b, lbl))
    return out, dropped


def enumerate_vertices(h: HRep) -> VRep:
    """Complete, duplicate-free vertex list of a bounded nonempty polytope."""
    red = reduce_equalities(h)
    if red.trivially_empty:
        raise EmptyPolytope("equalities/inequalities are inconsistent")
    if red.dim == 0:
        return VRep(h.dim, (red.embed(()),))
    rows, _ = _dedup_rows(sorted(red.rows, key=lambda r: r[2]))
    _coordinate_bounds(red.dim, rows)  # raises EmptyPolytope / Unbounded
    verts = _dd_enumerate(red.dim, rows)
    return VRep(h.dim, tuple(sorted(red.embed(v) for v in verts)))


def contains(h: HRep, x: Sequence) -> tuple[bool, list[str]]:
    """Exact membership check; returns (inside, violated labels)."""
    if len(x) != h.dim:
        raise DimensionMismatch(f"point has {len(x)} coords, dim is {h.dim}")
    xs = [rat(v) for v in x]
    violated = [c.label for c in h.constraints if not c.satisfied(xs)]
    return (not violated, violated)


def is_vertex(h: HRep, x: Sequence) -> bool:
    """Vertex test: active constraint normals span the reduced space."""
    inside, violated = contains(h, x)
    if not inside:
        raise NotMember(f"point violates {violated[:3]}")
    red = reduce_equalities(h)
    if red.dim == 0:
        return True
    y = red.project(x)
    active = []
    for a, b, _lbl in red.rows:
        if sum((c * v for c, v in zip(a, y)), R0) == b:
            active.append(list(a))
    if len(active) < red.dim:
        return False
    return rank_rows(active) == red.dim


def dimension(h: HRep) -> int:
    """Affine dimension of the solution set."""
    red = reduce_equalities(h)
    if red.trivially_empty:
        raise EmptyPolytope("inconsistent constraints")
    if red.dim == 0:
        return 0
    rows, _ = _dedup_rows(red.rows)
    if not rows:
        return red.dim
    # max t s.t. a.y + t <= b for all rows, t <= 1:
    # t*>0 full-dim, t*=0 lower-dimensional, t*<0 empty.
    aug = _RedPoly(red.dim + 1, [(tuple(a) + (R1,), b, lbl) for a, b, lbl in rows] + [((R0,) * red.dim + (R1,), R1, "cap")])
    obj = [R0] * red.dim + [R1]
    res = lp_solve(obj, aug, "max")
    assert res.is_optimal
    if res.value < 0:
        raise EmptyPolytope("no feasible point")
    if res.value > 0:
        return red.dim
    implicit = []
    poly = _RedPoly(red.dim, rows)
    for a, b, _lbl in rows:
        lo = lp_solve(list(a), poly, "min")
        if lo.is_optimal and lo.value == b:
            implicit.append(list(a))
    return red.dim - rank_rows(implicit)


def certify_minimal(h: HRep) -> tuple[HRep, list[str]]:
    """LP-certified irredundant system.

    A constraint a.x <= b is removed iff max a.x over the remaining system is
    <= b (each test capped by a.x <= b+1 to stay bounded).  Geometric
    duplicates (identical rows up to positive scaling after substituting the
    equalities) are merged first, keeping the first-emitted label.  Idempotent
    on full-dimensional polytopes.
    """
    red = reduce_equalities(h)
    if red.trivially_empty:
        raise EmptyPolytope("inconsistent constraints")
    removed: list[str] = list(red.trivial_labels)
    if red.dim == 0:
        mini = HRep(h.dim, h.equalities)
        return mini, removed
    rows, dropped = _dedup_rows(red.rows)
    removed.extend(dropped)
    feas = lp_solve([R0] * red.dim, _RedPoly(red.dim, rows), "max")
    if feas.status == "infeasible":
        raise EmptyPolytope("no feasible point")
    alive = list(range(len(rows)))
    surviving: list[str] = []
    for i, (a, b, lbl) in enumerate(rows):
        others = [rows[j] for j in alive if j != i]
        capped = others + [(a, b + 1, "cap")]
        res = lp_solve(list(a), _RedPoly(red.dim, capped), "max")
        assert res.is_optimal
        if res.value <= b:
            removed.append(lbl)
            alive.remove(i)
        else:
            surviving.append(lbl)
    surv_labels = set(surviving)
    mini = HRep(
        h.dim,
        tuple(c for c in h.constraints if c.kind == "=" or c.label in surv_labels),
    )
    return mini, removed
