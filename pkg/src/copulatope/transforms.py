"""Grid/density transforms and vertex-construction operators.

A grid matrix holds the cumulative values c_ij = C(i/p, j/q) of a discrete
(quasi-)copula on the (p+1) x (q+1) index grid.  Its density image is
x_ij = pq * (c_ij + c_{i-1,j-1} - c_{i,j-1} - c_{i-1,j}), a p x q matrix with
row sums q and column sums p for the uniform families.  The inverse is the
scaled cumulative double sum.

Also here: the tau basis map used for the direct-sum rank argument (whose
determinant has the closed form (-1)^(q-1) * q^(p-2)), matrix transposition,
column reversal, anti-diagonal direct sums and the block decomposition of
square densities into indecomposable summands.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import BadBoundary, NotSquare
from .exact import R0, R1, RatMatrix, det, rat


@dataclass(frozen=True)
class GridMatrix:
    """Cumulative (p+1) x (q+1) matrix of a discrete (quasi-)copula."""

    p: int
    q: int
    c: RatMatrix

    def __post_init__(self):
        if self.c.rows != self.p + 1 or self.c.cols != self.q + 1:
            raise BadBoundary(f"grid matrix must be {self.p + 1}x{self.q + 1}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "GridMatrix":
        m = RatMatrix.from_rows(rows)
        return cls(m.rows - 1, m.cols - 1, m)

    @classmethod
    def from_function(cls, p: int, q: int, f: Callable) -> "GridMatrix":
        """Restriction of a function on [0,1]^2 to the uniform grid."""
        return cls.from_rows([[f(rat(i, p), rat(j, q)) for j in range(q + 1)] for i in range(p + 1)])

    @classmethod
    def from_vector(cls, p: int, q: int, flat: Sequence) -> "GridMatrix":
        return cls.from_rows([[flat[i * (q + 1) + j] for j in range(q + 1)] for i in range(p + 1)])

    def __getitem__(self, ij):
        return self.c[ij]

    def to_vector(self) -> tuple:
        return self.c.entries

    def has_uniform_boundary(self) -> bool:
        p, q = self.p, self.q
        return (
            all(self[0, j] == 0 and self[p, j] == rat(j, q) for j in range(q + 1))
            and all(self[i, 0] == 0 and self[i, q] == rat(i, p) for i in range(p + 1))
        )


@dataclass(frozen=True)
class DensityMatrix:
    """p x q matrix living in Birkhoff/alternating-sign/transportation space."""

    p: int
    q: int
    x: RatMatrix

    def __post_init__(self):
        if self.x.rows != self.p or self.x.cols != self.q:
            raise BadBoundary(f"density matrix must be {self.p}x{self.q}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "DensityMatrix":
        m = RatMatrix.from_rows(rows)
        return cls(m.rows, m.cols, m)

    @classmethod
    def from_vector(cls, p: int, q: int, flat: Sequence) -> "DensityMatrix":
        return cls.from_rows([[flat[i * q + j] for j in range(q)] for i in range(p)])

    def __getitem__(self, ij):
        return self.x[ij]

    def to_vector(self) -> tuple:
        return self.x.entries

    def row_sums(self) -> list:
        return [sum(self.x.row(i), R0) for i in range(self.p)]

    def col_sums(self) -> list:
        return [sum((self[i, j] for i in range(self.p)), R0) for j in range(self.q)]

    def scaled(self, factor) -> "DensityMatrix":
        f = rat(factor)
        return DensityMatrix(self.p, self.q, RatMatrix(self.p, self.q, tuple(x * f for x in self.x.entries)))


def apply_T(g: GridMatrix) -> DensityMatrix:
    """Second-difference map scaled by pq; requires the uniform boundary."""
    if not g.has_uniform_boundary():
        raise BadBoundary("grid matrix violates the uniform boundary values")
    p, q = g.p, g.q
    pq = rat(p * q)
    rows = [
        [pq * (g[i, j] + g[i - 1, j - 1] - g[i, j - 1] - g[i - 1, j]) for j in range(1, q + 1)]
        for i in range(1, p + 1)
    ]
    return DensityMatrix.from_rows(rows)


def apply_T_inv(d: DensityMatrix) -> GridMatrix:
    """Cumulative double sum scaled by 1/pq; exact inverse of apply_T."""
    p, q = d.p, d.q
    pq = rat(p * q)
    c = [[R0] * (q + 1) for _ in range(p + 1)]
    for i in range(1, p + 1):
        rowacc = R0
        for j in range(1, q + 1):
            rowacc += d[i - 1, j - 1]
            c[i][j] = c[i - 1][j] + rowacc / pq
    return GridMatrix.from_rows(c)


def T_matrix(p: int, q: int) -> RatMatrix:
    """Matrix of the second-difference map on the pq coordinates c_ij
    (i in [p], j in [q], lexicographic), with zero boundary row/column.

    Lower triangular with unit diagonal, hence unimodular."""
    n = p * q

    def pos(i, j):
        return (i - 1) * q + (j - 1)

    rows = [[R0] * n for _ in range(n)]
    for i in range(1, p + 1):
        for j in range(1, q + 1):
            r = pos(i, j)
            for (ii, jj, s) in ((i, j, 1), (i - 1, j - 1, 1), (i, j - 1, -1), (i - 1, j, -1)):
                if ii >= 1 and jj >= 1:
                    rows[r][pos(ii, jj)] += rat(s)
    return RatMatrix.from_rows(rows)


def tau_matrix(p: int, q: int) -> RatMatrix:
    """Basis map sending e_ij to column/row partial-sum differences:

        e_ij -> sum_{k<=i} e_kj - sum_{k<=i} e_{k,j+1}   (i<p, j<q)
        e_iq -> sum_k e_ik - sum_k e_{i+1,k}             (i<p)
        e_pj -> sum_{k<=j} e_{p-1,k} - sum_{k<=j} e_pk   (j<q)
        e_pq -> e_pq
    """
    n = p * q

    def pos(i, j):
        return (i - 1) * q + (j - 1)

    cols = [[R0] * n for _ in range(n)]
    for i in range(1, p + 1):
        for j in range(1, q + 1):
            cidx = pos(i, j)
            col = cols[cidx]
            if i <= p - 1 and j <= q - 1:
                for k in range(1, i + 1):
                    col[pos(k, j)] += R1
                    col[pos(k, j + 1)] -= R1
            elif i <= p - 1 and j == q:
                for k in range(1, q + 1):
                    col[pos(i, k)] += R1
                    col[pos(i + 1, k)] -= R1
            elif i == p and j <= q - 1:
                for k in range(1, j + 1):
                    col[pos(p - 1, k)] += R1
                    col[pos(p, k)] -= R1
            else:
                col[pos(p, q)] += R1
    return RatMatrix.from_rows([[cols[c][r] for c in range(n)] for r in range(n)])


def tau_det(p: int, q: int):
    """Exact determinant of the tau basis map; equals (-1)^(q-1) * q^(p-2)."""
    return det(tau_matrix(p, q))


def transpose_point(g: GridMatrix) -> GridMatrix:
    return GridMatrix(g.q, g.p, g.c.transpose())


def transpose_density(d: DensityMatrix) -> DensityMatrix:
    return DensityMatrix(d.q, d.p, d.x.transpose())


def direct_sum(b: DensityMatrix, d: DensityMatrix) -> DensityMatrix:
    """Anti-diagonal block matrix with b top-right and d bottom-left."""
    p, q, s, t = b.p, b.q, d.p, d.q
    rows = []
    for i in range(p):
        rows.append([R0] * t + list(b.x.row(i)))
    for i in range(s):
        rows.append(list(d.x.row(i)) + [R0] * q)
    return DensityMatrix.from_rows(rows)


def direct_sum_square(b: DensityMatrix, d: DensityMatrix) -> DensityMatrix:
    """Direct sum of square densities, rescaled so margins stay uniform:
    inputs with margins p and s produce a (p+s)-margin matrix."""
    if b.p != b.q or d.p != d.q:
        raise NotSquare("square summands required")
    n = b.p + d.p
    return direct_sum(b.scaled(rat(n, b.p)), d.scaled(rat(n, d.p)))


def flip(d: DensityMatrix) -> DensityMatrix:
    """Reverse column order."""
    return DensityMatrix.from_rows([list(reversed(d.x.row(i))) for i in range(d.p)])


def decompose(d: DensityMatrix) -> list[DensityMatrix]:
    """Maximal anti-diagonal block decomposition of a square density.

    A split after the first k rows / last k columns is valid when the
    top-left k x (n-k) and bottom-right (n-k) x k blocks are identically
    zero (for nonnegative matrices this is the vanishing of the cumulative
    value at the split corner).  Returns the blocks from top-right to
    bottom-left; a single block means the matrix is indecomposable.
    """
    if d.p != d.q:
        raise NotSquare("decomposition is defined for square densities")
    n = d.p
    cuts = [0]
    for k in range(1, n):
        if all(d[i, j] == 0 for i in range(k) for j in range(n - k)) and all(
            d[i, j] == 0 for i in range(k, n) for j in range(n - k, n)
        ):
            cuts.append(k)
    cuts.append(n)
    blocks = []
    for k1, k2 in zip(cuts, cuts[1:]):
        rows = [[d[i, j] for j in range(n - k2, n - k1)] for i in range(k1, k2)]
        blocks.append(DensityMatrix.from_rows(rows))
    return blocks


def is_decomposable(d: DensityMatrix) -> bool:
    return len(decompose(d)) > 1


def recompose(blocks: Sequence[DensityMatrix]) -> DensityMatrix:
    """Fold a block list back with direct sums (inverse of decompose)."""
    out = blocks[0]
    for blk in blocks[1:]:
        out = direct_sum(out, blk)
    return out
