import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from copulatope import families
from copulatope.errors import BadBoundary, NotSquare
from copulatope.exact import R0, R1, det, rat
from copulatope.polytope import enumerate_vertices, is_vertex
from copulatope.transforms import (
    DensityMatrix,
    GridMatrix,
    T_matrix,
    apply_T,
    apply_T_inv,
    decompose,
    direct_sum,
    direct_sum_square,
    flip,
    is_decomposable,
    recompose,
    tau_det,
    transpose_point,
)


def pi_grid(p, q):
    return GridMatrix.from_function(p, q, lambda u, v: u * v)


def w_grid(p, q):
    return GridMatrix.from_function(p, q, lambda u, v: max(R0, u + v - 1))


def test_apply_T_pi_all_ones():
    d = apply_T(pi_grid(3, 3))
    assert all(x == 1 for x in d.to_vector())
    assert d.row_sums() == [rat(3)] * 3 and d.col_sums() == [rat(3)] * 3


def test_apply_T_w_antidiagonal():
    d = apply_T(w_grid(3, 3))
    expect = [[0, 0, 3], [0, 3, 0], [3, 0, 0]]
    assert d.to_vector() == tuple(rat(x) for row in expect for x in row)


def test_apply_T_requires_boundary():
    g = GridMatrix.from_rows([[0, 0], [0, rat(1, 2)]])
    with pytest.raises(BadBoundary):
        apply_T(g)


def test_T_matrix_unimodular_and_triangular():
    for (p, q) in [(2, 2), (3, 4), (4, 3), (5, 5)]:
        m = T_matrix(p, q)
        assert det(m) in (R1, -R1)
        n = p * q
        for i in range(n):
            assert m[i, i] == 1
            for j in range(i + 1, n):
                assert m[i, j] == 0


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(0, 20), min_size=9, max_size=9))
def test_apply_T_roundtrip_random_dc_points(ws):
    # random convex combination of DC_{4,4} vertices has the (c1) boundary
    verts = enumerate_vertices(families.build_dc(4, 4, "grid", "defining")).vertices
    rng = random.Random(sum(ws) + 1)
    picks = rng.sample(range(len(verts)), len(ws))
    tot = sum(ws)
    if tot == 0:
        ws = [1] * len(ws)
        tot = len(ws)
    point = tuple(
        sum((rat(w, tot) * verts[k][i] for w, k in zip(ws, picks)), R0) for i in range(len(verts[0]))
    )
    g = GridMatrix.from_vector(4, 4, point)
    assert apply_T_inv(apply_T(g)).c.entries == g.c.entries


def test_apply_T_inv_all_ones_is_pi():
    d = DensityMatrix.from_rows([[1] * 4] * 3)
    g = apply_T_inv(d)
    assert g.c.entries == pi_grid(3, 4).c.entries


def test_asm_central_vertex_is_quasi_not_copula():
    from copulatope.copula_ops import is_discrete_copula, is_quasi

    asm = DensityMatrix.from_rows([[0, 3, 0], [3, -3, 3], [0, 3, 0]])
    g = apply_T_inv(asm)
    assert is_quasi(g)[0]
    ok, violated = is_discrete_copula(g)
    assert not ok and any(lbl.startswith("c2") for lbl in violated)


def test_tau_det_formula():
    for p in range(2, 8):
        for q in range(2, 8):
            assert tau_det(p, q) == rat(-1) ** (q - 1) * rat(q) ** (p - 2)


def test_tau_det_examples():
    assert tau_det(3, 4) == rat(-4)
    assert tau_det(4, 3) == rat(9)
    assert tau_det(2, 2) == rat(-1)


def test_transpose_roundtrip_and_symmetry():
    g = pi_grid(3, 3)
    assert transpose_point(g).c.entries == g.c.entries
    g2 = w_grid(3, 4)
    assert transpose_point(transpose_point(g2)).c.entries == g2.c.entries


def test_transpose_maps_vertices_bijectively():
    v34 = enumerate_vertices(families.build_udc(3, 4, "grid", "defining"))
    v43 = enumerate_vertices(families.build_udc(4, 3, "grid", "defining"))
    transposed = {
        transpose_point(GridMatrix.from_vector(3, 4, x)).c.entries for x in v34.vertices
    }
    assert transposed == {x for x in (GridMatrix.from_vector(4, 3, y).c.entries for y in v43.vertices)}


def test_direct_sum_block_structure():
    b = DensityMatrix.from_rows([[1, 2], [3, 4]])
    d = DensityMatrix.from_rows([[5]])
    s = direct_sum(b, d)
    assert s.to_vector() == tuple(rat(x) for x in (0, 1, 2, 0, 3, 4, 5, 0, 0))


def test_direct_sum_antidiagonals():
    w2 = DensityMatrix.from_rows([[0, 2], [2, 0]])
    s = direct_sum_square(w2, w2)
    expect = [[0, 0, 0, 4], [0, 0, 4, 0], [0, 4, 0, 0], [4, 0, 0, 0]]
    assert s.to_vector() == tuple(rat(x) for row in expect for x in row)


def test_flip_involution_and_single_column():
    col = DensityMatrix.from_rows([[1], [2]])
    assert flip(col).to_vector() == col.to_vector()
    b = DensityMatrix.from_rows([[1, 2], [3, 4]])
    assert flip(flip(b)).to_vector() == b.to_vector()


def test_flip_of_direct_sum_main_diagonal():
    b = DensityMatrix.from_rows([[1]])
    d = DensityMatrix.from_rows([[2]])
    s = flip(direct_sum(b, d))
    assert s.to_vector() == (rat(1), R0, R0, rat(2))


def test_decompose_w_and_pi():
    dw = apply_T(w_grid(3, 3))
    blocks = decompose(dw)
    assert [(b.p, b.q) for b in blocks] == [(1, 1)] * 3
    dpi = apply_T(pi_grid(3, 3))
    assert len(decompose(dpi)) == 1 and not is_decomposable(dpi)
    with pytest.raises(NotSquare):
        decompose(DensityMatrix.from_rows([[1, 1]]))


def test_decompose_recompose_roundtrip():
    from copulatope.census import square_vertices

    for v in square_vertices("udc", 4):
        blocks = decompose(v)
        assert recompose(blocks).to_vector() == v.to_vector()
        for blk in blocks:
            assert len(decompose(blk)) == 1  # maximality


def test_cor54_direct_sums_are_vertices():
    from copulatope.census import square_vertices

    for (a, b) in [(2, 2), (2, 3), (3, 2)]:
        target = families.build_udc(a + b, a + b, "density", "minimal")
        for vb in square_vertices("udc", a):
            for vd in square_vertices("udc", b):
                s = direct_sum_square(vb, vd)
                assert is_vertex(target, s.to_vector())


def test_thm53_direct_sums_margin_polytope():
    # vertices of the 2x2 and 3x3 square families glued with mixed margins
    from copulatope.census import square_vertices

    for (a, b) in [(2, 3), (3, 2)]:
        u = [rat(a)] * a + [rat(b)] * b
        v = [rat(b)] * b + [rat(a)] * a
        target = families.build_udc_margins(u, v)
        for vb in square_vertices("udc", a):
            for vd in square_vertices("udc", b):
                s = direct_sum(vb, vd)
                assert is_vertex(target, s.to_vector())
