import dataclasses

import pytest

from copulatope.census import (
    VertexCensus,
    census_csv,
    census_series,
    gf_check,
    run_census,
    square_vertices,
)
from copulatope.errors import InsufficientData, UnsupportedSize
from copulatope.exact import rat
from copulatope.transforms import decompose, direct_sum, is_decomposable, recompose


# frozen from first principles: compositions of indecomposables give
# d_p = sum_{a=1}^{p-1} id_a * v_{p-a} with v = 1, 2, 7, 115 and id = v - d
EXPECTED_UDC = {1: (1, 0, 1), 2: (2, 1, 1), 3: (7, 3, 4), 4: (115, 13, 102)}


def test_run_census_udc_p4():
    rows = run_census("udc", 4)
    assert [(r.total, r.decomposable, r.indecomposable) for r in rows] == [
        EXPECTED_UDC[p] for p in range(1, 5)
    ]


def test_census_counts_match_composition_recursion():
    rows = run_census("udc", 4)
    v = {r.p: r.total for r in rows}
    idx = {r.p: r.indecomposable for r in rows}
    for p in range(2, 5):
        dec = sum(idx[a] * v[p - a] for a in range(1, p))
        assert rows[p - 1].decomposable == dec


def test_census_partition_validation():
    with pytest.raises(ValueError):
        VertexCensus(2, "udc", 2, 2, 1)
    with pytest.raises(UnsupportedSize):
        run_census("udc", 6)


def test_census_csv_format():
    text = census_csv(run_census("udc", 2))
    assert text.splitlines()[0] == "p,family,total,decomposable,indecomposable"
    assert "2,udc,2,1,1" in text


def test_gf_check_true_and_sensitivity():
    rows = run_census("udc", 4)
    assert gf_check(rows, 3)
    assert gf_check(rows, 4)
    bad = list(rows)
    bad[2] = dataclasses.replace(bad[2], decomposable=2, indecomposable=5)
    assert not gf_check(bad, 4)
    with pytest.raises(InsufficientData):
        gf_check(rows, 5)


def test_gf_series_conventions():
    V, D, ID = census_series(run_census("udc", 3), 3)
    assert V[0] == 1 and D[0] == 1 and ID[0] == 0
    assert V == [rat(1), rat(1), rat(2), rat(7)]


def test_decomposable_blocks_resum():
    for p in (3, 4):
        for v in square_vertices("udc", p):
            blocks = decompose(v)
            assert recompose(blocks).to_vector() == v.to_vector()


def test_cor54_closure_in_census():
    # indecomposable x indecomposable direct sums reappear as vertices
    for p in (3, 4):
        vertex_set = {v.to_vector() for v in square_vertices("udc", p)}
        for s in range(1, p):
            t = p - s
            for b in square_vertices("udc", s):
                if is_decomposable(b):
                    continue
                for d in square_vertices("udc", t):
                    if is_decomposable(d):
                        continue
                    glued = direct_sum(b.scaled(rat(p, s)), d.scaled(rat(p, t)))
                    assert glued.to_vector() in vertex_set


def test_cdq_census_small():
    rows = run_census("cdq", 3)
    assert [r.total for r in rows] == [1, 2, 7]
    assert gf_check(rows, 3)
