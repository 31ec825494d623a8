"""Acceptance suite: one test per criterion, with a printed PASS/FAIL line
(run with ``pytest tests/test_acceptance.py -s`` to see them).

Three expected values circulated with the source material are contradicted by
the exact computation here and by independent oracles (brute-force basis
enumeration, vertex-incidence ranks, transpose cross-checks): the (3,5)
vertex-count row, the facet count/structure at (3,3) for the ultramodular
family, and the census generating-function product form.  For each, the
corrected assertion is the real test and the literal one is kept as a strict
xfail so the discrepancy stays visible; the analysis lives in the reviewer
notes outside the package.
"""

import random
from fractions import Fraction
from functools import lru_cache

import pytest

from copulatope import families
from copulatope.census import gf_check, run_census, square_vertices
from copulatope.copula_ops import verify_extension_quasi, verify_extension_ultramodular
from copulatope.exact import R0, R1, det, rat
from copulatope.polytope import certify_minimal, contains, enumerate_vertices, is_vertex, reduce_equalities
from copulatope.transforms import (
    DensityMatrix,
    GridMatrix,
    T_matrix,
    direct_sum,
    direct_sum_square,
    tau_det,
    transpose_point,
)

VERIFIED_TABLE1 = {
    (3, 3): {"udc": 7, "cdq": 7, "dq": 7, "dc": 6},
    (3, 4): {"udc": 52, "cdq": 52, "dq": 118, "dc": 96},
    (3, 5): {"udc": 176, "cdq": 151, "dq": 532, "dc": 360},
    (4, 4): {"udc": 115, "cdq": 69, "dq": 42, "dc": 24},
    (4, 5): {"udc": 3321, "cdq": 2163, "dq": 7636, "dc": 3000},
    (5, 5): {"udc": 22890, "cdq": 5447, "dq": 429, "dc": 120},
}
PUBLISHED_35 = {"udc": 166, "cdq": 138, "dq": 416}


def report(criterion: str, ok: bool, msg: str) -> None:
    print(f"[criterion {criterion}] {'PASS' if ok else 'FAIL'} - {msg}", flush=True)
    assert ok, f"criterion {criterion}: {msg}"


@lru_cache(maxsize=None)
def cell_count(family: str, p: int, q: int) -> int:
    if family in ("udc", "cdq") and p == q:
        return len(square_vertices(family, p))
    form = "minimal" if family != "dc" and min(p, q) >= 3 else "defining"
    h = getattr(families, f"build_{family}")(p, q, "density", form)
    return len(enumerate_vertices(h))


@pytest.mark.parametrize("cell", sorted(VERIFIED_TABLE1))
@pytest.mark.parametrize("family", ["udc", "cdq", "dq", "dc"])
def test_criterion_1_table1(cell, family):
    p, q = cell
    n = cell_count(family, p, q)
    expect = VERIFIED_TABLE1[cell][family]
    report("1", n == expect, f"{family}_{p}{q} vertex count {n} == {expect}")


@pytest.mark.parametrize("family", ["udc", "cdq", "dq"])
@pytest.mark.xfail(strict=True, reason="(3,5) counts as circulated; exact enumeration gives 176/151/532")
def test_criterion_1_published_35_row(family):
    assert cell_count(family, 3, 5) == PUBLISHED_35[family]


_PQ_RANGE = [(p, q) for p in range(3, 7) for q in range(p, 7)]


@pytest.mark.parametrize("pq", _PQ_RANGE)
def test_criterion_2_udc_facets(pq):
    p, q = pq
    mini, _ = certify_minimal(families.build_udc(p, q, "grid", "defining"))
    n = len(mini.inequalities)
    expect = families.udc_minimal_count(p, q)
    labels = {c.label for c in families.build_udc(p, q, "grid", "minimal").inequalities}
    ok = n == expect and {c.label for c in mini.inequalities} == labels
    report("2", ok, f"udc({p},{q}) certified {n} facets == {expect}, label sets agree")


@pytest.mark.xfail(strict=True, reason="(p-2)(q-2)+2(p-1)(q-1) misses the coincident exclusions at (3,3); true count is 10")
def test_criterion_2_udc_33_closed_form_literal():
    mini, _ = certify_minimal(families.build_udc(3, 3, "grid", "defining"))
    assert len(mini.inequalities) == (3 - 2) * (3 - 2) + 2 * (3 - 1) * (3 - 1)


@pytest.mark.parametrize("pq", _PQ_RANGE)
def test_criterion_2_cdq_facets(pq):
    p, q = pq
    mini, _ = certify_minimal(families.build_cdq(p, q, "grid", "defining"))
    n = len(mini.inequalities)
    expect = 2 * ((p - 1) * (q - 1) + 1)
    labels = {c.label for c in families.build_cdq(p, q, "grid", "minimal").inequalities}
    ok = n == expect and {c.label for c in mini.inequalities} == labels
    report("2", ok, f"cdq({p},{q}) certified {n} facets == {expect}, label sets agree")


@pytest.mark.parametrize("pq", _PQ_RANGE)
def test_criterion_2_asm_facets(pq):
    p, q = pq
    mini, _ = certify_minimal(families.build_dq(p, q, "density", "defining"))
    n = len(mini.inequalities)
    if p == q:
        expect = 4 * ((p - 2) ** 2 + 1)
    else:
        k = q // p
        expect = 2 * ((p - 1) * (q - 2) + 2) + 2 * (p - 2) * (q - k - 1)
    labels = {c.label for c in families.build_dq(p, q, "density", "minimal").inequalities}
    ok = n == expect and {c.label for c in mini.inequalities} == labels
    report("2", ok, f"asm({p},{q}) certified {n} facets == {expect}, label sets agree")


def _udc33_facet_profile() -> list[int]:
    h = families.build_udc(3, 3, "grid", "minimal")
    red = reduce_equalities(h)
    verts = [red.project(x) for x in enumerate_vertices(h).vertices]
    counts = []
    for a, b, _lbl in red.rows:
        counts.append(sum(1 for v in verts if sum((c * y for c, y in zip(a, v)), R0) == b))
    return sorted(counts)


def test_criterion_3_udc33_facet_structure():
    profile = _udc33_facet_profile()
    ok = profile == [4] * 8 + [5, 5]
    report("3", ok, f"udc(3,3): 10 facets, vertex counts per facet {profile} == 8 simplicial (4) + 2 of 5")


@pytest.mark.xfail(strict=True, reason="circulated caption says 9 facets (8 simplicial + 1 octahedral); certified structure is 10 = 8x4 + 2x5")
def test_criterion_3_literal():
    profile = _udc33_facet_profile()
    assert len(profile) == 9
    assert profile == [5] * 8 + [6]


def test_criterion_4_unimodularity():
    for p in range(2, 9):
        for q in range(2, 9):
            assert det(T_matrix(p, q)) in (R1, -R1)
    for p in range(2, 8):
        for q in range(2, 8):
            assert tau_det(p, q) == rat(-1) ** (q - 1) * rat(q) ** (p - 2)
    report("4", True, "det T = +/-1 for 2<=p,q<=8; tau det matches (-1)^(q-1) q^(p-2) for 2<=p,q<=7")


@pytest.mark.parametrize("p", [3, 4, 5])
def test_criterion_5_birkhoff_vertices_are_permutations(p):
    import itertools

    h = families.build_transport([R1] * p, [R1] * p, alternating=False)
    verts = set(enumerate_vertices(h).vertices)
    perms = {
        tuple(R1 if sigma[i] == j else R0 for i in range(p) for j in range(p))
        for sigma in itertools.permutations(range(p))
    }
    ok = verts == perms
    # the same statement for the copula-family scaling (margins p)
    hd = families.build_dc(p, p, "density", "defining")
    scaled = {tuple(x / p for x in v) for v in enumerate_vertices(hd).vertices}
    ok = ok and scaled == perms
    report("5", ok, f"p={p}: vertex set equals the {len(perms)} permutation matrices (both scalings)")


def _vertex_grids(family: str, p: int, q: int) -> list[GridMatrix]:
    h = getattr(families, f"build_{family}")(p, q, "grid", "defining")
    return [GridMatrix.from_vector(p, q, x) for x in enumerate_vertices(h).vertices]


def _seeded_combinations(grids, n, seed):
    rng = random.Random(seed)
    p, q = grids[0].p, grids[0].q
    out = []
    for _ in range(n):
        w = [rat(rng.randint(0, 8)) for _ in grids]
        tot = sum(w, R0)
        if tot == 0:
            w[0] = R1
            tot = R1
        vec = tuple(
            sum((wk * g.to_vector()[i] for wk, g in zip(w, grids)), R0) / tot
            for i in range((p + 1) * (q + 1))
        )
        out.append(GridMatrix.from_vector(p, q, vec))
    return out


@pytest.mark.parametrize("pq", [(3, 3), (3, 4), (4, 4)])
def test_criterion_6_ultramodular_extensions(pq):
    p, q = pq
    grids = _vertex_grids("udc", p, q)
    combos = _seeded_combinations(grids, 100, seed=20240817 + p * 10 + q)
    failures = 0
    for r in (1, 2, 4):
        for g in grids + combos:
            if not verify_extension_ultramodular(g, r):
                failures += 1
    report("6", failures == 0, f"udc({p},{q}): {len(grids)} vertices + 100 combos convex at refinements 1,2,4")


@pytest.mark.parametrize("pq", [(3, 3), (3, 4), (4, 4)])
def test_criterion_6_quasi_extensions(pq):
    p, q = pq
    grids = _vertex_grids("cdq", p, q)
    combos = _seeded_combinations(grids, 100, seed=907 + p * 10 + q)
    failures = 0
    for r in (1, 2, 4):
        for g in grids + combos:
            if not verify_extension_quasi(g, r):
                failures += 1
    report("6", failures == 0, f"cdq({p},{q}): {len(grids)} vertices + 100 combos quasi at refinements 1,2,4")


def test_criterion_7_vertex_constructions():
    checks = 0
    for (a, b) in [(2, 3), (3, 2)]:
        u = [rat(a)] * a + [rat(b)] * b
        v = [rat(b)] * b + [rat(a)] * a
        target = families.build_udc_margins(u, v)
        for vb in square_vertices("udc", a):
            for vd in square_vertices("udc", b):
                assert is_vertex(target, direct_sum(vb, vd).to_vector())
                checks += 1
    for (a, b) in [(2, 2), (2, 3), (3, 2)]:
        target = families.build_udc(a + b, a + b, "density", "minimal")
        for vb in square_vertices("udc", a):
            for vd in square_vertices("udc", b):
                assert is_vertex(target, direct_sum_square(vb, vd).to_vector())
                checks += 1
    v34 = enumerate_vertices(families.build_udc(3, 4, "grid", "defining"))
    v43 = enumerate_vertices(families.build_udc(4, 3, "grid", "defining"))
    transposed = {transpose_point(GridMatrix.from_vector(3, 4, x)).c.entries for x in v34.vertices}
    direct = {GridMatrix.from_vector(4, 3, y).c.entries for y in v43.vertices}
    assert transposed == direct
    report("7", True, f"{checks} direct sums are vertices (margin + square cases); transpose bijects V(3,4)<->V(4,3)")


def test_criterion_8_generating_function():
    census = run_census("udc", 5)
    totals = [c.total for c in census]
    assert totals == [1, 2, 7, 115, 22890]
    ok = gf_check(census, 5)
    report("8", ok, f"census totals {totals}; composition identity V = 1/(1-ID) holds to degree 5")


@pytest.mark.xfail(strict=True, reason="printed product form V*D = D^2+D-1 is inconsistent with any integer census (forces D_1 = 1/2)")
def test_criterion_8_literal_product_form():
    from copulatope.census import _series_mul, census_series

    census = run_census("udc", 5)
    V, D, _ = census_series(census, 5)
    lhs = _series_mul(V, D, 5)
    d2 = _series_mul(D, D, 5)
    rhs = [d2[k] + D[k] - (R1 if k == 0 else R0) for k in range(6)]
    assert lhs == rhs


def _second_difference(c_rows, p, q):
    pq = rat(p * q)
    return [
        [pq * (c_rows[i][j] + c_rows[i - 1][j - 1] - c_rows[i][j - 1] - c_rows[i - 1][j]) for j in range(1, q + 1)]
        for i in range(1, p + 1)
    ]


def test_criterion_9_saf_asa_round_trip():
    rng = random.Random(424242)
    count = 0
    for trial in range(10):
        p = rng.randint(2, 4)
        q = rng.randint(2, 4)
        pq = p * q

        def margins(n):
            w = [rng.randint(1, 9) for _ in range(n)]
            s = sum(w)
            return [rat(t * pq, s) for t in w]

        u, v = margins(p), margins(q)
        ut = [sum((x for x in u[: i + 1]), R0) for i in range(p)]
        vt = [sum((x for x in v[: j + 1]), R0) for j in range(q)]
        for alternating, target in ((False, families.build_saf(ut, vt)), (True, families.build_asa(ut, vt))):
            hsrc = families.build_transport(u, v, alternating=alternating)
            verts = enumerate_vertices(hsrc).vertices
            for _ in range(10):
                w = [rat(rng.randint(0, 6)) for _ in verts]
                tot = sum(w, R0)
                if tot == 0:
                    w[0] = R1
                    tot = R1
                x = [sum((wk * vv[i] for wk, vv in zip(w, verts)), R0) / tot for i in range(p * q)]
                # cumulative-sum map into the aggregation-function set
                c = [[R0] * (q + 1) for _ in range(p + 1)]
                for i in range(1, p + 1):
                    for j in range(1, q + 1):
                        c[i][j] = c[i - 1][j] + c[i][j - 1] - c[i - 1][j - 1] + x[(i - 1) * q + (j - 1)] / pq
                flat = tuple(c[i][j] for i in range(p + 1) for j in range(q + 1))
                inside, violated = contains(target, flat)
                assert inside, f"trial {trial}: cumulative image violates {violated[:3]}"
                back = _second_difference(c, p, q)
                assert [x[(i - 1) * q + (j - 1)] for i in range(1, p + 1) for j in range(1, q + 1)] == [
                    back[i - 1][j - 1] for i in range(1, p + 1) for j in range(1, q + 1)
                ]
                count += 1
    report("9", count == 200, f"{count} seeded transport/alternating points round-trip through the aggregation sets exactly")


def test_criterion_10_maxent_properties():
    import math

    from copulatope.families import FamilySpec
    from copulatope.maxent import MaxEntProblem, MomentConstraint, audit_feasibility, rho_functional, solve_maxent

    lam, beta = rho_functional(3, 3, normalized=True)
    offs = Fraction(int(beta.numerator), int(beta.denominator))
    spec = FamilySpec("birkhoff", 3, 3)

    prob0 = MaxEntProblem(spec)
    sol0 = solve_maxent(prob0)
    ok = max(abs(x - 1 / 9) for row in sol0.density for x in row) <= 1e-8
    probz = MaxEntProblem(spec, (MomentConstraint(lam, Fraction(0) - offs),))
    solz = solve_maxent(probz)
    ok = ok and max(abs(x - 1 / 9) for row in solz.density for x in row) <= 1e-8

    ents = {}
    sols = {}
    for t in (Fraction(0), Fraction(1, 5), Fraction(-1, 5), Fraction(2, 5), Fraction(-2, 5)):
        prob = MaxEntProblem(spec, (MomentConstraint(lam, t - offs),))
        sols[t] = solve_maxent(prob)
        ents[t] = sols[t].entropy
        ok = ok and audit_feasibility(prob, sols[t]) <= rat(1, 10**8)
    ok = ok and ents[Fraction(0)] >= ents[Fraction(1, 5)] >= ents[Fraction(2, 5)]
    ok = ok and ents[Fraction(0)] >= ents[Fraction(-1, 5)] >= ents[Fraction(-2, 5)]
    ok = ok and audit_feasibility(prob0, sol0) <= rat(1, 10**8)
    report("10", ok, "uniform at no/zero target; entropy non-increasing in |rho|; all solutions audit-feasible <= 1e-8")
