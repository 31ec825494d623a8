"""Maximum-entropy density selection inside a family polytope.

The problem is: maximize H(z) = -sum z_ij log z_ij over the probability-mass
normalization of a density-space family polytope (entries z = x/(pq), margins
row sums 1/p and column sums 1/q), intersected with optional linear moment
constraints such as a grade-correlation target.

The solver is exact/floating hybrid: the H-representation, the interior test
and the final feasibility audit are exact rational; the optimization itself
runs in floats.  Equality-constrained maxent has the Gibbs form
z = exp(-1 - E^T nu), so the dual  g(nu) = sum z(nu) + nu.d  is smooth and
convex and is minimized by a damped Newton iteration.  Inequality families
are handled by an active-set loop: violated rows are activated as equalities,
rows with wrong-sign multipliers are released, and the KKT residual is
reported honestly at the end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import families
from .errors import Infeasible, NoInterior, NotConverged
from .exact import R0, R1, lp_solve, rank_rows, rat
from .families import FamilySpec
from .polytope import HRep, LinConstraint

_TINY = 1e-300


@dataclass(frozen=True)
class MomentConstraint:
    """Linear functional over the normalized density entries with a target."""

    coeffs: tuple
    target: object

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(rat(c) for c in self.coeffs))
        t = self.target
        if isinstance(t, float):
            t = Fraction(str(t))  # decimal-literal reading keeps 0.2 == 1/5
        if isinstance(t, int):
            t = Fraction(t)
        object.__setattr__(self, "target", rat(int(t.numerator), int(t.denominator)))


@dataclass(frozen=True)
class MaxEntProblem:
    family: FamilySpec
    moment_constraints: tuple = ()
    tolerance: float = 1e-8
    max_iterations: int = 100_000

    def __post_init__(self):
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        object.__setattr__(self, "moment_constraints", tuple(self.moment_constraints))


@dataclass(frozen=True)
class MaxEntSolution:
    density: tuple  # p x q tuple of tuples of floats (normalized mass)
    entropy: float
    kkt_residual: float
    iterations: int


def rho_functional(p: int, q: int, normalized: bool = False) -> tuple[tuple, object]:
    """Exact coefficients (lam, beta) with rho = lam . x + beta over the
    density entries (pq-scale by default, probability scale if normalized)."""
    lam = [R0] * (p * q)
    scale = rat(3, p * q) * (R1 if normalized else rat(1, p * q))
    for a in range(p):
        for b in range(q):
            for da in (0, 1):
                for db in (0, 1):
                    # corner value c_{a+da, b+db} = (1/pq) sum_{i<=a+da, j<=b+db} x_ij
                    for i in range(1, a + da + 1):
                        for j in range(1, b + db + 1):
                            lam[(i - 1) * q + (j - 1)] += scale
    return tuple(lam), rat(-3)


def _normalized_rows(spec: FamilySpec) -> tuple[list, list, int, int]:
    """Family H-rep rescaled to probability mass: (equalities, inequalities)."""
    h = families.build(FamilySpec(spec.family, spec.p, spec.q, spec.u, spec.v, "density", "defining"))
    p, q = spec.p, spec.q
    pq = rat(p * q)
    eqs, ineqs = [], []
    for c in h.constraints:
        a = list(c.coeffs)
        b = rat(c.rhs) / pq
        if c.kind == "=":
            eqs.append((a, b, c.label))
        elif c.kind == "<=":
            ineqs.append((a, b, c.label))
        else:
            ineqs.append(([-x for x in a], -b, c.label))
    return eqs, ineqs, p, q


def _independent_rows(rows: list[tuple]) -> list[tuple]:
    out: list[tuple] = []
    basis: list[list] = []
    for a, b, lbl in rows:
        cand = basis + [[*a, b]]
        if rank_rows(cand) == len(cand):
            out.append((a, b, lbl))
            basis = cand
    return out


def _interior_test(dim: int, eqs: list, ineqs: list) -> None:
    cons = [LinConstraint(tuple(a) + (R0,), b, "=", lbl) for a, b, lbl in eqs]
    cons += [LinConstraint(tuple(a) + (R1,), b, "<=", lbl) for a, b, lbl in ineqs]
    cons.append(LinConstraint((R0,) * dim + (R1,), R1, "<=", "cap"))
    h = HRep(dim + 1, tuple(cons))
    obj = [R0] * dim + [R1]
    res = lp_solve(obj, h, "max")
    if res.status == "infeasible":
        raise Infeasible("family plus moment constraints are infeasible")
    assert res.is_optimal
    if res.value <= 0:
        if res.value < 0:
            raise Infeasible("family plus moment constraints are infeasible")
        raise NoInterior("feasible region has empty relative interior")


def _newton_dual(E: np.ndarray, d: np.ndarray, tol: float, max_iter: int) -> tuple[np.ndarray, np.ndarray, int]:
    """Minimize g(nu) = sum exp(-1 - E^T nu) + nu.d by damped Newton."""
    m = E.shape[0]
    nu = np.zeros(m)
    iters = 0
    for _ in range(max_iter):
        iters += 1
        z = np.exp(-1.0 - E.T @ nu)
        grad = d - E @ z
        if np.linalg.norm(grad, np.inf) <= tol:
            break
        H = (E * z) @ E.T
        try:
            step = np.linalg.solve(H + 1e-14 * np.eye(m), -grad)
        except np.linalg.LinAlgError:  # pragma: no cover
            step, *_ = np.linalg.lstsq(H, -grad, rcond=None)
        g0 = float(np.sum(z) + nu @ d)
        t = 1.0
        while t > 1e-18:
            cand = nu + t * step
            gc = float(np.sum(np.exp(-1.0 - E.T @ cand)) + cand @ d)
            if gc <= g0 + 1e-12:
                break
            t *= 0.5
        nu = nu + t * step
    z = np.maximum(np.exp(-1.0 - E.T @ nu), _TINY)
    return nu, z, iters


def solve_maxent(problem: MaxEntProblem) -> MaxEntSolution:
    """Unique entropy maximizer over the normalized family polytope."""
    spec = problem.family
    eqs, ineqs, p, q = _normalized_rows(spec)
    n = p * q
    for k, mc in enumerate(problem.moment_constraints):
        eqs.append((list(mc.coeffs), rat(mc.target), f"moment({k})"))
    _interior_test(n, eqs, ineqs)
    eqs = _independent_rows(eqs)

    E = np.array([[float(x) for x in a] for a, _b, _l in eqs])
    d = np.array([float(b) for _a, b, _l in eqs])
    G = np.array([[float(x) for x in a] for a, _b, _l in ineqs]) if ineqs else np.zeros((0, n))
    hvec = np.array([float(b) for _a, b, _l in ineqs]) if ineqs else np.zeros(0)

    tol = problem.tolerance
    newton_tol = min(tol * 1e-2, 1e-10)
    active: list[int] = []
    total_iters = 0
    z = np.full(n, 1.0 / n)
    settled = False
    for _round in range(50):
        M = np.array([[float(x) for x in a] for a, _b, _l in eqs] + [list(G[i]) for i in active])
        dd = np.array([float(b) for _a, b, _l in eqs] + [float(hvec[i]) for i in active])
        # keep the activated system numerically independent
        keep: list[int] = []
        basis: list[np.ndarray] = []
        for i in range(M.shape[0]):
            cand = basis + [M[i]]
            if np.linalg.matrix_rank(np.array(cand)) == len(cand):
                keep.append(i)
                basis.append(M[i])
        M, dd = M[keep], dd[keep]
        nu, z, iters = _newton_dual(M, dd, newton_tol, problem.max_iterations)
        total_iters += iters
        if total_iters > problem.max_iterations:
            raise NotConverged(total_iters, float("inf"))
        # multiplier signs for activated inequality rows (gradient convention
        # grad H = M^T nu requires nu >= 0 on active <=-rows)
        release = None
        for pos, i in enumerate(keep):
            if i >= len(eqs) and nu[pos] < -newton_tol:
                release = active[i - len(eqs)]
                break
        if release is not None:
            active.remove(release)
            continue
        viol = G @ z - hvec if len(hvec) else np.zeros(0)
        worst = int(np.argmax(viol)) if len(viol) else -1
        if len(viol) and viol[worst] > tol * 1e-2 and worst not in active:
            active.append(worst)
            continue
        settled = True
        break
    if not settled:  # pragma: no cover
        raise NotConverged(total_iters, float("nan"))

    entropy = float(-np.sum(z * np.log(np.maximum(z, _TINY))))
    grad_h = -(1.0 + np.log(np.maximum(z, _TINY)))
    rowsM = [np.array([float(x) for x in a]) for a, _b, _l in eqs]
    rowsM += [G[i] for i in active]
    if rowsM:
        Mstack = np.vstack(rowsM)
        nu_hat, *_ = np.linalg.lstsq(Mstack.T, grad_h, rcond=None)
        stat = float(np.linalg.norm(grad_h - Mstack.T @ nu_hat, 2))
        neg = float(sum(max(0.0, -nu_hat[len(eqs) + k]) for k in range(len(active))))
    else:  # pragma: no cover
        stat = float(np.linalg.norm(grad_h))
        neg = 0.0
    feas = float(np.linalg.norm(E @ z - d, np.inf)) if len(eqs) else 0.0
    if len(hvec):
        feas = max(feas, float(np.max(np.maximum(G @ z - hvec, 0.0))))
    kkt = stat + neg + feas
    if kkt > tol:
        raise NotConverged(total_iters, kkt)
    density = tuple(tuple(float(z[i * q + j]) for j in range(q)) for i in range(p))
    return MaxEntSolution(density, entropy, kkt, total_iters)


def audit_feasibility(problem: MaxEntProblem, solution: MaxEntSolution):
    """Largest exact violation of the family H-rep by the rationalized solution."""
    eqs, ineqs, p, q = _normalized_rows(problem.family)
    z = [
        rat(Fraction(solution.density[i][j]).limit_denominator(10**9))
        for i in range(p)
        for j in range(q)
    ]
    worst = R0
    for a, b, _lbl in eqs:
        worst = max(worst, abs(sum((ai * zi for ai, zi in zip(a, z)), R0) - b))
    for a, b, _lbl in ineqs:
        worst = max(worst, max(R0, sum((ai * zi for ai, zi in zip(a, z)), R0) - b))
    for k, mc in enumerate(problem.moment_constraints):
        worst = max(worst, abs(sum((ai * zi for ai, zi in zip(mc.coeffs, z)), R0) - rat(mc.target)))
    return worst
