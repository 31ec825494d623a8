#!/usr/bin/env python3
"""Sweep grade-correlation targets and report the maximum entropy achieved
inside a density family (default: the 4x4 doubly-stochastic-type family).

    python scripts/run_maxent_sweep.py [--family birkhoff:4x4] [--targets -0.4,-0.2,0,0.2,0.4]
"""

import argparse
from fractions import Fraction

from copulatope.errors import Infeasible, NoInterior
from copulatope.families import FamilySpec
from copulatope.maxent import MaxEntProblem, MomentConstraint, rho_functional, solve_maxent

if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--family", default="birkhoff:4x4")
    ap.add_argument("--targets", default="-0.4,-0.2,0,0.2,0.4")
    args = ap.parse_args()
    spec = FamilySpec.parse(args.family)
    lam, beta = rho_functional(spec.p, spec.q, normalized=True)
    offs = Fraction(int(beta.numerator), int(beta.denominator))
    print("rho_target,entropy,kkt_residual,iterations")
    for tok in args.targets.split(","):
        t = Fraction(tok)
        try:
            sol = solve_maxent(MaxEntProblem(spec, (MomentConstraint(lam, t - offs),)))
            print(f"{tok},{sol.entropy:.12f},{sol.kkt_residual:.3e},{sol.iterations}")
        except (Infeasible, NoInterior) as exc:
            print(f"{tok},{type(exc).__name__},,")
