"""Command-line front end.

Verbs: family, vertices, minimal, member, is-vertex, extend, rho, maxent,
census, table1, tau-det.  Family arguments use the compact spec syntax, e.g.

    copulatope vertices udc:3x3:density
    copulatope minimal dq:3x4:density:defining
    copulatope family transport:u=1,1,1:v=1,1,1:alt --format cdd -o a.ine
    copulatope maxent birkhoff:3x3 --rho-target 0.3
    copulatope table1

Exit codes: 0 success, 1 verification mismatch (non-member, non-vertex,
table diff), 2 argument/parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import census as census_mod
from . import families, serialize
from .errors import CopulatopeError
from .exact import rat_from_str, rat_to_str
from .maxent import MaxEntProblem, MomentConstraint, rho_functional, solve_maxent
from .polytope import HRep, certify_minimal, contains, enumerate_vertices, is_vertex
from .transforms import tau_det

# Verified vertex counts for the square-grid families.  Three of the (3,5)
# entries differ from previously circulated values; these are the counts this
# package reproduces exactly from the defining systems (see README).
TABLE1 = {
    (3, 3): {"udc": 7, "cdq": 7, "dq": 7, "dc": 6},
    (3, 4): {"udc": 52, "cdq": 52, "dq": 118, "dc": 96},
    (3, 5): {"udc": 176, "cdq": 151, "dq": 532, "dc": 360},
    (4, 4): {"udc": 115, "cdq": 69, "dq": 42, "dc": 24},
    (4, 5): {"udc": 3321, "cdq": 2163, "dq": 7636, "dc": 3000},
    (5, 5): {"udc": 22890, "cdq": 5447, "dq": 429, "dc": 120},
}


def _load_hrep(arg: str) -> HRep:
    if os.path.exists(arg):
        text = open(arg).read()
        if text.lstrip().startswith("{"):
            obj = serialize.loads(text)
            if not isinstance(obj, HRep):
                raise ValueError(f"{arg} does not contain an H-representation")
            return obj
        return serialize.read_hrep_cdd(text)
    return families.build(families.FamilySpec.parse(arg))


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_family(args) -> int:
    h = _load_hrep(args.spec)
    text = serialize.write_hrep_cdd(h) if args.format == "cdd" else serialize.dumps(h) + "\n"
    _emit(text, args.output)
    return 0


def _cmd_vertices(args) -> int:
    h = _load_hrep(args.spec)
    v = enumerate_vertices(h)
    if args.format == "cdd":
        if args.output:
            with open(args.output, "w") as fh:
                for line in serialize.vrep_lines_cdd(v.dim, v.vertices, len(v)):
                    fh.write(line)
        else:
            sys.stdout.write(serialize.write_vrep_cdd(v))
    else:
        _emit(serialize.dumps(v) + "\n", args.output)
    print(len(v))
    return 0


def _cmd_minimal(args) -> int:
    h = _load_hrep(args.spec)
    mini, removed = certify_minimal(h)
    n = len(mini.inequalities)
    if args.output:
        _emit(serialize.write_hrep_cdd(mini), args.output)
    if args.verbose:
        for lbl in removed:
            print(f"removed {lbl}", file=sys.stderr)
    print(f"{n} facets")
    return 0


def _parse_point(text: str) -> tuple:
    return tuple(rat_from_str(t) for t in text.replace(" ", "").split(","))


def _cmd_member(args) -> int:
    h = _load_hrep(args.spec)
    inside, violated = contains(h, _parse_point(args.point))
    if inside:
        print("member")
        return 0
    print("not a member", file=sys.stderr)
    for lbl in violated:
        print(f"violates {lbl}", file=sys.stderr)
    return 1


def _cmd_is_vertex(args) -> int:
    h = _load_hrep(args.spec)
    if is_vertex(h, _parse_point(args.point)):
        print("vertex")
        return 0
    print("not a vertex", file=sys.stderr)
    return 1


def _load_grid(path: str):
    obj = serialize.loads(open(path).read())
    return obj


def _cmd_extend(args) -> int:
    from .copula_ops import checkerboard_eval

    g = _load_grid(args.grid)
    val = checkerboard_eval(g, u=rat_from_str(args.u), v=rat_from_str(args.v))
    print(rat_to_str(val))
    return 0


def _cmd_rho(args) -> int:
    from .copula_ops import spearman_rho

    g = _load_grid(args.grid)
    print(rat_to_str(spearman_rho(g)))
    return 0


def _cmd_maxent(args) -> int:
    spec = families.FamilySpec.parse(args.spec)
    moments = ()
    if args.rho_target is not None:
        lam, beta = rho_functional(spec.p, spec.q, normalized=True)
        from fractions import Fraction

        t = Fraction(args.rho_target)
        moments = (MomentConstraint(lam, t - Fraction(int(beta.numerator), int(beta.denominator))),)
    problem = MaxEntProblem(spec, moments, tolerance=args.tolerance, max_iterations=args.max_iterations)
    sol = solve_maxent(problem)
    payload = {
        "density": [[f"{x:.17g}" for x in row] for row in sol.density],
        "entropy": f"{sol.entropy:.17g}",
        "kkt_residual": f"{sol.kkt_residual:.17g}",
        "iterations": sol.iterations,
    }
    _emit(json.dumps(payload, indent=1) + "\n", args.output)
    return 0


def _cmd_census(args) -> int:
    rows = census_mod.run_census(args.family, args.pmax)
    _emit(census_mod.census_csv(rows), args.output)
    return 0


def _cmd_table1(args) -> int:
    cells = sorted(TABLE1)
    if args.cells:
        wanted = {tuple(int(t) for t in c.split("x")) for c in args.cells.split(",")}
        cells = [c for c in cells if c in wanted]
    out = ["(p,q),udc,cdq,dq,dc,status"]
    bad = 0
    for (p, q) in cells:
        got = {}
        for fam in ("udc", "cdq", "dq", "dc"):
            builder = getattr(families, f"build_{fam}")
            form = "minimal" if fam != "dc" and min(p, q) >= 3 else "defining"
            h = builder(p, q, "density", form)
            got[fam] = len(enumerate_vertices(h))
        ok = all(got[f] == TABLE1[(p, q)][f] for f in got)
        bad += 0 if ok else 1
        out.append(
            f"({p},{q}),{got['udc']},{got['cdq']},{got['dq']},{got['dc']},"
            + ("ok" if ok else "MISMATCH expected " + str(TABLE1[(p, q)]))
        )
    text = "\n".join(out) + "\n"
    _emit(text, args.output)
    return 1 if bad else 0


def _cmd_tau_det(args) -> int:
    print(rat_to_str(tau_det(args.p, args.q)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="copulatope", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="verb", required=True)

    def add(name, fn, **kwargs):
        sp = sub.add_parser(name, **kwargs)
        sp.set_defaults(func=fn)
        return sp

    sp = add("family", _cmd_family, help="write a family H-representation")
    sp.add_argument("spec")
    sp.add_argument("--format", choices=["cdd", "json"], default="cdd")
    sp.add_argument("-o", "--output")

    sp = add("vertices", _cmd_vertices, help="enumerate vertices; prints the count")
    sp.add_argument("spec")
    sp.add_argument("--format", choices=["cdd", "json"], default="cdd")
    sp.add_argument("-o", "--output")

    sp = add("minimal", _cmd_minimal, help="LP-certify the irredundant system")
    sp.add_argument("spec")
    sp.add_argument("-o", "--output")
    sp.add_argument("-v", "--verbose", action="store_true")

    sp = add("member", _cmd_member, help="exact membership test")
    sp.add_argument("spec")
    sp.add_argument("--point", required=True, help="comma-separated rationals")

    sp = add("is-vertex", _cmd_is_vertex, help="active-normal rank vertex test")
    sp.add_argument("spec")
    sp.add_argument("--point", required=True)

    sp = add("extend", _cmd_extend, help="checkerboard extension value")
    sp.add_argument("grid", help="grid JSON file")
    sp.add_argument("--u", required=True)
    sp.add_argument("--v", required=True)

    sp = add("rho", _cmd_rho, help="Spearman's rho of the extension")
    sp.add_argument("grid")

    sp = add("maxent", _cmd_maxent, help="maximum-entropy density in a family")
    sp.add_argument("spec")
    sp.add_argument("--rho-target", default=None)
    sp.add_argument("--tolerance", type=float, default=1e-8)
    sp.add_argument("--max-iterations", type=int, default=100_000)
    sp.add_argument("-o", "--output")

    sp = add("census", _cmd_census, help="decomposable/indecomposable vertex census")
    sp.add_argument("--family", choices=["udc", "cdq"], default="udc")
    sp.add_argument("--pmax", type=int, default=4)
    sp.add_argument("-o", "--output")

    sp = add("table1", _cmd_table1, help="regenerate the vertex-count table and diff it")
    sp.add_argument("--cells", help="comma-separated cells like 3x3,4x4 (default: all)")
    sp.add_argument("-o", "--output")

    sp = add("tau-det", _cmd_tau_det, help="determinant of the tau basis map")
    sp.add_argument("p", type=int)
    sp.add_argument("q", type=int)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (CopulatopeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
