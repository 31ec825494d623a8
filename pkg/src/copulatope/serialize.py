"""cdd-style text and JSON serialization, bit-exact on round trip.

H-representations use the polyhedra file convention: each row  b  -a1 ... -an
encodes a.x <= b, equality rows are listed in a ``linearity`` line, and a
trailing ``labels`` block (ignored by cdd tools, which stop at ``end``)
records each row's label and original orientation so that reading a written
file reproduces the identical object, ">=" rows included.

Rationals are serialized as "num/den" with "/den" omitted when the
denominator is 1.
"""

from __future__ import annotations

import json
from typing import Iterable

from .errors import DimensionMismatch
from .exact import rat, rat_from_str, rat_to_str
from .polytope import HRep, LinConstraint, VRep
from .transforms import DensityMatrix, GridMatrix


def write_hrep_cdd(h: HRep) -> str:
    lines = ["H-representation"]
    lin = [str(i + 1) for i, c in enumerate(h.constraints) if c.kind == "="]
    if lin:
        lines.append("linearity " + str(len(lin)) + " " + " ".join(lin))
    lines.append("begin")
    lines.append(f" {len(h.constraints)} {h.dim + 1} rational")
    for c in h.constraints:
        a, b = c.coeffs, c.rhs
        if c.kind == ">=":
            a = tuple(-x for x in a)
            b = -b
        lines.append(" " + " ".join([rat_to_str(b)] + [rat_to_str(-x) for x in a]))
    lines.append("end")
    lines.append("labels")
    for c in h.constraints:
        lines.append(f" {c.label}|{c.kind}")
    return "\n".join(lines) + "\n"


def read_hrep_cdd(text: str) -> HRep:
    lines = [ln.strip() for ln in text.splitlines()]
    try:
        start = lines.index("begin")
    except ValueError:
        raise ValueError("not a cdd file: no 'begin' line")
    lin: set[int] = set()
    for ln in lines[:start]:
        if ln.startswith("linearity"):
            parts = ln.split()
            lin = {int(x) for x in parts[2:]}
    m, ncols, _kind = lines[start + 1].split()
    m, ncols = int(m), int(ncols)
    rows = []
    for i in range(m):
        vals = [rat_from_str(t) for t in lines[start + 2 + i].split()]
        rows.append((vals[0], [-x for x in vals[1:]]))
    labels: list[tuple[str, str]] = []
    if "labels" in lines:
        li = lines.index("labels")
        for ln in lines[li + 1 : li + 1 + m]:
            name, _, kind = ln.rpartition("|")
            labels.append((name, kind))
    cons = []
    for i, (b, a) in enumerate(rows):
        if labels:
            label, kind = labels[i]
        else:
            label, kind = f"row{i + 1}", ("=" if i + 1 in lin else "<=")
        if i + 1 in lin:
            kind = "="
        if kind == ">=":
            a = [-x for x in a]
            b = -b
        cons.append(LinConstraint(tuple(a), b, kind, label))
    return HRep(ncols - 1, tuple(cons))


def write_vrep_cdd(v: VRep) -> str:
    lines = ["V-representation", "begin", f" {len(v.vertices)} {v.dim + 1} rational"]
    for x in v.vertices:
        lines.append(" 1 " + " ".join(rat_to_str(c) for c in x))
    lines.append("end")
    return "\n".join(lines) + "\n"


def vrep_lines_cdd(dim: int, vertices: Iterable, count: int):
    """Streaming variant of write_vrep_cdd for large vertex files."""
    yield "V-representation\n"
    yield "begin\n"
    yield f" {count} {dim + 1} rational\n"
    for x in vertices:
        yield " 1 " + " ".join(rat_to_str(c) for c in x) + "\n"
    yield "end\n"


def read_vrep_cdd(text: str) -> VRep:
    lines = [ln.strip() for ln in text.splitlines()]
    start = lines.index("begin")
    m, ncols, _kind = lines[start + 1].split()
    m, ncols = int(m), int(ncols)
    verts = []
    for i in range(m):
        vals = [rat_from_str(t) for t in lines[start + 2 + i].split()]
        if vals[0] != 1:
            raise ValueError("rays are not supported in vertex files")
        verts.append(tuple(vals[1:]))
    return VRep(ncols - 1, tuple(verts))


def hrep_to_json(h: HRep) -> dict:
    return {
        "type": "hrep",
        "dim": h.dim,
        "constraints": [
            {
                "label": c.label,
                "kind": c.kind,
                "coeffs": [rat_to_str(x) for x in c.coeffs],
                "rhs": rat_to_str(c.rhs),
            }
            for c in h.constraints
        ],
    }


def hrep_from_json(d: dict) -> HRep:
    if d.get("type") != "hrep":
        raise ValueError("not an hrep JSON object")
    cons = tuple(
        LinConstraint(
            tuple(rat_from_str(x) for x in c["coeffs"]),
            rat_from_str(c["rhs"]),
            c["kind"],
            c["label"],
        )
        for c in d["constraints"]
    )
    return HRep(d["dim"], cons)


def vrep_to_json(v: VRep) -> dict:
    return {
        "type": "vrep",
        "dim": v.dim,
        "vertices": [[rat_to_str(c) for c in x] for x in v.vertices],
    }


def vrep_from_json(d: dict) -> VRep:
    if d.get("type") != "vrep":
        raise ValueError("not a vrep JSON object")
    return VRep(d["dim"], tuple(tuple(rat_from_str(c) for c in x) for x in d["vertices"]))


def grid_to_json(g: GridMatrix) -> dict:
    return {"type": "grid", "p": g.p, "q": g.q, "c": [[rat_to_str(g[i, j]) for j in range(g.q + 1)] for i in range(g.p + 1)]}


def grid_from_json(d: dict) -> GridMatrix:
    if d.get("type") != "grid":
        raise ValueError("not a grid JSON object")
    return GridMatrix.from_rows([[rat_from_str(x) for x in row] for row in d["c"]])


def density_to_json(m: DensityMatrix) -> dict:
    return {"type": "density", "p": m.p, "q": m.q, "x": [[rat_to_str(m[i, j]) for j in range(m.q)] for i in range(m.p)]}


def density_from_json(d: dict) -> DensityMatrix:
    if d.get("type") != "density":
        raise ValueError("not a density JSON object")
    return DensityMatrix.from_rows([[rat_from_str(x) for x in row] for row in d["x"]])


def dumps(obj) -> str:
    if isinstance(obj, HRep):
        return json.dumps(hrep_to_json(obj), indent=1)
    if isinstance(obj, VRep):
        return json.dumps(vrep_to_json(obj), indent=1)
    if isinstance(obj, GridMatrix):
        return json.dumps(grid_to_json(obj), indent=1)
    if isinstance(obj, DensityMatrix):
        return json.dumps(density_to_json(obj), indent=1)
    raise TypeError(f"cannot serialize {type(obj)}")


def loads(text: str):
    d = json.loads(text)
    t = d.get("type")
    if t == "hrep":
        return hrep_from_json(d)
    if t == "vrep":
        return vrep_from_json(d)
    if t == "grid":
        return grid_from_json(d)
    if t == "density":
        return density_from_json(d)
    raise ValueError(f"unknown object type {t!r}")
