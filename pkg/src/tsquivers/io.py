"""JSON persistence, DOT export and plot-data emission.

Quivers serialise as ``{"arrows": [[t, h], ...], "flow": [...], "vertices": n}``
with sorted keys and no insignificant whitespace, so that load/save round
trips are byte-identical.  Rationals are written as ``"p/q"`` strings (plain
``"p"`` when integral).
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .chambers import ChamberSystem, reference_thetas
from .errors import DimensionTooHigh, UsageError, VertexGap
from .geometry.cone import Cone
from .geometry.polytope import Polytope, convex_hull
from .quiver import ToricQuiver, build_quiver


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def rational_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(s) -> Fraction:
    return Fraction(s) if not isinstance(s, str) else Fraction(s.strip())


# ---------------------------------------------------------------------------
# quivers

def quiver_to_dict(q: ToricQuiver) -> dict:
    return {
        "vertices": q.vertex_count,
        "arrows": [list(a) for a in q.arrows],
        "flow": [int(w) for w in q.flow],
    }


def quiver_from_dict(d: dict) -> ToricQuiver:
    try:
        n = int(d["vertices"])
        arrows = [(int(t), int(h)) for t, h in d["arrows"]]
        flow = [int(w) for w in d.get("flow", [1] * len(arrows))]
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed quiver JSON: {exc}") from exc
    q = build_quiver(arrows, flow)
    if q.vertex_count != n:
        raise VertexGap(f"arrows use vertices 0..{q.vertex_count - 1} but {n} are declared")
    return q


def quiver_to_json(q: ToricQuiver) -> str:
    return dumps(quiver_to_dict(q))


def quiver_from_json(text: str) -> ToricQuiver:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON: {exc}") from exc
    return quiver_from_dict(data)


def save_quiver(q: ToricQuiver, path) -> None:
    Path(path).write_text(quiver_to_json(q), encoding="utf-8")


def load_quiver(path) -> ToricQuiver:
    return quiver_from_json(Path(path).read_text(encoding="utf-8"))


# ---------------------------------------------------------------------------
# cones and polytopes

def cone_to_dict(c: Cone) -> dict:
    return {
        "ambientDim": c.ambient_dim,
        "dim": c.dim,
        "rays": [list(r) for r in c.rays],
        "facets": [list(a) for a in c.facets],
        "lineality": [list(v) for v in c.lineality],
        "equations": [list(e) for e in c.equations],
    }


def cone_from_dict(d: dict) -> Cone:
    if d.get("rays") is not None:
        return Cone.from_rays(d["rays"], d.get("lineality", ()), ambient_dim=d.get("ambientDim"))
    return Cone.from_inequalities(d["facets"], d.get("equations", ()), ambient_dim=d.get("ambientDim"))


def polytope_to_dict(p: Polytope) -> dict:
    return {
        "ambientDim": p.ambient_dim,
        "dim": p.dim,
        "vertices": [[rational_str(x) for x in v] for v in p.vertices],
        "inequalities": [{"a": list(a), "b": rational_str(b)} for a, b in p.inequalities],
        "equations": [{"a": list(a), "b": rational_str(b)} for a, b in p.equations],
    }


def polytope_from_dict(d: dict) -> Polytope:
    return convex_hull([[parse_rational(x) for x in v] for v in d["vertices"]])


# ---------------------------------------------------------------------------
# DOT

def export_dot(q: ToricQuiver, name: str = "Q") -> str:
    lines = [f"digraph {name} {{"]
    lines += [f"  {v};" for v in q.vertices]
    lines += [f'  {t} -> {h} [label="{w}"];' for (t, h), w in zip(q.arrows, q.flow)]
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# plot data

def project_weight(theta: Sequence) -> list:
    """Coordinates on the ``sum = 0`` hyperplane: drop the last entry."""
    return list(theta[:-1])


def _check_dim(d: int) -> None:
    if d > 3:
        raise DimensionTooHigh(f"{d} projected dimensions; plot data supports at most 3")


def plot_cone(c: Cone) -> dict:
    _check_dim(c.ambient_dim - 1)
    return {
        "kind": "cone",
        "dim": c.ambient_dim - 1,
        "rays": [project_weight(r) for r in c.rays],
        "edges": [list(e) for e in c.ray_adjacency()],
    }


def plot_polytope(p: Polytope) -> dict:
    _check_dim(p.ambient_dim)
    return {
        "kind": "polytope",
        "dim": p.ambient_dim,
        "vertices": [[rational_str(x) for x in v] for v in p.vertices],
        "edges": [list(e) for e in p.edges()],
    }


def plot_chambers(cs: ChamberSystem) -> dict:
    _check_dim(cs.ambient.ambient_dim - 1)
    cells = []
    for cone, theta in zip(cs.chambers, reference_thetas(cs)):
        cells.append({
            "rays": [project_weight(r) for r in cone.rays],
            "edges": [list(e) for e in cone.ray_adjacency()],
            "referenceTheta": project_weight(theta),
        })
    return {
        "kind": "chambers",
        "dim": cs.ambient.ambient_dim - 1,
        "ambient": plot_cone(cs.ambient),
        "cells": cells,
    }
