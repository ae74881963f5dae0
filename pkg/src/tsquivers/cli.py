"""The ``tsq`` command: every library operation as a JSON-emitting subcommand.

Each invocation prints one CommandResult object::

    {"status": "ok", "payload": {...}}
    {"status": "error", "errorKind": "WeightNotInCone", "message": "..."}

Exit code 0 on success, 1 for library errors, 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from typing import Any, Sequence

from . import io
from .chambers import (
    cone_of_weights,
    cone_system,
    potential_walls,
    primitive_arrows,
    reference_thetas,
    same_chamber,
)
from .errors import Indeterminate, QuiverError, UsageError
from .flow_polytope import (
    basis_for_flow_polytope,
    flow_polytope,
    is_flow_polytope_reflexive,
)
from .geometry.cone import Cone
from .geometry.polytope import is_reflexive, lattice_data
from .quiver import (
    ToricQuiver,
    all_spanning_trees,
    bipartite_quiver,
    build_quiver,
    canonical_weight,
    chain_quiver,
    complete_quiver,
    from_undirected_graph,
    inc_inverse,
    inc_map,
    replace_flow,
    subquivers,
    three_vertex_quiver,
    tree_flow,
    zeroed_view,
)
from .stability import (
    is_closed_under_arrows,
    is_tight,
    make_tight,
    maximal_nonstable_subquivers,
    maximal_unstable_subquivers,
    stability,
    stable_trees,
)


@dataclass
class CommandResult:
    status: str
    payload: Any = None
    error_kind: str | None = None
    message: str | None = None

    @property
    def exit_code(self) -> int:
        if self.status == "ok":
            return 0
        return 2 if self.error_kind == "UsageError" else 1

    def to_dict(self) -> dict:
        if self.status == "ok":
            return {"status": "ok", "payload": self.payload}
        out = {"status": "error", "errorKind": self.error_kind, "message": self.message}
        if self.payload is not None:
            out["payload"] = self.payload
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


class _HelpRequested(Exception):
    def __init__(self, text: str):
        super().__init__(text)
        self.text = text


class _Parser(argparse.ArgumentParser):
    """Argument parser that raises instead of exiting."""

    def error(self, message: str):
        raise UsageError(message)

    def print_help(self, file=None):
        raise _HelpRequested(self.format_help())

    def exit(self, status=0, message=None):
        raise UsageError(message or f"exit {status}")


# ---------------------------------------------------------------------------
# argument parsing helpers

def parse_ints(text: str) -> tuple[int, ...]:
    """``"1,-2,3"`` (optionally wrapped in brackets or braces) to a tuple."""
    body = text.strip().strip("()[]{}").strip()
    if not body:
        return ()
    try:
        return tuple(int(x) for x in body.split(","))
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def parse_edges(text: str) -> list[tuple[int, int]]:
    """Edges as JSON (``[[0,1],[1,2]]``) or as ``"0-1,1-2"``."""
    text = text.strip()
    if text.startswith("["):
        try:
            return [(int(t), int(h)) for t, h in json.loads(text)]
        except (ValueError, TypeError) as exc:
            raise UsageError(f"bad edge list: {exc}") from None
    edges = []
    for part in filter(None, (p.strip() for p in text.split(","))):
        try:
            t, h = part.split("-")
            edges.append((int(t), int(h)))
        except ValueError:
            raise UsageError(f"bad edge {part!r}; expected t-h") from None
    return edges


def _flow_spec(text: str | None):
    if text is None:
        return "ones"
    if text.strip().lower() in ("ones", "random"):
        return text.strip().lower()
    return parse_ints(text)


def family(spec: str, flow=None, seed: int | None = None) -> ToricQuiver:
    """Build a named family from ``name:args``, e.g. ``bipartite:2,3``."""
    name, _, args = spec.partition(":")
    name = name.strip().lower().replace("_", "-")
    nums = parse_ints(args)
    builders = {
        "bipartite": (bipartite_quiver, 2),
        "complete": (complete_quiver, 1),
        "three-vertex": (three_vertex_quiver, 3),
        "threevertex": (three_vertex_quiver, 3),
    }
    if name == "chain":
        q = chain_quiver(nums)
    elif name in builders:
        fn, arity = builders[name]
        if len(nums) != arity:
            raise UsageError(f"family {name} takes {arity} integer arguments")
        q = fn(*nums)
    else:
        raise UsageError(f"unknown family {name!r}")
    if flow is not None and flow != "ones":
        q = build_quiver(q.arrows, flow, seed)
    return q


def _quiver(args) -> ToricQuiver:
    if args.quiver and args.family:
        raise UsageError("give only one of --quiver and --family")
    flow = None if args.flow is None else _flow_spec(args.flow)
    if args.quiver:
        q = io.load_quiver(args.quiver)
        if flow is not None:
            q = build_quiver(q.arrows, flow, args.seed) if isinstance(flow, str) else replace_flow(q, flow)
        return q
    if args.family:
        return family(args.family, flow, args.seed)
    raise UsageError("a quiver is required: use --quiver FILE or --family NAME:ARGS")


def _theta(args, q: ToricQuiver, default=None) -> tuple[int, ...]:
    if args.theta is not None:
        return parse_ints(args.theta)
    return q.weight if default is None else default


def _arrows(args, q: ToricQuiver) -> tuple[int, ...]:
    return tuple(range(q.arrow_count)) if args.arrows is None else parse_ints(args.arrows)


# ---------------------------------------------------------------------------
# verbs

def _quiver_payload(q: ToricQuiver) -> dict:
    out = io.quiver_to_dict(q)
    out["weight"] = list(q.weight)
    return out


def cmd_family(args):
    q = _quiver(args)
    payload = _quiver_payload(q)
    payload["incidenceMatrix"] = q.incidence_matrix.tolist()
    return payload


def cmd_build(args):
    edges = parse_edges(args.edges)
    flow = _flow_spec(args.flow)
    q = (from_undirected_graph if args.undirected else build_quiver)(edges, flow, args.seed)
    if args.out:
        io.save_quiver(q, args.out)
    return _quiver_payload(q)


def cmd_inc(args):
    q = _quiver(args)
    return {"weight": list(inc_map(q, q.flow))}


def cmd_inc_inverse(args):
    q = _quiver(args)
    support = None if args.arrows is None else parse_ints(args.arrows)
    return {"flow": list(inc_inverse(_theta(args, q), q, support))}


def cmd_spanning_trees(args):
    trees = all_spanning_trees(_quiver(args))
    return {"count": len(trees), "trees": [list(t) for t in trees]}


def cmd_subquivers(args):
    q = _quiver(args)
    out = []
    for s in subquivers(q):
        if args.limit is not None and len(out) >= args.limit:
            break
        out.append(list(s))
    return {"count": 2 ** q.arrow_count, "subquivers": out}


def cmd_closed_under_arrows(args):
    q = _quiver(args)
    view = zeroed_view(q, _arrows(args, q))
    return {"closed": is_closed_under_arrows(parse_ints(args.vertices), view)}


def _verdict(args, key: str):
    q = _quiver(args)
    v = stability(_arrows(args, q), q, _theta(args, q))
    return {
        key: getattr(v, key),
        "stable": v.stable,
        "semistable": v.semistable,
        "witness": None if v.witness is None else list(v.witness),
        "witnessSum": v.witness_sum,
    }


def cmd_stable(args):
    return _verdict(args, "stable")


def cmd_semistable(args):
    return _verdict(args, "semistable")


def cmd_max_unstable(args):
    q = _quiver(args)
    return maximal_unstable_subquivers(q, _theta(args, q)).as_dict()


def cmd_max_nonstable(args):
    q = _quiver(args)
    return maximal_nonstable_subquivers(q, _theta(args, q)).as_dict()


def cmd_tight(args):
    q = _quiver(args)
    theta = _theta(args, q)
    if args.mode == "check":
        return {"tight": is_tight(q, theta)}
    return _quiver_payload(make_tight(theta, q, args.max_steps))


def cmd_stable_trees(args):
    q = _quiver(args)
    theta = _theta(args, q)
    trees = stable_trees(theta, q)
    return {
        "trees": [list(t) for t in trees],
        "flows": [list(tree_flow(q, theta, t)) for t in trees],
    }


def cmd_cone(args):
    if args.rays is not None:
        try:
            rays = json.loads(args.rays)
        except ValueError as exc:
            raise UsageError(f"bad ray list: {exc}") from None
        c = Cone.from_rays(rays, ambient_dim=args.ambient_dim)
        return io.cone_to_dict(c)
    q = _quiver(args)
    c = cone_of_weights(q, all_arrows=args.all_arrows)
    payload = io.cone_to_dict(c)
    payload["primitiveArrows"] = list(primitive_arrows(q))
    if args.theta is not None:
        payload["contains"] = c.contains(parse_ints(args.theta), strictly=args.strict)
    return payload


def cmd_walls(args):
    walls = potential_walls(_quiver(args), args.max_vertices)
    return {"walls": [w.as_dict() for w in walls]}


def cmd_chambers(args):
    cs = cone_system(_quiver(args), args.max_trees)
    chambers = []
    for c, trees in zip(cs.chambers, cs.tree_cone_index):
        chambers.append({
            "rays": [list(r) for r in c.rays],
            "facets": [list(f) for f in c.facets],
            "trees": [list(t) for t in trees],
        })
    return {"count": len(cs), "chambers": chambers}


def cmd_reference_thetas(args):
    cs = cone_system(_quiver(args), args.max_trees)
    return {"thetas": [list(t) for t in reference_thetas(cs)]}


def cmd_same_chamber(args):
    q = _quiver(args)
    if args.theta is None or args.theta2 is None:
        raise UsageError("same-chamber needs --theta and --theta2")
    return {"sameChamber": same_chamber(parse_ints(args.theta), parse_ints(args.theta2), q)}


def _tree_option(fmt: str):
    if fmt == "ambient":
        return None, True
    if fmt == "tree":
        return None, False
    if fmt.startswith("tree:"):
        return parse_ints(fmt[5:]), False
    raise UsageError(f"unknown format {fmt!r}; use ambient, tree or tree:<indices>")


def cmd_flow_polytope(args):
    q = _quiver(args)
    tree, ambient = _tree_option(args.format)
    p = flow_polytope(_theta(args, q), q, tree=tree, ambient=ambient)
    payload = io.polytope_to_dict(p)
    payload["latticeData"] = lattice_data(p, args.lattice_cap).as_dict()
    return payload


def cmd_basis(args):
    q = _quiver(args)
    tree = None if args.tree is None else parse_ints(args.tree)
    b = basis_for_flow_polytope(q, tree)
    return {"tree": list(b.tree), "nonTree": list(b.non_tree), "matrix": b.matrix()}


def cmd_reflexive(args):
    if args.polytope:
        try:
            with open(args.polytope, encoding="utf-8") as fh:
                p = io.polytope_from_dict(json.load(fh))
        except (OSError, ValueError, KeyError) as exc:
            raise UsageError(f"cannot read polytope: {exc}") from None
        return {"reflexive": is_reflexive(p)}
    q = _quiver(args)
    return {"reflexive": is_flow_polytope_reflexive(_theta(args, q, canonical_weight(q)), q)}


def cmd_dot(args):
    text = io.export_dot(_quiver(args))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return {"dot": text}


def cmd_plot_data(args):
    q = _quiver(args)
    if args.kind == "cone":
        return io.plot_cone(cone_of_weights(q))
    if args.kind == "chambers":
        return io.plot_chambers(cone_system(q, args.max_trees))
    tree = None if args.tree is None else parse_ints(args.tree)
    return io.plot_polytope(flow_polytope(_theta(args, q), q, tree=tree))


# ---------------------------------------------------------------------------
# parser

def build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--quiver", help="quiver JSON file")
    common.add_argument("--family", help="named family, e.g. bipartite:2,3 or complete:4")
    common.add_argument("--flow", help="'ones', 'random' or comma-separated integers")
    common.add_argument("--seed", type=int, default=None, help="seed for random flows")
    common.add_argument("--theta", help="weight as comma-separated integers")

    parser = _Parser(prog="tsq", description="Toric quivers, stability, chambers and flow polytopes.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def verb(name, fn, help):
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(handler=fn)
        return p

    verb("family", cmd_family, "build a named quiver family")
    p = verb("build", cmd_build, "build a quiver from an edge list")
    p.add_argument("--edges", required=True, help="'0-2,0-3' or JSON [[0,2],[0,3]]")
    p.add_argument("--undirected", action="store_true", help="orient edges from smaller label")
    p.add_argument("--out", help="write the quiver JSON here")
    verb("inc", cmd_inc, "weight of a flow")
    p = verb("inc-inverse", cmd_inc_inverse, "a flow of the given weight")
    p.add_argument("--arrows", help="support arrows")
    verb("spanning-trees", cmd_spanning_trees, "all spanning trees")
    p = verb("subquivers", cmd_subquivers, "arrow subsets in lexicographic order")
    p.add_argument("--limit", type=int, default=None)
    p = verb("closed-under-arrows", cmd_closed_under_arrows, "successor-closedness of a vertex set")
    p.add_argument("--vertices", required=True)
    p.add_argument("--arrows", help="arrows of the zeroed view (default all)")
    for name, fn in (("stable", cmd_stable), ("semistable", cmd_semistable)):
        p = verb(name, fn, f"theta-{name}ness of an arrow subset")
        p.add_argument("--arrows", help="arrow subset (default all)")
    verb("max-unstable", cmd_max_unstable, "maximal unstable subquivers")
    verb("max-nonstable", cmd_max_nonstable, "maximal nonstable subquivers")
    p = verb("tight", cmd_tight, "check or make tight")
    p.add_argument("mode", choices=["check", "make"])
    p.add_argument("--max-steps", type=int, default=None)
    verb("stable-trees", cmd_stable_trees, "theta-stable spanning trees and their flows")
    p = verb("cone", cmd_cone, "cone of weights (or a cone from --rays)")
    p.add_argument("--all-arrows", action="store_true", help="generate from every arrow")
    p.add_argument("--strict", action="store_true", help="interior membership for --theta")
    p.add_argument("--rays", help="JSON ray list for a standalone cone")
    p.add_argument("--ambient-dim", type=int, default=None)
    p = verb("walls", cmd_walls, "potential walls")
    p.add_argument("--max-vertices", type=int, default=20)
    for name, fn in (("chambers", cmd_chambers), ("reference-thetas", cmd_reference_thetas)):
        p = verb(name, fn, "chamber decomposition" if name == "chambers" else "one weight per chamber")
        p.add_argument("--max-trees", type=int, default=10**4)
    p = verb("same-chamber", cmd_same_chamber, "whether two weights share a chamber")
    p.add_argument("--theta2")
    p = verb("flow-polytope", cmd_flow_polytope, "flow polytope and its lattice data")
    p.add_argument("--format", default="tree", help="ambient, tree or tree:<indices>")
    p.add_argument("--lattice-cap", type=int, default=10**7)
    p = verb("basis", cmd_basis, "circulation basis from a spanning tree")
    p.add_argument("--tree")
    p = verb("reflexive", cmd_reflexive, "reflexivity of a flow polytope")
    p.add_argument("--polytope", help="polytope JSON file to test directly")
    p = verb("dot", cmd_dot, "Graphviz DOT export")
    p.add_argument("--out")
    p = verb("plot-data", cmd_plot_data, "points and edges for 2D/3D figures")
    p.add_argument("--kind", choices=["cone", "polytope", "chambers"], required=True)
    p.add_argument("--tree")
    p.add_argument("--max-trees", type=int, default=10**4)
    return parser


_NEGATIVE_VALUE = re.compile(r"^-\d")


def _attach_negative_values(argv: Sequence[str]) -> list[str]:
    """Rewrite ``--theta -2,1`` as ``--theta=-2,1`` so argparse keeps the value."""
    out: list[str] = []
    for tok in argv:
        if out and out[-1].startswith("--") and "=" not in out[-1] and _NEGATIVE_VALUE.match(tok):
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def run(argv: Sequence[str] | None = None) -> CommandResult:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = parser.parse_args(_attach_negative_values(argv))
        return CommandResult("ok", args.handler(args))
    except _HelpRequested as h:
        return CommandResult("ok", {"help": h.text})
    except Indeterminate as exc:
        return CommandResult("error", {"message": str(exc)}, exc.kind, str(exc))
    except QuiverError as exc:
        return CommandResult("error", None, exc.kind, str(exc))
    except OSError as exc:
        return CommandResult("error", None, "UsageError", str(exc))


def main(argv: Sequence[str] | None = None) -> int:
    result = run(argv)
    if result.status == "ok" and isinstance(result.payload, dict) and set(result.payload) == {"help"}:
        print(result.payload["help"])
    else:
        print(result.to_json())
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
