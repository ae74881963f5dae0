import json
from fractions import Fraction
import subprocess
import sys

import pytest
from hypothesis import given, settings

from strategies import quivers
from tsquivers import bipartite_quiver, chain_quiver, complete_quiver, cone_of_weights, cone_system, convex_hull
from tsquivers import errors, io
from tsquivers.cli import CommandResult, family, main, parse_edges, parse_ints, run

HEX = [(0, 1), (1, 1), (1, 0), (0, -1), (-1, -1), (-1, 0)]


def ok(*argv):
    r = run(list(argv))
    assert r.status == "ok", r.to_dict()
    return r.payload


class TestJson:
    def test_quiver_roundtrip_is_byte_identical(self, tmp_path):
        path = tmp_path / "q.json"
        io.save_quiver(bipartite_quiver(2, 3), path)
        first = path.read_bytes()
        io.save_quiver(io.load_quiver(path), path)
        assert path.read_bytes() == first
        assert first == b'{"arrows":[[0,2],[0,3],[0,4],[1,2],[1,3],[1,4]],"flow":[1,1,1,1,1,1],"vertices":5}'

    @settings(max_examples=100, deadline=None)
    @given(quivers())
    def test_roundtrip_property(self, q):
        text = io.quiver_to_json(q)
        assert io.quiver_from_json(text) == q
        assert io.quiver_to_json(io.quiver_from_json(text)) == text

    @pytest.mark.parametrize("text,err", [
        ("not json", errors.UsageError),
        ('{"arrows": [[0, 1]]}', errors.UsageError),
        ('{"vertices": 3, "arrows": [[0, 1]], "flow": [1]}', errors.VertexGap),
        ('{"vertices": 2, "arrows": [[0, 1]], "flow": [1, 2]}', errors.LengthMismatch),
    ])
    def test_malformed(self, text, err):
        with pytest.raises(err):
            io.quiver_from_json(text)

    def test_cone_roundtrip(self):
        c = cone_of_weights(complete_quiver(4))
        d = json.loads(io.dumps(io.cone_to_dict(c)))
        assert io.cone_from_dict(d) == c

    def test_polytope_roundtrip(self):
        p = convex_hull([(0, 0), (Fraction(3, 2), 0), (0, 1)])
        d = json.loads(io.dumps(io.polytope_to_dict(p)))
        assert ["3/2", "0"] in d["vertices"]
        assert io.polytope_from_dict(d).vertices == p.vertices

    def test_rationals(self):
        assert io.rational_str(io.parse_rational("6/4")) == "3/2"
        assert io.rational_str(3) == "3"


class TestDotAndPlots:
    def test_dot_chain(self):
        assert io.export_dot(chain_quiver([1])) == 'digraph Q {\n  0;\n  1;\n  0 -> 1 [label="1"];\n}\n'

    def test_dot_has_every_arrow(self):
        text = io.export_dot(bipartite_quiver(2, 3))
        assert text.count("->") == 6

    def test_hexagon_plot(self):
        d = io.plot_polytope(convex_hull(HEX))
        assert len(d["vertices"]) == 6 and len(d["edges"]) == 6

    def test_k4_chambers_plot(self):
        d = io.plot_chambers(cone_system(complete_quiver(4)))
        assert len(d["cells"]) == 7
        assert all(len(r) == 3 for cell in d["cells"] for r in cell["rays"])

    def test_cone_plot(self):
        d = io.plot_cone(cone_of_weights(complete_quiver(4)))
        assert len(d["rays"]) == 3 and len(d["edges"]) == 3

    def test_projection_drops_last_coordinate(self):
        assert io.project_weight((-3, -1, 1, 3)) == [-3, -1, 1]

    def test_too_high(self):
        with pytest.raises(errors.DimensionTooHigh):
            io.plot_cone(cone_of_weights(complete_quiver(5)))
        with pytest.raises(errors.DimensionTooHigh):
            io.plot_polytope(convex_hull([(0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]))


class TestParsing:
    def test_ints(self):
        assert parse_ints("(-3, 1,2)") == (-3, 1, 2)
        assert parse_ints("[]") == ()
        with pytest.raises(errors.UsageError):
            parse_ints("1,x")

    def test_edges(self):
        assert parse_edges("0-1, 1-2") == [(0, 1), (1, 2)]
        assert parse_edges("[[0,2],[1,2]]") == [(0, 2), (1, 2)]
        with pytest.raises(errors.UsageError):
            parse_edges("0>1")

    def test_families(self):
        assert family("bipartite:2,3") == bipartite_quiver(2, 3)
        assert family("three-vertex:1,2,3") == family("threevertex:1,2,3")
        assert family("chain:2,1", flow=(1, 2, 3)).flow == (1, 2, 3)
        with pytest.raises(errors.UsageError):
            family("petersen:1")
        with pytest.raises(errors.UsageError):
            family("bipartite:2")


class TestCliExamples:
    def test_max_unstable(self):
        got = ok("max-unstable", "--family", "bipartite:2,3")
        assert {frozenset(s) for s in got["nonSingletons"]} == {
            frozenset(s) for s in [(0, 1, 2, 3), (0, 1, 2, 4), (0, 1, 2, 5), (0, 3, 4, 5), (1, 3, 4, 5), (2, 3, 4, 5)]}

    def test_same_chamber_indeterminate(self):
        r = run(["same-chamber", "--family", "complete:4", "--theta", "2,-1,1,-2", "--theta2", "3,-1,-1,-1"])
        assert r.error_kind == "Indeterminate" and r.exit_code == 1
        assert r.payload["message"] == "cannot be determined. stableTrees are empty"

    def test_inc(self):
        assert ok("inc", "--family", "bipartite:2,3", "--flow", "1,1,1,1,1,1") == {"weight": [-3, -3, 2, 2, 2]}

    def test_build_and_reload(self, tmp_path):
        path = tmp_path / "k.json"
        ok("build", "--edges", "0-1,1-2,0-2", "--undirected", "--out", str(path))
        assert ok("spanning-trees", "--quiver", str(path))["count"] == 3

    def test_flow_polytope_formats(self):
        amb = ok("flow-polytope", "--family", "bipartite:2,3", "--format", "ambient")
        tree = ok("flow-polytope", "--family", "bipartite:2,3", "--format", "tree:0,1,4,5")
        # the ambient copy is not full dimensional, so it carries no volume
        assert amb["latticeData"]["normalizedVolume"] is None
        assert {**amb["latticeData"], "normalizedVolume": 6} == tree["latticeData"]
        assert len(tree["vertices"]) == 6 and tree["ambientDim"] == 2
        assert amb["ambientDim"] == 6

    def test_misc_verbs(self):
        assert ok("tight", "check", "--family", "bipartite:2,3") == {"tight": True}
        assert ok("tight", "make", "--family", "complete:4", "--theta", "-2,1,-2,3")["vertices"] == 2
        assert ok("reflexive", "--family", "complete:4") == {"reflexive": True}
        assert len(ok("chambers", "--family", "complete:4")["chambers"]) == 7
        assert len(ok("walls", "--family", "complete:4")["walls"]) == 7
        assert ok("cone", "--family", "complete:4", "--theta", "-3,-1,2,2", "--strict")["contains"] is True
        assert ok("subquivers", "--family", "chain:3", "--limit", "2")["subquivers"] == [[], [0]]
        assert ok("stable", "--family", "bipartite:2,3", "--arrows", "0,1,4,5")["stable"] is True
        assert ok("basis", "--family", "bipartite:2,3", "--tree", "0,1,4,5")["nonTree"] == [2, 3]
        assert ok("plot-data", "--family", "bipartite:2,3", "--kind", "polytope")["edges"]
        assert ok("same-chamber", "--family", "complete:4", "--theta", "-2,1,-1,2", "--theta2", "-4,2,-2,4") == {
            "sameChamber": True}

    def test_determinism(self):
        a = run(["chambers", "--family", "bipartite:2,3"]).to_json()
        b = run(["chambers", "--family", "bipartite:2,3"]).to_json()
        assert a == b
        r1 = run(["family", "--family", "complete:4", "--flow", "random", "--seed", "3"]).to_json()
        r2 = run(["family", "--family", "complete:4", "--flow", "random", "--seed", "3"]).to_json()
        assert r1 == r2


def _write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj), encoding="utf-8")
    return str(path)


ERROR_CASES = {
    "EmptyQuiver": lambda d: ["build", "--edges", ""],
    "VertexGap": lambda d: ["build", "--edges", "0-2"],
    "LengthMismatch": lambda d: ["inc", "--family", "chain:1", "--flow", "1,2"],
    "SelfLoop": lambda d: ["build", "--edges", "0-1,1-1"],
    "NonPositiveArgument": lambda d: ["family", "--family", "complete:1"],
    "IndexOutOfRange": lambda d: ["closed-under-arrows", "--family", "chain:1", "--vertices", "7"],
    "Disconnected": lambda d: ["spanning-trees", "--quiver",
                               _write(d, "dis.json", {"vertices": 4, "arrows": [[0, 1], [2, 3]], "flow": [1, 1]})],
    "WeightNotBalanced": lambda d: ["stable", "--family", "chain:1", "--theta", "1,1"],
    "Infeasible": lambda d: ["inc-inverse", "--family", "complete:4", "--theta", "-1,1,0,0", "--arrows", "5"],
    "WeightNotInCone": lambda d: ["tight", "make", "--family", "complete:4", "--theta", "2,-1,1,-2"],
    "NonConvergence": lambda d: ["tight", "make", "--family", "complete:4", "--theta", "-2,1,-2,3",
                                 "--max-steps", "0"],
    "NotSpanningTree": lambda d: ["basis", "--family", "complete:4", "--tree", "0,1"],
    "TooManyVertices": lambda d: ["walls", "--family", "complete:4", "--max-vertices", "3"],
    "TooManyTrees": lambda d: ["chambers", "--family", "complete:4", "--max-trees", "3"],
    "Indeterminate": lambda d: ["same-chamber", "--family", "complete:4", "--theta", "2,-1,1,-2",
                                "--theta2", "3,-1,-1,-1"],
    "ZeroAmbientDim": lambda d: ["cone", "--rays", "[]"],
    "OriginNotInterior": lambda d: ["reflexive", "--polytope",
                                    _write(d, "tri.json", {"vertices": [[0, 0], [1, 0], [0, 1]]})],
    "NotFullDimensional": lambda d: ["reflexive", "--polytope",
                                     _write(d, "seg.json", {"vertices": [[-1, 0], [1, 0]]})],
    "TooLarge": lambda d: ["flow-polytope", "--family", "bipartite:2,3", "--lattice-cap", "2"],
    "NoUniqueInteriorPoint": lambda d: ["reflexive", "--family", "complete:4", "--theta", "-2,1,-1,2"],
    "DimensionTooHigh": lambda d: ["plot-data", "--family", "complete:5", "--kind", "cone"],
}


def test_every_error_kind_is_covered():
    kinds = {cls.__name__ for cls in vars(errors).values()
             if isinstance(cls, type) and issubclass(cls, errors.QuiverError)}
    assert kinds - {"QuiverError", "UsageError"} == set(ERROR_CASES)


@pytest.mark.parametrize("kind", sorted(ERROR_CASES))
def test_error_kind_reachable(kind, tmp_path):
    r = run(ERROR_CASES[kind](tmp_path))
    assert (r.status, r.error_kind, r.exit_code) == ("error", kind, 1)
    assert r.message


@pytest.mark.parametrize("argv", [
    ["frobnicate"],
    [],
    ["inc"],
    ["inc", "--family", "complete:4", "--quiver", "x.json"],
    ["inc", "--quiver", "/nonexistent/q.json"],
    ["flow-polytope", "--family", "complete:4", "--format", "weird"],
    ["stable", "--family", "bipartite:2,3", "--theta", "a,b"],
])
def test_usage_errors(argv):
    r = run(argv)
    assert (r.error_kind, r.exit_code) == ("UsageError", 2)


def test_result_shape():
    assert CommandResult("ok", {"x": 1}).to_json() == '{"payload": {"x": 1}, "status": "ok"}'
    err = CommandResult("error", None, "SelfLoop", "loop").to_dict()
    assert err == {"status": "error", "errorKind": "SelfLoop", "message": "loop"}


def test_main_prints_json(capsys):
    assert main(["inc", "--family", "chain:1"]) == 0
    assert json.loads(capsys.readouterr().out) == {"status": "ok", "payload": {"weight": [-1, 1]}}
    assert main(["frobnicate"]) == 2
    assert json.loads(capsys.readouterr().out)["errorKind"] == "UsageError"


def test_help_is_plain_text(capsys):
    assert main(["--help"]) == 0
    assert "flow-polytope" in capsys.readouterr().out


def test_console_script():
    out = subprocess.run([sys.executable, "-m", "tsquivers.cli", "inc", "--family", "bipartite:2,3"],
                         capture_output=True, text=True, check=False)
    assert out.returncode == 0
    assert json.loads(out.stdout)["payload"]["weight"] == [-3, -3, 2, 2, 2]
