import json
from pathlib import Path

import networkx as nx
import pytest
from hypothesis import strategies as st

from sepcanon.azimuths import Azimuth
from sepcanon.curve_graph import CurveGraph, Edge, Vertex
from sepcanon.corpus import to_curve

CORPUS_DIR = Path(__file__).parent / "corpus"


def curve(vertices, edges):
    """curve({"A": 1, "B": 1}, [("e", "A", "B")])"""
    return CurveGraph(
        tuple(Vertex(v, g) for v, g in vertices.items()),
        tuple(Edge(e, (a, b)) for e, a, b in edges),
    )


def dumbbell(ga=1, gb=1):
    return curve({"A": ga, "B": gb}, [("e", "A", "B")])


def banana(ga=1, gb=1, r=2):
    return curve({"A": ga, "B": gb}, [(f"e{i}", "A", "B") for i in range(r)])


def interlace(r):
    return curve({"P": 0, "Q": 0}, [(f"t{i}", "P", "Q") for i in range(r)])


def triangle(g=1):
    return curve({"A": g, "B": g, "C": g}, [("ab", "A", "B"), ("bc", "B", "C"), ("ca", "C", "A")])


def square(g=1):
    return curve(
        {"A": g, "B": g, "C": g, "D": g},
        [("ab", "A", "B"), ("bc", "B", "C"), ("cd", "C", "D"), ("da", "D", "A")],
    )


def chain3(g=1):
    return curve({"A": g, "B": g, "C": g}, [("e", "A", "B"), ("f", "B", "C")])


def load_case(path):
    with open(path) as fh:
        return json.load(fh)


def corpus_paths():
    return sorted(CORPUS_DIR.glob("*.json"))


# -- independent brute-force cut oracle (networkx) -----------------------------


def nx_multigraph(g: CurveGraph) -> nx.MultiGraph:
    m = nx.MultiGraph()
    m.add_nodes_from(g.vertex_ids)
    for e in g.edges:
        m.add_edge(e.ends[0], e.ends[1], key=e.id)
    return m


def nx_components_without(g: CurveGraph, removed) -> list[frozenset]:
    m = nx_multigraph(g)
    for e in removed:
        a, b = g.edge(e).ends
        m.remove_edge(a, b, key=e)
    return [frozenset(c) for c in nx.connected_components(m)]


def brute_seps(g: CurveGraph) -> set[str]:
    return {e.id for e in g.edges if len(nx_components_without(g, [e.id])) > 1}


def brute_biseps(g: CurveGraph) -> dict[tuple[str, str], frozenset]:
    """Bisep edge pair -> the two sides, computed by removal."""
    seps = brute_seps(g)
    ids = sorted(e.id for e in g.edges if e.id not in seps)
    out = {}
    for i, a in enumerate(ids):
        for b in ids[i + 1:]:
            comps = nx_components_without(g, [a, b])
            if len(comps) > 1:
                assert len(comps) == 2
                out[(a, b)] = frozenset(comps)
    return out


# -- hypothesis strategies ------------------------------------------------------


@st.composite
def multigraphs(draw, max_vertices=6, max_edges=9, loops=True, max_genus=2):
    n = draw(st.integers(1, max_vertices))
    tree = [(draw(st.integers(0, v - 1)), v) for v in range(1, n)]
    room = max(0, max_edges - len(tree))
    pairs = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
    if not loops:
        pairs = pairs.filter(lambda p: p[0] != p[1])
    extra = draw(st.lists(pairs, max_size=room)) if n > 1 or loops else []
    genera = tuple(draw(st.integers(0, max_genus)) for _ in range(n))
    return to_curve(n, tuple(tree) + tuple((min(a, b), max(a, b)) for a, b in extra), genera)


rationals = st.fractions(min_value=-50, max_value=50, max_denominator=20)
nonzero = rationals.filter(lambda x: x != 0)


@st.composite
def regular_azimuths(draw):
    return Azimuth(draw(nonzero), draw(nonzero))


@st.composite
def azimuths(draw):
    a, b = draw(rationals), draw(rationals)
    if a == 0 and b == 0:
        b = 1
    return Azimuth(a, b)


@pytest.fixture
def corpus_cases():
    return [(p.stem, load_case(p)) for p in corpus_paths()]


# -- relabelling a corpus case (curve + oracle + azimuths) ----------------------


def relabel_case(case, vmap, emap):
    """Rename vertices and edges, transporting every oracle key and azimuth.

    Bimark keys and azimuth coordinates follow the sorted order of edge ids,
    so a renaming that swaps that order also swaps coordinates.
    """
    cv = case["curve"]
    curve_json = {
        "vertices": [{"id": vmap[v["id"]], "genus": v.get("genus", 0)} for v in cv["vertices"]],
        "edges": [{"id": emap[e["id"]], "ends": [vmap[x] for x in e["ends"]]} for e in cv.get("edges", [])],
    }

    def half(h):
        e, i = h.rsplit(".", 1)
        return f"{emap[e]}.{i}"

    def pair(key, sep):
        parts = key.split(sep)
        names = [half(p) if sep == "," and "." in p else emap[p] for p in parts]
        base = [n.rsplit(".", 1)[0] for n in names]
        swapped = base[0] > base[1]
        if swapped:
            names = names[::-1]
        return ",".join(names), swapped

    def az(z, swapped):
        return list(reversed(z)) if swapped else z

    o = case.get("oracle", {})
    comps = {"+".join(sorted(vmap[v] for v in cid.split("+"))): val for cid, val in o.get("components", {}).items()}
    unis = {half(h): val for h, val in o.get("unimarks", {}).items()}
    bis = {}
    for key, val in o.get("bimarks", {}).items():
        new, swapped = pair(key, ",")
        val = dict(val)
        if val.get("azimuth") is not None:
            val["azimuth"] = az(val["azimuth"], swapped)
        bis[new] = val
    bridges = {emap[e]: val for e, val in o.get("bridges", {}).items()}
    middle = {}
    for key, z in case.get("azimuths", {}).items():
        new, swapped = pair(key, ",")
        middle[new] = az(z, swapped)
    return {
        "curve": curve_json,
        "oracle": {"components": comps, "unimarks": unis, "bimarks": bis, "bridges": bridges},
        "azimuths": middle,
        "expected": case["expected"],
    }


def scale_case(case, factors):
    """Multiply both coordinates of every azimuth by a nonzero rational; ``factors`` cycles."""
    from fractions import Fraction
    from itertools import cycle

    it = cycle(factors)

    def scaled(z):
        lam = Fraction(next(it))
        return [str(Fraction(x) * lam) for x in z]

    out = json.loads(json.dumps(case))
    for val in out.get("oracle", {}).get("bimarks", {}).values():
        if val.get("azimuth") is not None:
            val["azimuth"] = scaled(val["azimuth"])
    out["azimuths"] = {k: scaled(z) for k, z in out.get("azimuths", {}).items()}
    return out


def case_inputs(case):
    from sepcanon.hyperelliptic import ModuliOracle, load_middle_azimuths
    from sepcanon.serialize import curve_from_json

    return (
        curve_from_json(case["curve"]),
        ModuliOracle.from_json(case.get("oracle", {})),
        load_middle_azimuths(case.get("azimuths", {})),
    )


# -- acceptance reporting -------------------------------------------------------

ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
