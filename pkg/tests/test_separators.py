import itertools

import networkx as nx
import pytest
from hypothesis import given, settings

from conftest import (
    banana,
    brute_biseps,
    brute_seps,
    chain3,
    curve,
    dumbbell,
    interlace,
    multigraphs,
    square,
    triangle,
)
from sepcanon.curve_graph import arithmetic_genus
from sepcanon.errors import DisconnectedCurve, NotABisep, NotAPolyseparator
from sepcanon.separators import (
    Side,
    StarKind,
    StarSep,
    adjacency_check,
    bipointed_closure,
    cyclic_arrangement,
    find_biseps,
    find_seps,
    internal_star_seps,
    is_semicompact_type,
    is_two_inseparable,
    maximal_polyseparators,
    relative_two_inseparable,
    separation_tree,
    structure,
    theta_separation,
    two_separation,
)


def k23():
    return curve(
        {"v0": 1, "v1": 1, "v2": 1, "v3": 1, "v4": 1},
        [(f"e{a}{b}", f"v{a}", f"v{b}") for a in (0, 1, 2) for b in (3, 4)],
    )


def k4_minus_edge():
    # 4-cycle A-B-C-D with chord A-C
    return curve(
        {"A": 1, "B": 1, "C": 1, "D": 1},
        [("ab", "A", "B"), ("bc", "B", "C"), ("cd", "C", "D"), ("da", "D", "A"), ("ac", "A", "C")],
    )


def cyclic_equal(seq, target):
    n = len(seq)
    rots = [tuple(seq[i:] + seq[:i]) for i in range(n)]
    rev = list(reversed(seq))
    rots += [tuple(rev[i:] + rev[:i]) for i in range(n)]
    return tuple(target) in rots


class TestSeps:
    def test_dumbbell(self):
        (s,) = find_seps(dumbbell())
        assert s.edges == ("e",) and {s.left, s.right} == {frozenset("A"), frozenset("B")}

    def test_interlace(self):
        assert find_seps(interlace(3)) == []

    def test_chain(self):
        assert sorted(s.id for s in find_seps(chain3())) == ["e", "f"]

    def test_loop_never_sep(self):
        assert find_seps(curve({"A": 0}, [("l", "A", "A")])) == []

    def test_disconnected(self):
        with pytest.raises(DisconnectedCurve):
            find_seps(curve({"A": 1, "B": 1}, []))


class TestBiseps:
    def test_banana(self):
        (b,) = find_biseps(banana(1, 1, 2))
        assert b.edges == ("e0", "e1") and b.kind is StarKind.BISEP

    def test_interlace(self):
        assert find_biseps(interlace(3)) == []

    def test_triangle(self):
        assert sorted(b.id for b in find_biseps(triangle())) == ["ab,bc", "ab,ca", "bc,ca"]


class TestPolyseparators:
    def test_triangle(self):
        (p,) = maximal_polyseparators(triangle())
        assert p.degree == 3 and p.is_proper
        assert sorted(map(sorted, p.parts)) == [["A"], ["B"], ["C"]]

    def test_banana(self):
        (p,) = maximal_polyseparators(banana())
        assert p.degree == 2 and not p.is_proper

    def test_two_inseparable(self):
        assert maximal_polyseparators(interlace(4)) == []

    def test_triangle_arrangement(self):
        p = cyclic_arrangement(triangle(), ["ab", "bc", "ca"])
        assert cyclic_equal(list(p.edges), ("ab", "bc", "ca"))
        # part i sits between edges i and i+1
        for i, part in enumerate(p.parts):
            (v,) = part
            e1, e2 = p.edges[i], p.edges[(i + 1) % 3]
            assert v in set(triangle().edge(e1).ends) & set(triangle().edge(e2).ends)

    def test_square_arrangement(self):
        p = cyclic_arrangement(square(), ["ab", "cd", "bc", "da"])
        assert cyclic_equal(list(p.edges), ("ab", "bc", "cd", "da"))

    def test_degree_two_arrangement(self):
        p = cyclic_arrangement(banana(), ["e0", "e1"])
        assert p.degree == 2 and len(p.parts) == 2

    def test_not_pairwise_biseps(self):
        g = chain3()
        with pytest.raises(NotAPolyseparator):
            cyclic_arrangement(g, ["e", "f"])


class TestSemicompact:
    def test_triangle(self):
        assert not is_semicompact_type(triangle())

    def test_banana(self):
        assert is_semicompact_type(banana())

    def test_smooth(self):
        assert is_semicompact_type(curve({"A": 3}, []))


class TestTwoSeparation:
    def test_dumbbell(self):
        comps = two_separation(dumbbell())
        assert [c.id for c in comps] == ["A", "B"]
        for c in comps:
            (u,) = c.unimarks
            assert not c.bimarks and c.subgraph.half_edge_vertex(u.half_edge) == c.id
            assert c.id in u.star.left

    def test_triangle(self):
        comps = two_separation(triangle())
        assert [c.id for c in comps] == ["A", "B", "C"]
        for c in comps:
            (b,) = c.bimarks
            assert not c.unimarks and b.proper
            halves = b.half_edges
            # one half-edge from each of two different edges, both on this vertex
            assert len({h.split(".")[0] for h in halves}) == 2
            assert all(c.subgraph.half_edge_vertex(h) == c.id for h in halves)
            assert b.star.left == frozenset({c.id})

    def test_interlace(self):
        (c,) = two_separation(interlace(3))
        assert c.id == "P+Q" and not c.unimarks and not c.bimarks

    def test_k4_minus_edge_bipointed(self):
        comps = two_separation(k4_minus_edge())
        ids = [c.id for c in comps]
        assert "A+C" in ids
        ac = next(c for c in comps if c.id == "A+C")
        # bare A-C is a single edge, a sep; the bimarks close it up
        assert internal_star_seps(ac) == []
        assert len(bipointed_closure(ac).edges) == 3

    def test_k23_pieces(self):
        comps = two_separation(k23())
        core = next(c for c in comps if c.id == "v3+v4")
        assert core.pieces == 2 and core.genus == 1 + 1 + 0 - 2 + 1
        assert len(core.bimarks) == 3


class TestTree:
    def test_chain(self):
        t = separation_tree(chain3())
        assert len(t.vertices) == 3 and len(t.edges) == 2 and t.is_tree()

    def test_two_inseparable(self):
        t = separation_tree(interlace(3))
        assert t.vertices == ("P+Q",) and t.edges == ()

    def test_banana(self):
        t = separation_tree(banana(2, 2))
        assert t.vertices == ("A", "B")
        (e,) = t.edges
        assert e.kind is StarKind.BISEP and e.id == "e0,e1"

    def test_triangle_single_vertex(self):
        t = separation_tree(triangle())
        assert t.vertices == ("A+B+C",) and t.edges == ()
        assert dict(t.members)["A+B+C"] == ("A", "B", "C")


class TestRelative:
    def test_two_inseparable_any_support(self):
        assert relative_two_inseparable(interlace(3), []).two_inseparable

    def test_one_point_each(self):
        assert relative_two_inseparable(banana(), ["A", "B"]).two_inseparable

    def test_both_on_one_side(self):
        assert not relative_two_inseparable(banana(), ["A", "A"]).two_inseparable

    def test_half_edge_support(self):
        r = relative_two_inseparable(dumbbell(), ["e.0", "e.1"])
        assert r.inseparable and r.two_inseparable


class TestAdjacency:
    def _bisep(self, g, edges, left):
        (b,) = [x for x in find_biseps(g) if x.edges == tuple(sorted(edges))]
        return b.oriented(left)

    def test_triangle(self):
        b = self._bisep(triangle(), ("ab", "ca"), "B")
        assert b.right == frozenset({"A"})
        assert adjacency_check(triangle(), b)

    def test_square_opposite(self):
        b = self._bisep(square(), ("ab", "cd"), "A")
        assert not adjacency_check(square(), b)
        assert not adjacency_check(square(), b.flipped())

    def test_degree_two(self):
        b = self._bisep(banana(), ("e0", "e1"), "A")
        assert adjacency_check(banana(), b) and adjacency_check(banana(), b.flipped())

    def test_not_bisep(self):
        g = chain3()
        s = find_seps(g)[0]
        with pytest.raises(NotABisep):
            adjacency_check(g, s)


# -- properties ------------------------------------------------------------------


def _check_against_brute_force(g):
    assert {s.id for s in find_seps(g)} == brute_seps(g)
    bb = brute_biseps(g)
    found = {b.edges: frozenset({b.left, b.right}) for b in find_biseps(g)}
    assert found == bb


@settings(max_examples=300, deadline=None)
@given(multigraphs(max_vertices=6, max_edges=6))
def test_cuts_match_brute_force(g):
    _check_against_brute_force(g)


@settings(max_examples=200, deadline=None)
@given(multigraphs(max_vertices=6, max_edges=9))
def test_polyseparator_structure(g):
    s = structure(g)
    seen = set()
    for p in s.polyseparators:
        assert not seen & set(p.edges), "maximal polyseparators overlap"
        seen |= set(p.edges)
        pairs = {b.edges for b in s.biseps}
        for a, b in itertools.combinations(sorted(p.edges), 2):
            assert (a, b) in pairs
        # quotient graph is a simple n-gon
        q = nx.MultiGraph()
        part_of = {v: i for i, P in enumerate(p.parts) for v in P}
        for e in p.edges:
            a, b = g.edge(e).ends
            q.add_edge(part_of[a], part_of[b])
        assert q.number_of_nodes() == p.degree
        assert all(d == 2 for _, d in q.degree())
        assert nx.is_connected(q)
        if p.degree >= 3:
            assert nx.number_of_selfloops(q) == 0 and not any(
                q.number_of_edges(u, v) > 1 for u, v in q.edges()
            )
    for b in s.biseps:
        assert sum(set(b.edges) <= set(p.edges) for p in s.polyseparators) == 1


@settings(max_examples=200, deadline=None)
@given(multigraphs(max_vertices=6, max_edges=9))
def test_two_components_and_tree(g):
    comps = two_separation(g)
    covered = set()
    for c in comps:
        assert not covered & c.vertex_set
        covered |= c.vertex_set
        assert internal_star_seps(c) == []
        for u in c.unimarks:
            assert c.vertex_set <= u.star.left
        for b in c.bimarks:
            assert c.vertex_set <= b.star.left
            assert len({h.rsplit(".", 1)[0] for h in b.half_edges}) == 2
        if c.pieces == 1:
            pts = c.mark_points()
            assert relative_two_inseparable(c.subgraph, pts).two_inseparable
    assert covered == set(g.vertex_ids)
    t = separation_tree(g)
    assert t.is_tree() and len(t.edges) == len(t.vertices) - 1


@settings(max_examples=200, deadline=None)
@given(multigraphs(max_vertices=6, max_edges=9))
def test_star_seps_lie_to_one_side(g):
    s = structure(g)
    if not s.is_semicompact():
        return
    stars = s.seps + s.biseps
    for a, b in itertools.permutations(stars, 2):
        if set(a.edges) & set(b.edges):
            continue
        assert b.lies_in(g, a.left) or b.lies_in(g, a.right)


@settings(max_examples=150, deadline=None)
@given(multigraphs(max_vertices=6, max_edges=9))
def test_adjacency_matches_arrangement(g):
    for b in find_biseps(g):
        for st in (b, b.flipped()):
            adjacency_check(g, st)  # raises if the two characterisations disagree


@settings(max_examples=150, deadline=None)
@given(multigraphs(max_vertices=6, max_edges=9))
def test_genus_conserved_across_tree(g):
    s = structure(g)
    blown = {e for st in s.tree_stars for e in st.edges}
    comps = theta_separation(g, s.tree_stars)
    bare = g.without_edges(blown)
    pieces = bare.components()
    total = sum(arithmetic_genus(bare.restrict(P)) for P in pieces)
    assert total == arithmetic_genus(g) - len(blown) + len(pieces) - 1
    assert len(comps) <= len(pieces)


def test_is_two_inseparable():
    assert is_two_inseparable(interlace(3))
    assert not is_two_inseparable(banana())
    assert not is_two_inseparable(dumbbell())


def test_side_enum():
    assert Side.LEFT.opposite is Side.RIGHT
    st = StarSep(StarKind.SEP, ("e",), frozenset("A"), frozenset("B"))
    assert st.side(Side.RIGHT) == frozenset("B") and st.oriented("B").left == frozenset("B")
