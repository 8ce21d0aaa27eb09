"""Seps, biseps, polyseparators and the 2-separation of a dual graph.

Everything here is brute force over edges and edge pairs, which is the
contract at desk scale.  The structure lemmas (maximal polyseparators are
disjoint n-gons, 2-components are inseparable, the 2-separation graph is a
tree) are checked on every call and raise :class:`InvariantViolation`.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, NamedTuple

from .curve_graph import CurveGraph, Edge, component_id
from .errors import (
    DisconnectedCurve,
    InvariantViolation,
    MalformedInput,
    NotABisep,
    NotAPolyseparator,
)


class StarKind(str, enum.Enum):
    SEP = "sep"
    BISEP = "bisep"


class Side(str, enum.Enum):
    LEFT = "left"
    RIGHT = "right"

    @property
    def opposite(self) -> "Side":
        return Side.RIGHT if self is Side.LEFT else Side.LEFT


@dataclass(frozen=True)
class StarSep:
    """A sep (one edge) or bisep (two edges) with an explicit left side."""

    kind: StarKind
    edges: tuple[str, ...]
    left: frozenset[str]
    right: frozenset[str]

    @property
    def id(self) -> str:
        return ",".join(self.edges)

    def flipped(self) -> "StarSep":
        return StarSep(self.kind, self.edges, self.right, self.left)

    def side(self, which: Side) -> frozenset[str]:
        return self.left if which is Side.LEFT else self.right

    def oriented(self, vertex: str) -> "StarSep":
        """Same *-sep with ``vertex`` on the left."""
        if vertex in self.left:
            return self
        if vertex in self.right:
            return self.flipped()
        raise KeyError(vertex)

    def lies_in(self, g: CurveGraph, vertices: frozenset[str]) -> bool:
        """True if every edge of this *-sep has both ends in ``vertices``."""
        return all(set(g.edge(e).ends) <= vertices for e in self.edges)


@dataclass(frozen=True)
class Polyseparator:
    """Maximal polyseparator in cyclic arrangement.

    ``parts[i]`` is the part between ``edges[i]`` and ``edges[i+1]``
    (indices mod n).
    """

    edges: tuple[str, ...]
    parts: tuple[frozenset[str], ...]

    @property
    def degree(self) -> int:
        return len(self.edges)

    @property
    def is_proper(self) -> bool:
        return self.degree >= 3

    @property
    def id(self) -> str:
        return ",".join(sorted(self.edges))

    def consecutive_pairs(self) -> list[tuple[str, str]]:
        n = self.degree
        if n == 2:
            return [tuple(sorted(self.edges))]
        return [tuple(sorted((self.edges[i], self.edges[(i + 1) % n]))) for i in range(n)]


@dataclass(frozen=True)
class Unimark:
    half_edge: str
    star: StarSep  # oriented with the owning component on the left


@dataclass(frozen=True)
class Bimark:
    half_edges: tuple[str, str]  # in the order of star.edges
    star: StarSep
    proper: bool = False  # comes from a proper polyseparator

    @property
    def key(self) -> str:
        return ",".join(self.half_edges)


@dataclass(frozen=True)
class TwoComponent:
    id: str
    subgraph: CurveGraph
    unimarks: tuple[Unimark, ...] = ()
    bimarks: tuple[Bimark, ...] = ()

    @property
    def vertex_set(self) -> frozenset[str]:
        return frozenset(self.subgraph.vertex_ids)

    @property
    def pieces(self) -> int:
        """Connected pieces of the bare curve; more than one only when bimarks glue them."""
        return len(self.subgraph.components())

    @property
    def genus(self) -> int:
        """Arithmetic genus, counting the pieces as if glued: sum genus + E - V + 1."""
        g = self.subgraph
        return sum(v.genus for v in g.vertices) + len(g.edges) - len(g.vertices) + 1

    def mark_points(self) -> list[str]:
        pts = [u.half_edge for u in self.unimarks]
        for b in self.bimarks:
            pts.extend(b.half_edges)
        return pts


@dataclass(frozen=True)
class TreeEdge:
    id: str
    kind: StarKind
    ends: tuple[str, str]


@dataclass(frozen=True)
class SeparationTree:
    vertices: tuple[str, ...]
    edges: tuple[TreeEdge, ...]
    members: tuple[tuple[str, tuple[str, ...]], ...] = ()  # tree vertex -> 2-component ids

    def is_tree(self) -> bool:
        if len(self.edges) != len(self.vertices) - 1:
            return False
        parent = {v: v for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.edges:
            a, b = find(e.ends[0]), find(e.ends[1])
            if a == b:
                return False
            parent[a] = b
        return True


class RelativeSeparability(NamedTuple):
    two_inseparable: bool
    inseparable: bool


# -- basic cuts ----------------------------------------------------------------


def _require_connected(g: CurveGraph) -> None:
    if not g.is_connected():
        raise DisconnectedCurve("analysis needs a connected curve")


def _side_of(g: CurveGraph, removed: Iterable[str], anchor: str) -> tuple[frozenset, frozenset] | None:
    comps = g.components(removed)
    if len(comps) == 1:
        return None
    if len(comps) != 2:
        raise InvariantViolation(f"removing {sorted(removed)} left {len(comps)} components")
    a, b = comps
    return (a, b) if anchor in a else (b, a)


def _seps(g: CurveGraph) -> tuple[StarSep, ...]:
    out = []
    for e in sorted(g.edges, key=lambda e: e.id):
        if e.is_loop:
            continue
        split = _side_of(g, [e.id], e.ends[0])
        if split:
            out.append(StarSep(StarKind.SEP, (e.id,), *split))
    return tuple(out)


def _biseps(g: CurveGraph, sep_edges: set[str]) -> tuple[StarSep, ...]:
    cand = sorted(e.id for e in g.edges if not e.is_loop and e.id not in sep_edges)
    out = []
    for a, b in itertools.combinations(cand, 2):
        split = _side_of(g, [a, b], g.edge(a).ends[0])
        if split:
            out.append(StarSep(StarKind.BISEP, (a, b), *split))
    return tuple(out)


def find_seps(g: CurveGraph) -> list[StarSep]:
    _require_connected(g)
    return list(structure(g).seps)


def find_biseps(g: CurveGraph) -> list[StarSep]:
    _require_connected(g)
    return list(structure(g).biseps)


def is_two_inseparable(g: CurveGraph) -> bool:
    s = structure(g)
    return not s.seps and not s.biseps


def inseparable_components(g: CurveGraph) -> list[frozenset[str]]:
    _require_connected(g)
    return g.components(s.edges[0] for s in structure(g).seps)


# -- polyseparators ------------------------------------------------------------


def _inseparable_block(g: CurveGraph, sep_edges: set[str], edge: str) -> frozenset[str]:
    v = g.edge(edge).ends[0]
    for comp in g.components(sep_edges):
        if v in comp:
            return comp
    raise AssertionError("unreachable")


def _closure(block: CurveGraph, theta: set[str]) -> set[str]:
    """M(theta): add every node separating a part, until nothing changes."""
    theta = set(theta)
    while True:
        grown = set(theta)
        for part in block.components(theta):
            sub = block.restrict(part)
            for e in sub.edges:
                if not e.is_loop and not sub.is_connected([e.id]):
                    grown.add(e.id)
        if grown == theta:
            return theta
        theta = grown


def _arrange(block: CurveGraph, edges: Iterable[str]) -> Polyseparator:
    """Cyclic arrangement of a polyseparator inside its inseparable block."""
    theta = sorted(set(edges))
    n = len(theta)
    parts = block.components(theta)
    if len(parts) != n:
        raise InvariantViolation(f"polyseparator {theta}: {len(parts)} parts, expected {n}")
    part_of = {}
    for i, p in enumerate(parts):
        for v in p:
            part_of[v] = i
    at_part: dict[int, list[str]] = {i: [] for i in range(n)}
    for eid in theta:
        e = block.edge(eid)
        pa, pb = part_of[e.ends[0]], part_of[e.ends[1]]
        if pa == pb:
            raise InvariantViolation(f"polyseparator edge {eid} inside a single part")
        at_part[pa].append(eid)
        at_part[pb].append(eid)
    for i, es in at_part.items():
        if len(es) != 2 or (n >= 3 and es[0] == es[1]):
            raise InvariantViolation(f"G(Theta) for {theta} is not a simple {n}-gon")

    first = theta[0]
    e0 = block.edge(first)
    if n == 2:
        p0 = part_of[e0.ends[0]]
        order = [first, theta[1]]
        # parts[0] sits between edges[0] and edges[1]; choose the side of ends[0]
        return Polyseparator(tuple(order), (parts[p0], parts[1 - p0]))
    pa, pb = part_of[e0.ends[0]], part_of[e0.ends[1]]
    nxt_a = next(x for x in at_part[pa] if x != first)
    nxt_b = next(x for x in at_part[pb] if x != first)
    cur_part = pa if nxt_a < nxt_b else pb
    order = [first]
    seq_parts = []
    cur = first
    for _ in range(n):
        seq_parts.append(cur_part)
        nxt = next(x for x in at_part[cur_part] if x != cur)
        if nxt == first:
            break
        order.append(nxt)
        e = block.edge(nxt)
        a, b = part_of[e.ends[0]], part_of[e.ends[1]]
        cur_part = b if a == cur_part else a
        cur = nxt
    if len(order) != n or len(seq_parts) != n:
        raise InvariantViolation(f"G(Theta) for {theta} is not a single cycle")
    return Polyseparator(tuple(order), tuple(parts[i] for i in seq_parts))


def _polyseparators(g: CurveGraph, seps: tuple[StarSep, ...], biseps: tuple[StarSep, ...]):
    sep_edges = {s.edges[0] for s in seps}
    parent: dict[str, str] = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for b in biseps:
        x, y = find(b.edges[0]), find(b.edges[1])
        if x != y:
            parent[max(x, y)] = min(x, y)
    classes: dict[str, set[str]] = {}
    for e in parent:
        classes.setdefault(find(e), set()).add(e)

    pairs = {frozenset(b.edges) for b in biseps}
    out = []
    seen_edges: set[str] = set()
    for members in classes.values():
        for a, b in itertools.combinations(sorted(members), 2):
            if frozenset((a, b)) not in pairs:
                raise InvariantViolation(f"{a},{b} in one bisep class but not a bisep")
        seed = sorted(members)[:2]
        block_vs = _inseparable_block(g, sep_edges, seed[0])
        block = g.restrict(block_vs)
        closed = _closure(block, set(seed))
        if closed != members:
            raise InvariantViolation(
                f"M({seed}) = {sorted(closed)} differs from bisep class {sorted(members)}"
            )
        if seen_edges & members:
            raise InvariantViolation("maximal polyseparators are not disjoint")
        seen_edges |= members
        out.append(_arrange(block, members))
    out.sort(key=lambda p: p.edges[0])
    return tuple(out)


# -- shared structure ---------------------------------------------------------


@dataclass(frozen=True)
class Structure:
    seps: tuple[StarSep, ...]
    biseps: tuple[StarSep, ...]
    polyseparators: tuple[Polyseparator, ...]

    @property
    def tree_stars(self) -> tuple[StarSep, ...]:
        """Seps and the biseps forming degree-2 maximal polyseparators."""
        deg2 = {p.id for p in self.polyseparators if p.degree == 2}
        return self.seps + tuple(b for b in self.biseps if b.id in deg2)

    @property
    def adjacent_stars(self) -> tuple[StarSep, ...]:
        """Every sep and every bisep of consecutive polyseparator edges."""
        wanted = {pair for p in self.polyseparators for pair in p.consecutive_pairs()}
        return self.seps + tuple(b for b in self.biseps if b.edges in wanted)

    def polyseparator_of(self, edge: str) -> Polyseparator | None:
        for p in self.polyseparators:
            if edge in p.edges:
                return p
        return None

    def is_semicompact(self) -> bool:
        return all(p.degree == 2 for p in self.polyseparators)


@lru_cache(maxsize=512)
def structure(g: CurveGraph) -> Structure:
    _require_connected(g)
    seps = _seps(g)
    biseps = _biseps(g, {s.edges[0] for s in seps})
    polys = _polyseparators(g, seps, biseps)
    s = Structure(seps, biseps, polys)
    if s.is_semicompact():
        _check_one_side(g, seps + biseps)
    return s


def _check_one_side(g: CurveGraph, stars: tuple[StarSep, ...]) -> None:
    for s, t in itertools.permutations(stars, 2):
        if set(s.edges) & set(t.edges):
            continue
        if not (t.lies_in(g, s.left) or t.lies_in(g, s.right)):
            raise InvariantViolation(f"*-seps {s.id} and {t.id} straddle each other")


def maximal_polyseparators(g: CurveGraph) -> list[Polyseparator]:
    return list(structure(g).polyseparators)


def cyclic_arrangement(g: CurveGraph, p: Polyseparator | Iterable[str]) -> Polyseparator:
    edges = sorted(set(p.edges if isinstance(p, Polyseparator) else p))
    for e in edges:
        g.edge(e)
    if len(edges) < 2:
        raise NotAPolyseparator("a polyseparator has at least two nodes")
    s = structure(g)
    pairs = {frozenset(b.edges) for b in s.biseps}
    for a, b in itertools.combinations(edges, 2):
        if frozenset((a, b)) not in pairs:
            raise NotAPolyseparator(f"{a},{b} is not a bisep")
    sep_edges = {x.edges[0] for x in s.seps}
    block = g.restrict(_inseparable_block(g, sep_edges, edges[0]))
    return _arrange(block, edges)


def is_semicompact_type(g: CurveGraph) -> bool:
    return structure(g).is_semicompact()


# -- separations -----------------------------------------------------------------


def theta_separation(g: CurveGraph, stars: Iterable[StarSep]) -> list[TwoComponent]:
    """Blow up every edge of ``stars`` and package the components with marks.

    Components are taken in the bipointed sense: the two preimages on one side
    of a bisep that is not part of a proper polyseparator belong to one
    component even when the bare blowup separates them.
    """
    stars = list(stars)
    s = structure(g)
    proper_edges = {e for p in s.polyseparators if p.is_proper for e in p.edges}
    blown = {e for st in stars for e in st.edges}
    pieces = g.without_edges(blown).components()
    piece_of = {v: i for i, P in enumerate(pieces) for v in P}
    parent = list(range(len(pieces)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def halves_on(st: StarSep, side: Side) -> list[str]:
        out = []
        for eid in st.edges:
            e = g.edge(eid)
            out.append([h for h, v in zip(e.half_edges, e.ends) if v in st.side(side)][0])
        return out

    for st in stars:
        if st.kind is StarKind.BISEP and not set(st.edges) & proper_edges:
            for side in (Side.LEFT, Side.RIGHT):
                a, b = (piece_of[g.half_edge_vertex(h)] for h in halves_on(st, side))
                parent[find(a)] = find(b)
    groups: dict[int, set[str]] = {}
    for i, P in enumerate(pieces):
        groups.setdefault(find(i), set()).update(P)

    out = []
    covered: set[str] = set()
    for S in map(frozenset, groups.values()):
        uni, bi = [], []
        for st in stars:
            if not (S <= st.left or S <= st.right):
                raise InvariantViolation(f"component {component_id(S)} straddles {st.id}")
            side = Side.LEFT if S <= st.left else Side.RIGHT
            halves = halves_on(st, side)
            if not all(g.half_edge_vertex(h) in S for h in halves):
                continue
            oriented = st if side is Side.LEFT else st.flipped()
            if st.kind is StarKind.SEP:
                uni.append(Unimark(halves[0], oriented))
            else:
                bi.append(Bimark(tuple(halves), oriented, bool(set(st.edges) & proper_edges)))
            covered.update(halves)
        out.append(TwoComponent(component_id(S), g.restrict(S), tuple(uni), tuple(bi)))
    for e in blown:
        for h in g.edge(e).half_edges:
            if h not in covered:
                raise MalformedInput(f"node preimage {h} is not part of any induced mark")
    out.sort(key=lambda c: c.id)
    return out


def bipointed_closure(c: TwoComponent) -> CurveGraph:
    """The component with each bimark pair joined by a virtual edge ``~<key>``.

    A bimark stands for the connected curve on its far side, so connectivity
    questions about a 2-component are asked of this closure.
    """
    extra = []
    for b in c.bimarks:
        ends = tuple(c.subgraph.half_edge_vertex(h) for h in b.half_edges)
        extra.append(Edge(f"~{b.key}", ends, (f"~{b.half_edges[0]}", f"~{b.half_edges[1]}")))
    return CurveGraph(c.subgraph.vertices, c.subgraph.edges + tuple(extra))


def internal_star_seps(c: TwoComponent) -> list[StarSep]:
    """Seps and biseps made of nodes of ``c``, in the bipointed sense."""
    closure = bipointed_closure(c)
    s = structure(closure)
    return [st for st in s.seps + s.biseps if not any(e.startswith("~") for e in st.edges)]


@lru_cache(maxsize=256)
def _two_separation(g: CurveGraph) -> tuple[TwoComponent, ...]:
    s = structure(g)
    comps = theta_separation(g, s.adjacent_stars)
    for c in comps:
        inner = internal_star_seps(c)
        if inner:
            raise InvariantViolation(f"2-component {c.id} has internal *-sep {inner[0].id}")
        if c.pieces > 1:
            continue
        support = [c.subgraph.half_edge_vertex(h) for h in c.mark_points()]
        rel = relative_two_inseparable(c.subgraph, support)
        if not rel.two_inseparable:
            raise InvariantViolation(f"2-component {c.id} not 2-inseparable relative to its marks")
    return tuple(comps)


def two_separation(g: CurveGraph) -> list[TwoComponent]:
    _require_connected(g)
    return list(_two_separation(g))


def separation_tree(g: CurveGraph) -> SeparationTree:
    """Tree on the (bipointed) components of the blowup at seps and degree-2 maximal biseps.

    Proper polyseparators stay inside tree vertices; ``members`` lists the
    2-components contained in each tree vertex.
    """
    _require_connected(g)
    s = structure(g)
    stars = s.tree_stars
    comps = [c.vertex_set for c in theta_separation(g, stars)]
    cid = {v: component_id(S) for S in comps for v in S}
    edges = []
    for st in stars:
        ends = []
        for side in (st.left, st.right):
            here = set()
            for eid in st.edges:
                e = g.edge(eid)
                here.update(cid[v] for v in e.ends if v in side)
            if len(here) != 1:
                raise InvariantViolation(f"{st.id} does not meet a single tree vertex on each side")
            ends.append(here.pop())
        edges.append(TreeEdge(st.id, st.kind, tuple(sorted(ends))))
    twos = two_separation(g)
    members = []
    for S in sorted(comps, key=component_id):
        inside = tuple(c.id for c in twos if c.vertex_set <= S)
        members.append((component_id(S), inside))
    tree = SeparationTree(tuple(sorted(component_id(S) for S in comps)), tuple(edges), tuple(members))
    if not tree.is_tree():
        raise InvariantViolation("2-separation graph is not a tree")
    return tree


def relative_two_inseparable(g: CurveGraph, support: Iterable[str]) -> RelativeSeparability:
    """Whether every bisep (resp. sep) of ``g`` has support on both sides.

    ``support`` items are vertex ids, or half-edge / mark ids of ``g``.
    """
    pts = set()
    vids = set(g.vertex_ids)
    for x in support:
        pts.add(x if x in vids else g.half_edge_vertex(x))
    s = structure(g)

    def meets_both(st):
        return bool(pts & st.left) and bool(pts & st.right)

    return RelativeSeparability(
        two_inseparable=all(meets_both(b) for b in s.biseps),
        inseparable=all(meets_both(x) for x in s.seps),
    )


def adjacency_check(g: CurveGraph, b: StarSep) -> bool:
    """True iff the right side of ``b`` (within its inseparable block) is inseparable."""
    s = structure(g)
    match = [x for x in s.biseps if x.edges == tuple(sorted(b.edges))]
    if b.kind is not StarKind.BISEP or not match:
        raise NotABisep(f"{b.id} is not a bisep")
    sep_edges = {x.edges[0] for x in s.seps}
    block = _inseparable_block(g, sep_edges, b.edges[0])
    right = b.right & block
    sub = g.restrict(right)
    adjacent = not any(not e.is_loop and not sub.is_connected([e.id]) for e in sub.edges)
    poly = s.polyseparator_of(b.edges[0])
    consecutive = right in poly.parts
    if adjacent != consecutive:
        raise InvariantViolation(f"adjacency of {b.id} disagrees with its cyclic arrangement")
    return adjacent
