"""Dual multigraphs of nodal curves.

Vertices are irreducible components labelled by geometric genus, edges are
nodes.  Every edge owns two named half-edges (the node preimages); when an
edge is blown up its half-edges survive as marked points on their vertices,
so later stages can refer to them by id.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from .errors import (
    DisconnectedCurve,
    GenusTooLow,
    MalformedInput,
    UnknownEdge,
    UnstableCurve,
)


def component_id(vertex_ids: Iterable[str]) -> str:
    """Canonical id of a vertex set: sorted ids joined by ``+``."""
    return "+".join(sorted(vertex_ids))


@dataclass(frozen=True)
class Vertex:
    id: str
    genus: int = 0
    flags: Mapping[str, object] = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if not isinstance(self.genus, int) or self.genus < 0:
            raise MalformedInput(f"vertex {self.id!r}: genus must be a nonnegative integer")


@dataclass(frozen=True)
class Edge:
    id: str
    ends: tuple[str, str]
    half_edges: tuple[str, str] | None = None

    def __post_init__(self):
        object.__setattr__(self, "ends", tuple(self.ends))
        if len(self.ends) != 2:
            raise MalformedInput(f"edge {self.id!r}: needs exactly two ends")
        if self.half_edges is None:
            object.__setattr__(self, "half_edges", (f"{self.id}.0", f"{self.id}.1"))
        else:
            object.__setattr__(self, "half_edges", tuple(self.half_edges))
        if len(self.half_edges) != 2 or self.half_edges[0] == self.half_edges[1]:
            raise MalformedInput(f"edge {self.id!r}: needs two distinct half-edge ids")

    @property
    def is_loop(self) -> bool:
        return self.ends[0] == self.ends[1]

    def half_edge_at(self, vertex: str) -> str:
        """The half-edge of this edge lying on ``vertex`` (first one for a loop)."""
        for h, v in zip(self.half_edges, self.ends):
            if v == vertex:
                return h
        raise KeyError(f"edge {self.id} does not touch {vertex}")

    def other_end(self, vertex: str) -> str:
        a, b = self.ends
        return b if a == vertex else a


@dataclass(frozen=True)
class CurveGraph:
    """Dual graph of a nodal curve.

    ``marks`` holds ``(half_edge_id, vertex_id)`` pairs: smooth marked points
    left over from blown-up nodes.
    """

    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...] = ()
    marks: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "marks", tuple(tuple(m) for m in self.marks))
        vids = [v.id for v in self.vertices]
        if len(set(vids)) != len(vids):
            raise MalformedInput("duplicate vertex id")
        eids = [e.id for e in self.edges]
        if len(set(eids)) != len(eids):
            raise MalformedInput("duplicate edge id")
        known = set(vids)
        halves = []
        for e in self.edges:
            for v in e.ends:
                if v not in known:
                    raise MalformedInput(f"edge {e.id!r} references unknown vertex {v!r}")
            halves.extend(e.half_edges)
        for h, v in self.marks:
            if v not in known:
                raise MalformedInput(f"mark {h!r} references unknown vertex {v!r}")
            halves.append(h)
        if len(set(halves)) != len(halves):
            raise MalformedInput("half-edge ids must be globally unique")

    # -- lookups -----------------------------------------------------------

    @cached_property
    def _vertex_index(self) -> dict[str, Vertex]:
        return {v.id: v for v in self.vertices}

    @cached_property
    def _edge_index(self) -> dict[str, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def _half_edge_index(self) -> dict[str, str]:
        out = {}
        for e in self.edges:
            for h, v in zip(e.half_edges, e.ends):
                out[h] = v
        for h, v in self.marks:
            out[h] = v
        return out

    @cached_property
    def _incidence(self) -> dict[str, list[Edge]]:
        inc: dict[str, list[Edge]] = {v.id: [] for v in self.vertices}
        for e in self.edges:
            inc[e.ends[0]].append(e)
            if not e.is_loop:
                inc[e.ends[1]].append(e)
        return inc

    @property
    def vertex_ids(self) -> tuple[str, ...]:
        return tuple(v.id for v in self.vertices)

    @property
    def edge_ids(self) -> tuple[str, ...]:
        return tuple(e.id for e in self.edges)

    def vertex(self, vid: str) -> Vertex:
        return self._vertex_index[vid]

    def edge(self, eid: str) -> Edge:
        try:
            return self._edge_index[eid]
        except KeyError:
            raise UnknownEdge(f"unknown edge {eid!r}") from None

    def has_edge(self, eid: str) -> bool:
        return eid in self._edge_index

    def half_edge_vertex(self, h: str) -> str:
        return self._half_edge_index[h]

    def incident_edges(self, vid: str) -> list[Edge]:
        return self._incidence[vid]

    def valence(self, vid: str) -> int:
        """Number of node branches at ``vid``; a self-loop counts twice."""
        return sum(2 if e.is_loop else 1 for e in self._incidence[vid])

    def marks_at(self, vid: str) -> list[str]:
        return [h for h, v in self.marks if v == vid]

    # -- connectivity --------------------------------------------------------

    def components(self, removed: Iterable[str] = ()) -> list[frozenset[str]]:
        """Connected components after deleting the edges in ``removed``."""
        removed = set(removed)
        seen: set[str] = set()
        out = []
        for start in self.vertex_ids:
            if start in seen:
                continue
            comp = {start}
            stack = [start]
            while stack:
                v = stack.pop()
                for e in self._incidence[v]:
                    if e.id in removed:
                        continue
                    w = e.other_end(v)
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            seen |= comp
            out.append(frozenset(comp))
        return out

    def is_connected(self, removed: Iterable[str] = ()) -> bool:
        return len(self.components(removed)) <= 1

    def without_edges(self, edge_ids: Iterable[str]) -> "CurveGraph":
        edge_ids = set(edge_ids)
        for eid in edge_ids:
            self.edge(eid)
        kept = tuple(e for e in self.edges if e.id not in edge_ids)
        new_marks = list(self.marks)
        for e in self.edges:
            if e.id in edge_ids:
                new_marks.extend(zip(e.half_edges, e.ends))
        return CurveGraph(self.vertices, kept, tuple(new_marks))

    def restrict(self, vertex_set: Iterable[str]) -> "CurveGraph":
        """Subcurve on ``vertex_set``; branches of edges leaving it become marks."""
        vs = set(vertex_set)
        verts = tuple(v for v in self.vertices if v.id in vs)
        edges = []
        marks = [m for m in self.marks if m[1] in vs]
        for e in self.edges:
            inside = [v in vs for v in e.ends]
            if all(inside):
                edges.append(e)
            else:
                marks.extend((h, v) for h, v, ok in zip(e.half_edges, e.ends, inside) if ok)
        return CurveGraph(verts, tuple(edges), tuple(marks))


class Stability(str, enum.Enum):
    STABLE = "Stable"
    SEMISTABLE = "Semistable"
    UNSTABLE = "Unstable"


def arithmetic_genus(g: CurveGraph) -> int:
    """sum of geometric genera + |E| - |V| + number of connected components."""
    return sum(v.genus for v in g.vertices) + len(g.edges) - len(g.vertices) + len(g.components())


def omega_degree(g: CurveGraph, v: Vertex | str) -> int:
    vid = v if isinstance(v, str) else v.id
    return 2 * g.vertex(vid).genus - 2 + g.valence(vid)


def classify_stability(g: CurveGraph) -> Stability:
    if not g.is_connected():
        raise DisconnectedCurve("stability is only defined for connected curves")
    degs = [omega_degree(g, v) for v in g.vertex_ids]
    if all(d > 0 for d in degs):
        return Stability.STABLE
    if all(d >= 0 for d in degs):
        return Stability.SEMISTABLE
    return Stability.UNSTABLE


def blowup(g: CurveGraph, edges: Iterable[str]) -> CurveGraph:
    """Delete ``edges``; their half-edges persist as marks.  May disconnect."""
    return g.without_edges(edges)


@dataclass(frozen=True)
class Subcurve:
    vertex_set: frozenset[str]
    induced_edges: frozenset[str]

    @classmethod
    def of(cls, g: CurveGraph, vertex_set: Iterable[str]) -> "Subcurve":
        vs = frozenset(vertex_set)
        if not vs:
            raise MalformedInput("a subcurve needs at least one vertex")
        unknown = vs - set(g.vertex_ids)
        if unknown:
            raise MalformedInput(f"unknown vertices {sorted(unknown)}")
        inner = frozenset(e.id for e in g.edges if e.ends[0] in vs and e.ends[1] in vs)
        return cls(vs, inner)


Multidegree = Mapping[str, int]


def subcurve_degree(L: Multidegree, Y: Subcurve | Iterable[str]) -> int:
    vs = Y.vertex_set if isinstance(Y, Subcurve) else Y
    return sum(L[v] for v in vs)


def spines_and_base_locus(g: CurveGraph) -> tuple[frozenset[str], frozenset[str]]:
    """Spines (smooth rational inseparable components) and seps of ``g``.

    Their union is the base locus of the canonical system.
    """
    from .separators import find_seps

    if classify_stability(g) is Stability.UNSTABLE:
        raise UnstableCurve("base locus needs a semistable curve")
    if arithmetic_genus(g) < 1:
        raise GenusTooLow("canonical system of a genus-0 curve is empty")
    seps = find_seps(g)
    sep_edges = frozenset(s.edges[0] for s in seps)
    spines = set()
    for comp in g.components(sep_edges):
        if len(comp) != 1:
            continue
        (vid,) = comp
        has_loop = any(e.is_loop for e in g.incident_edges(vid))
        if g.vertex(vid).genus == 0 and not has_loop:
            spines.add(vid)
    return frozenset(spines), sep_edges


# -- stable model -------------------------------------------------------------


@dataclass(frozen=True)
class Bridge:
    """A maximal chain of 2-branched rational components, contracted to ``edge``."""

    vertices: tuple[str, ...]
    edge: str


def stable_model(g: CurveGraph) -> tuple[CurveGraph, tuple[Bridge, ...]]:
    """Contract every maximal chain of genus-0 vertices with two branches.

    The contracted edge keeps the smallest edge id of its chain and the two
    outer half-edge ids, so ids in the stable model are ids of ``g``.
    """
    if classify_stability(g) is Stability.UNSTABLE:
        raise UnstableCurve("only semistable curves have a stable model")
    if arithmetic_genus(g) < 2:
        raise GenusTooLow("stable model needs arithmetic genus >= 2")
    verts = {v.id: v for v in g.vertices}
    edges = {e.id: e for e in g.edges}
    absorbed: dict[str, list[str]] = defaultdict(list)

    def candidates():
        inc = defaultdict(list)
        for e in edges.values():
            inc[e.ends[0]].append(e)
            if not e.is_loop:
                inc[e.ends[1]].append(e)
        for vid in sorted(verts):
            es = inc[vid]
            if verts[vid].genus == 0 and len(es) == 2 and not any(e.is_loop for e in es):
                return vid, es
        return None

    while (found := candidates()) is not None:
        vid, (e, f) = found
        u, hu = _outer(e, vid)
        w, hw = _outer(f, vid)
        new_id = min(e.id, f.id)
        del edges[e.id], edges[f.id], verts[vid]
        edges[new_id] = Edge(new_id, (u, w), (hu, hw))
        absorbed[new_id] = absorbed.pop(e.id, []) + [vid] + absorbed.pop(f.id, [])

    order = {v.id: i for i, v in enumerate(g.vertices)}
    eorder = {e.id: i for i, e in enumerate(g.edges)}
    model = CurveGraph(
        tuple(sorted(verts.values(), key=lambda v: order[v.id])),
        tuple(sorted(edges.values(), key=lambda e: eorder[e.id])),
        g.marks,
    )
    bridges = tuple(Bridge(tuple(vs), eid) for eid, vs in sorted(absorbed.items()))
    return model, bridges


def _outer(e: Edge, inner: str) -> tuple[str, str]:
    """Far endpoint of ``e`` seen from ``inner`` and the half-edge there."""
    if e.ends[0] == inner:
        return e.ends[1], e.half_edges[1]
    return e.ends[0], e.half_edges[0]
