"""Test corpora of dual graphs: exhaustive small multigraphs and random ones."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations_with_replacement, permutations, product
from typing import Iterator

from .curve_graph import CurveGraph, Edge, Vertex

EdgeList = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class CorpusConfig:
    max_vertices: int = 5
    max_edges: int = 6
    loops: bool = True
    random_count: int = 500
    seed: int = 20240611


def _connected(n: int, edges: EdgeList) -> bool:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        parent[find(a)] = find(b)
    return len({find(v) for v in range(n)}) == 1


def _invariant(n: int, edges: EdgeList) -> list[tuple]:
    """Per-vertex label invariant under relabelling (two rounds of degree refinement)."""
    loops = [0] * n
    nbrs: list[list[int]] = [[] for _ in range(n)]
    for a, b in edges:
        if a == b:
            loops[a] += 1
        else:
            nbrs[a].append(b)
            nbrs[b].append(a)
    lab = [(loops[v], len(nbrs[v])) for v in range(n)]
    for _ in range(2):
        lab = [(lab[v], tuple(sorted(lab[u] for u in nbrs[v]))) for v in range(n)]
    return lab


def canonical_form(n: int, edges: EdgeList) -> EdgeList:
    """Lexicographically least relabelled edge list, searching only label-preserving orders."""
    lab = _invariant(n, edges)
    classes: dict[tuple, list[int]] = {}
    for v in range(n):
        classes.setdefault(lab[v], []).append(v)
    ordered = [classes[k] for k in sorted(classes)]
    best = None
    for choice in product(*(permutations(c) for c in ordered)):
        order = [v for block in choice for v in block]
        pos = {v: i for i, v in enumerate(order)}
        form = tuple(sorted(tuple(sorted((pos[a], pos[b]))) for a, b in edges))
        if best is None or form < best:
            best = form
    return best


def to_curve(n: int, edges: EdgeList, genera: tuple[int, ...] | None = None) -> CurveGraph:
    genera = genera or (0,) * n
    vs = tuple(Vertex(f"v{i}", genera[i]) for i in range(n))
    es = tuple(Edge(f"e{j}", (f"v{a}", f"v{b}")) for j, (a, b) in enumerate(edges))
    return CurveGraph(vs, es)


def exhaustive_multigraphs(cfg: CorpusConfig = CorpusConfig()) -> Iterator[tuple[int, EdgeList]]:
    """Connected multigraphs up to isomorphism, as (vertex count, edge list)."""
    for n in range(1, cfg.max_vertices + 1):
        slots = [(a, b) for a in range(n) for b in range(a, n) if cfg.loops or a != b]
        seen: set[EdgeList] = set()
        for m in range(max(0, n - 1), cfg.max_edges + 1):
            for edges in combinations_with_replacement(slots, m):
                if not _connected(n, edges):
                    continue
                form = canonical_form(n, edges)
                if form not in seen:
                    seen.add(form)
                    yield n, form


def random_multigraph(rng: random.Random, max_vertices: int = 7, max_edges: int = 10, loops: bool = True):
    """A random connected multigraph: random spanning tree plus extra random edges."""
    n = rng.randint(1, max_vertices)
    edges = [(rng.randrange(v), v) for v in range(1, n)]
    extra = rng.randint(0, max(0, max_edges - len(edges)))
    for _ in range(extra):
        a, b = rng.randrange(n), rng.randrange(n)
        if a == b and not loops:
            continue
        edges.append((min(a, b), max(a, b)))
    return n, tuple(edges)


def random_multigraphs(cfg: CorpusConfig = CorpusConfig(), **kw) -> Iterator[tuple[int, EdgeList]]:
    rng = random.Random(cfg.seed)
    for _ in range(cfg.random_count):
        yield random_multigraph(rng, loops=cfg.loops, **kw)


def random_genera(rng: random.Random, n: int, high: int = 2) -> tuple[int, ...]:
    return tuple(rng.randint(0, high) for _ in range(n))
