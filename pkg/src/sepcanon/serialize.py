"""JSON reading and writing for curves, oracles, and middle azimuths."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Mapping

from .azimuths import Azimuth
from .curve_graph import CurveGraph, Edge, Vertex
from .errors import MalformedInput
from .hyperelliptic import ModuliOracle, load_middle_azimuths


def curve_from_json(data: Any) -> CurveGraph:
    """Parse ``{"vertices": [{"id", "genus"}], "edges": [{"id", "ends", "halfEdges"?}]}``."""
    if not isinstance(data, Mapping) or "vertices" not in data:
        raise MalformedInput("curve must be an object with a 'vertices' list")
    extra = set(data) - {"vertices", "edges", "name", "description"}
    if extra:
        raise MalformedInput(f"unknown curve fields {sorted(extra)}")
    try:
        vertices = []
        for v in data["vertices"]:
            genus = v.get("genus", 0)
            if not isinstance(genus, int) or isinstance(genus, bool):
                raise MalformedInput(f"genus of {v.get('id')!r} must be an integer")
            vertices.append(Vertex(str(v["id"]), genus))
        edges = []
        for e in data.get("edges", []):
            ends = e["ends"]
            if not isinstance(ends, (list, tuple)) or len(ends) != 2:
                raise MalformedInput(f"edge {e.get('id')!r} needs two ends")
            halves = e.get("halfEdges")
            edges.append(Edge(str(e["id"]), (str(ends[0]), str(ends[1])), tuple(halves) if halves else None))
    except (KeyError, TypeError, AttributeError) as exc:
        raise MalformedInput(f"malformed curve: {exc}") from exc
    return CurveGraph(tuple(vertices), tuple(edges))


def curve_to_json(g: CurveGraph) -> dict:
    out: dict = {"vertices": [{"id": v.id, "genus": v.genus} for v in g.vertices]}
    edges = []
    for e in g.edges:
        item = {"id": e.id, "ends": list(e.ends)}
        if e.half_edges != (f"{e.id}.0", f"{e.id}.1"):
            item["halfEdges"] = list(e.half_edges)
        edges.append(item)
    out["edges"] = edges
    return out


def read_json(path: str | Path) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def load_curve(path: str | Path) -> CurveGraph:
    return curve_from_json(read_json(path))


def load_oracle(path: str | Path) -> ModuliOracle:
    return ModuliOracle.from_json(read_json(path))


def load_azimuths(path: str | Path) -> dict[str, Azimuth]:
    return load_middle_azimuths(read_json(path))


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2, sort_keys=True)
