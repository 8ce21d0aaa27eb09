"""Command-line front end.

Exit codes: 0 success, 1 internal invariant violation, 2 malformed input,
3 incomplete oracle (missing keys are listed), 4 inadmissible curve.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from typing import Callable, TextIO

from .curve_graph import CurveGraph, Stability, arithmetic_genus, classify_stability
from .dot import curve_dot, tree_dot
from .errors import (
    AzimuthError,
    InadmissibleCurve,
    IncompleteOracle,
    InvariantViolation,
    MalformedInput,
    SepcanonError,
)
from .hyperelliptic import classify_curve, required_oracle_keys
from .separators import (
    StarSep,
    maximal_polyseparators,
    separation_tree,
    structure,
    two_separation,
)
from .sepcanonical import bridge_system, full_report, twisted_report
from .serialize import dumps, load_azimuths, load_curve, load_oracle

COMMANDS = ("analyze", "seps", "biseps", "polyseps", "components", "tree", "classify", "sepcanon", "bridge", "dot")

EXIT_OK, EXIT_INTERNAL, EXIT_MALFORMED, EXIT_INCOMPLETE, EXIT_INADMISSIBLE = 0, 1, 2, 3, 4


@dataclass
class AnalysisRequest:
    command: str
    curve_path: str | None = None
    oracle_path: str | None = None
    azimuth_path: str | None = None
    output_format: str = "json"
    left: str | None = None
    right: str | None = None
    twist: str | None = None


def _star_json(st: StarSep) -> dict:
    return {"id": st.id, "kind": st.kind.value, "edges": list(st.edges), "left": sorted(st.left), "right": sorted(st.right)}


def _components_json(g: CurveGraph) -> list[dict]:
    return [
        {
            "id": c.id,
            "vertices": sorted(c.vertex_set),
            "genus": c.genus,
            "unimarks": [{"halfEdge": u.half_edge, "star": u.star.id} for u in c.unimarks],
            "bimarks": [{"key": b.key, "star": b.star.id, "proper": b.proper} for b in c.bimarks],
        }
        for c in two_separation(g)
    ]


def _tree_json(g: CurveGraph) -> dict:
    t = separation_tree(g)
    return {
        "vertices": list(t.vertices),
        "edges": [{"id": e.id, "kind": e.kind.value, "ends": list(e.ends)} for e in t.edges],
        "members": {v: list(ms) for v, ms in t.members},
    }


def _table(headers: list[str], rows: list[list]) -> str:
    cells = [headers] + [[("-" if x is None else str(x)) for x in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def _need_curve(req: AnalysisRequest) -> CurveGraph:
    if not req.curve_path:
        raise MalformedInput(f"{req.command} needs a curve file")
    return load_curve(req.curve_path)


def _inputs(req: AnalysisRequest):
    g = _need_curve(req)
    oracle = load_oracle(req.oracle_path) if req.oracle_path else None
    middle = load_azimuths(req.azimuth_path) if req.azimuth_path else None
    return g, oracle, middle


def _cmd_analyze(req: AnalysisRequest) -> tuple[dict, str]:
    g = _need_curve(req)
    s = structure(g)
    out = {
        "arithmeticGenus": arithmetic_genus(g),
        "stability": classify_stability(g).value,
        "semicompact": s.is_semicompact(),
        "seps": [st.id for st in s.seps],
        "biseps": [st.id for st in s.biseps],
        "polyseparators": [p.id for p in s.polyseparators],
        "components": _components_json(g),
        "halfEdges": sorted(h for e in g.edges for h in e.half_edges),
    }
    if classify_stability(g) is not Stability.UNSTABLE and arithmetic_genus(g) >= 2:
        out["oracleKeys"] = required_oracle_keys(g)
    rows = [[c["id"], c["genus"], ",".join(u["halfEdge"] for u in c["unimarks"]),
             " ".join(b["key"] for b in c["bimarks"])] for c in out["components"]]
    text = (
        f"genus {out['arithmeticGenus']}, {out['stability']}, "
        f"{'semicompact' if out['semicompact'] else 'not semicompact'}\n"
        + _table(["component", "genus", "unimarks", "bimarks"], rows)
    )
    return out, text


def _cmd_seps(req):
    g = _need_curve(req)
    stars = structure(g).seps
    return [_star_json(st) for st in stars], _table(
        ["sep", "left", "right"], [[st.id, ",".join(sorted(st.left)), ",".join(sorted(st.right))] for st in stars]
    )


def _cmd_biseps(req):
    g = _need_curve(req)
    stars = structure(g).biseps
    return [_star_json(st) for st in stars], _table(
        ["bisep", "left", "right"], [[st.id, ",".join(sorted(st.left)), ",".join(sorted(st.right))] for st in stars]
    )


def _cmd_polyseps(req):
    g = _need_curve(req)
    ps = maximal_polyseparators(g)
    data = [
        {"id": p.id, "degree": p.degree, "proper": p.is_proper, "cyclicOrder": list(p.edges),
         "parts": [sorted(x) for x in p.parts]}
        for p in ps
    ]
    rows = [[p.id, p.degree, " | ".join(",".join(sorted(x)) for x in p.parts)] for p in ps]
    return data, _table(["polyseparator", "degree", "parts"], rows)


def _cmd_components(req):
    g = _need_curve(req)
    data = _components_json(g)
    rows = [[c["id"], c["genus"], len(c["unimarks"]), len(c["bimarks"])] for c in data]
    return data, _table(["component", "genus", "unimarks", "bimarks"], rows)


def _cmd_tree(req):
    g = _need_curve(req)
    data = _tree_json(g)
    if req.output_format == "dot":
        return data, tree_dot(separation_tree(g))
    rows = [[e["id"], e["kind"], " -- ".join(e["ends"])] for e in data["edges"]]
    return data, _table(["edge", "kind", "joins"], rows)


def _cmd_classify(req):
    g, oracle, middle = _inputs(req)
    if oracle is None:
        raise IncompleteOracle(required_oracle_keys(g) or ["--oracle"])
    v = classify_curve(g, oracle, middle)
    data = {
        "overall": v.overall.value,
        "perComponent": {k: x.value for k, x in v.per_component},
        "witnesses": [{"kind": w.kind, "id": w.id, "reason": w.reason} for w in v.witnesses],
    }
    if v.stable_model is not None:
        data["stableModel"] = sorted(v.stable_model.edge_ids)
    text = f"{v.overall.value}\n" + _table(["component", "verdict"], [[k, x.value] for k, x in v.per_component])
    for w in v.witnesses:
        text += f"witness: {w.kind} {w.id} ({w.reason})\n"
    return data, text


def _parse_twist(text: str) -> dict[str, int]:
    out = {}
    for item in text.split(","):
        vid, _, deg = item.partition("=")
        try:
            out[vid.strip()] = int(deg)
        except ValueError as exc:
            raise MalformedInput(f"bad twist entry {item!r}; expected VERTEX=DEGREE") from exc
    return out


def _cmd_sepcanon(req):
    g, oracle, middle = _inputs(req)
    if req.twist:
        rep = twisted_report(g, _parse_twist(req.twist))
    else:
        if oracle is None:
            raise IncompleteOracle(required_oracle_keys(g) or ["--oracle"])
        rep = full_report(g, oracle, middle)
    data = rep.to_json()
    rows = [
        [c.component, c.genus, c.twist.degree, c.bundle_degree, c.h0_ambient, c.residue_conditions,
         c.azimuthal_conditions, c.system_dim, c.verdict.value if c.verdict else None]
        for c in rep.components
    ]
    text = _table(["component", "g", "twist", "bundle", "h0", "res", "azi", "dim", "verdict"], rows)
    a = rep.accounting
    text += (
        f"genus accounting: {a.component_genera} = {a.arithmetic_genus} - {a.blown_edges} + ({a.components} - 1)"
        f" [{'ok' if a.holds else 'FAILS'}]\n"
    )
    for b in rep.bridges:
        text += f"bridge {b.edge}: {' '.join(f'X0^{i}X1^{j}' for i, j in b.monomials)}\n"
    return data, text


def _cmd_bridge(req):
    flags = {}
    for name in ("left", "right"):
        val = getattr(req, name)
        if val not in ("hyp", "non"):
            raise MalformedInput(f"--{name} must be 'hyp' or 'non'")
        flags[name] = val == "hyp"
    mons = bridge_system(flags["left"], flags["right"])
    return [list(m) for m in mons], " ".join(f"X0^{i}X1^{j}" for i, j in mons) + "\n"


def _cmd_dot(req):
    g = _need_curve(req)
    text = curve_dot(g)
    return text, text


_HANDLERS: dict[str, Callable[[AnalysisRequest], tuple[object, str]]] = {
    "analyze": _cmd_analyze,
    "seps": _cmd_seps,
    "biseps": _cmd_biseps,
    "polyseps": _cmd_polyseps,
    "components": _cmd_components,
    "tree": _cmd_tree,
    "classify": _cmd_classify,
    "sepcanon": _cmd_sepcanon,
    "bridge": _cmd_bridge,
    "dot": _cmd_dot,
}


def run(req: AnalysisRequest, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        if req.output_format == "dot" and req.command not in ("dot", "tree"):
            if req.command == "bridge":
                raise MalformedInput("--format dot needs a curve")
            out.write(curve_dot(_need_curve(req)))
            return EXIT_OK
        data, text = _HANDLERS[req.command](req)
        if req.command == "dot" or req.output_format != "json":
            out.write(text)
        else:
            out.write(dumps(data) + "\n")
        return EXIT_OK
    except IncompleteOracle as exc:
        err.write("incomplete oracle; missing keys:\n")
        for key in exc.missing:
            err.write(f"  {key}\n")
        return EXIT_INCOMPLETE
    except InadmissibleCurve as exc:
        err.write(f"inadmissible curve: {exc}\n")
        return EXIT_INADMISSIBLE
    except InvariantViolation as exc:
        err.write(f"internal invariant violated: {exc}\n")
        return EXIT_INTERNAL
    except (MalformedInput, AzimuthError) as exc:
        err.write(f"malformed input: {exc}\n")
        return EXIT_MALFORMED
    except SepcanonError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_MALFORMED


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sepcanon", description="Separation calculus of nodal curves.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("curve", nargs="?", help="curve JSON file (not needed for 'bridge')")
    p.add_argument("--oracle", help="moduli oracle JSON keyed by ids from 'analyze'")
    p.add_argument("--azimuths", help="middle azimuths JSON keyed by bisep id")
    p.add_argument("--format", choices=("json", "table", "dot"), default="json")
    p.add_argument("--left", choices=("hyp", "non"), help="bridge: left side hyperelliptic?")
    p.add_argument("--right", choices=("hyp", "non"), help="bridge: right side hyperelliptic?")
    p.add_argument("--twist", help="sepcanon: smooth twist as VERTEX=DEGREE[,...]; marks become non-hyperelliptic")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    req = AnalysisRequest(
        args.command, args.curve, args.oracle, args.azimuths, args.format, args.left, args.right, args.twist
    )
    return run(req)


if __name__ == "__main__":
    sys.exit(main())
