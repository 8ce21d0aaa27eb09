"""Sepcanonical twists, degree and dimension bookkeeping, very-ampleness dispatch.

Dimensions are counted, never computed from sections: on a 2-component Y of
genus g with twist divisor tau,

    h0       = g                 if deg tau = 0
             = g - 1 + deg tau   otherwise (Riemann-Roch, h1 = 0)
    residues = max(0, U + B - 1) (one condition per mark, minus the residue theorem)
    azimuths = number of co-hyperelliptic bimarks
    dim      = h0 - residues - azimuths
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from itertools import combinations
from typing import Iterable, Mapping

from .azimuths import Azimuth
from .curve_graph import (
    CurveGraph,
    Multidegree,
    arithmetic_genus,
    component_id,
    stable_model,
    subcurve_degree,
)
from .errors import (
    DegenerateSystem,
    IncompleteOracle,
    InvariantViolation,
    MalformedInput,
    SeparableCurve,
)
from .hyperelliptic import (
    HYPERELLIPTIC_LIKE,
    ClassificationVerdict,
    ComponentVerdict,
    InsepKind,
    MiddleAzimuthData,
    ModuliOracle,
    Overall,
    _Facts,
    _kind,
    admissible_model,
    classify_curve,
    component_two_inseparable,
    induced_azimuthal_marking,
    side_hyperelliptic,
)
from .marking import AzimuthalMarking, BimarkDesignation, UnimarkDesignation
from .separators import (
    Side,
    StarSep,
    TwoComponent,
    find_biseps,
    find_seps,
    is_two_inseparable,
    relative_two_inseparable,
    structure,
    theta_separation,
    two_separation,
)

__all__ = [
    "AzimuthalMarking",
    "BimarkDesignation",
    "UnimarkDesignation",
    "TwistDivisor",
    "ComponentReport",
    "GenusAccounting",
    "BridgeReport",
    "SepcanonicalReport",
    "CertifiedZero",
    "HypothesesFail",
    "Ampleness",
    "DispatchVerdict",
    "twist_divisor",
    "system_dimension",
    "deg0_vanishing_certificate",
    "very_ampleness_dispatch",
    "bridge_system",
    "full_report",
    "twisted_report",
]


@dataclass(frozen=True)
class TwistDivisor:
    coefficients: tuple[tuple[str, int], ...] = ()

    @property
    def degree(self) -> int:
        return sum(c for _, c in self.coefficients)

    def as_dict(self) -> dict[str, int]:
        return dict(self.coefficients)


def _mark_points(Y: TwoComponent | CurveGraph) -> set[str]:
    g = Y.subgraph if isinstance(Y, TwoComponent) else Y
    return {h for h, _ in g.marks}


def _subgraph(Y: TwoComponent | CurveGraph) -> CurveGraph:
    return Y.subgraph if isinstance(Y, TwoComponent) else Y


def twist_divisor(Y: TwoComponent | CurveGraph, xi: AzimuthalMarking) -> TwistDivisor:
    """n(p) at each unimark (2 if co-hyperelliptic, else 3) plus 2 at both points of each bimark."""
    on_y = _mark_points(Y)
    off = [p for p in xi.points() if p not in on_y]
    if off:
        raise MalformedInput(f"marks {off} do not lie on the component")
    coeffs = [(u.half_edge, u.multiplicity) for u in xi.unimarks]
    for b in xi.bimarks:
        coeffs.extend((h, 2) for h in b.half_edges)
    return TwistDivisor(tuple(sorted(coeffs)))


@dataclass(frozen=True)
class ComponentReport:
    component: str
    genus: int
    marking: AzimuthalMarking
    twist: TwistDivisor
    bundle_degree: int
    h0_ambient: int
    residue_conditions: int
    azimuthal_conditions: int
    system_dim: int
    kind: InsepKind | None = None
    verdict: ComponentVerdict | None = None

    def to_json(self) -> dict:
        return {
            "component": self.component,
            "genus": self.genus,
            "twist": self.twist.as_dict(),
            "twistDegree": self.twist.degree,
            "bundleDegree": self.bundle_degree,
            "h0Ambient": self.h0_ambient,
            "residueConditions": self.residue_conditions,
            "azimuthalConditions": self.azimuthal_conditions,
            "systemDim": self.system_dim,
            "kind": self.kind.value if self.kind else None,
            "verdict": self.verdict.value if self.verdict else None,
            "unimarks": [
                {"halfEdge": u.half_edge, "coHyperelliptic": u.co_hyperelliptic, "multiplicity": u.multiplicity}
                for u in self.marking.unimarks
            ],
            "bimarks": [
                {
                    "halfEdges": list(b.half_edges),
                    "coHyperelliptic": b.co_hyperelliptic,
                    "azimuth": b.azimuth.to_json() if b.azimuth else None,
                }
                for b in self.marking.bimarks
            ],
        }


def system_dimension(
    Y: TwoComponent | CurveGraph,
    xi: AzimuthalMarking,
    extra: Mapping[str, int] | None = None,
) -> ComponentReport:
    """Degree and dimension count for the sepcanonical system on one component.

    ``extra`` is an additional smooth twist (vertex id -> degree).  When it
    meets the component, poles there absorb the residue-theorem relation, so
    every mark costs one residue condition.
    """
    sub = _subgraph(Y)
    if isinstance(Y, TwoComponent):
        cid, g = Y.id, Y.genus
    elif sub.is_connected():
        cid, g = component_id(sub.vertex_ids), arithmetic_genus(sub)
    else:
        raise MalformedInput("component must be connected")
    twist = twist_divisor(Y, xi)
    extra = {v: d for v, d in (extra or {}).items() if v in set(sub.vertex_ids) and d}
    if extra:
        twist = TwistDivisor(twist.coefficients + tuple(sorted((f"a@{v}", d) for v, d in extra.items())))
    deg = twist.degree
    h0 = g if deg == 0 else g - 1 + deg
    marks = len(xi.unimarks) + len(xi.bimarks)
    residues = marks if extra else max(0, marks - 1)
    azimuthal = sum(1 for b in xi.bimarks if b.co_hyperelliptic)
    dim = h0 - residues - azimuthal
    if dim < 0:
        raise DegenerateSystem(f"{cid}: negative system dimension {dim}")
    return ComponentReport(cid, g, xi, twist, 2 * g - 2 + deg, h0, residues, azimuthal, dim)


# -- degree-0 vanishing --------------------------------------------------------


@dataclass(frozen=True)
class CertifiedZero:
    """Every section of a nontrivial L with this multidegree vanishes.

    Nontriviality of L is the caller's assertion; a multidegree alone cannot decide it.
    """

    conditional_on_nontrivial: bool = True


@dataclass(frozen=True)
class HypothesesFail:
    kind: str  # "total", "subcurve" or "bisep_side"
    vertices: frozenset[str]
    degree: int
    bound: int
    bisep: str | None = None


def deg0_vanishing_certificate(
    g: CurveGraph, L: Multidegree, biseps: Iterable[StarSep] | None = None
) -> CertifiedZero | HypothesesFail:
    """Check total degree <= 0, degree <= 2 on every subcurve, <= 1 on each bisep side."""
    if not g.is_connected() or find_seps(g):
        raise SeparableCurve("the vanishing criterion needs an inseparable curve")
    unknown = set(L) - set(g.vertex_ids)
    if unknown:
        raise MalformedInput(f"multidegree names unknown vertices {sorted(unknown)}")
    vids = g.vertex_ids
    total = subcurve_degree(L, vids)
    if total > 0:
        return HypothesesFail("total", frozenset(vids), total, 0)
    for k in range(1, len(vids)):
        for subset in combinations(vids, k):
            d = subcurve_degree(L, subset)
            if d > 2:
                return HypothesesFail("subcurve", frozenset(subset), d, 2)
    for b in find_biseps(g) if biseps is None else biseps:
        for side in (b.left, b.right):
            d = subcurve_degree(L, side)
            if d > 1:
                return HypothesesFail("bisep_side", frozenset(side), d, 1, b.id)
    return CertifiedZero()


# -- very-ampleness dispatch ---------------------------------------------------


class Ampleness(str, enum.Enum):
    VERY_AMPLE = "VeryAmple"
    VERY_AMPLE_OFF_A = "VeryAmpleOffA"
    HYPERELLIPTIC_EXCEPTION = "HyperellipticException"
    NOT_APPLICABLE = "NotApplicable"

    @property
    def strength(self) -> int:
        return {"VeryAmple": 3, "VeryAmpleOffA": 2, "HyperellipticException": 1, "NotApplicable": 0}[self.value]


@dataclass(frozen=True)
class DispatchVerdict:
    outcome: Ampleness
    lemma: str | None


def very_ampleness_dispatch(
    g: CurveGraph,
    a: Mapping[str, int],
    oracle: ModuliOracle | None = None,
    pair_key: str | None = None,
    azimuth: Azimuth | None = None,
) -> DispatchVerdict:
    """Which very-ampleness statement applies to omega(a).

    ``a`` maps vertex ids to the degree of the twist there (points are smooth
    and distinct from the nodes).  For degree 2, ``pair_key`` names the pair in
    ``oracle.hyperelliptic_divisor``; ``azimuth`` constrains the pair to that
    smoothing direction.
    """
    unknown = set(a) - set(g.vertex_ids)
    if unknown:
        raise MalformedInput(f"twist names unknown vertices {sorted(unknown)}")
    if any(d < 0 for d in a.values()):
        raise MalformedInput("twist must be effective")
    deg = sum(a.values())
    support = [v for v, d in a.items() if d > 0]
    if deg < 2 or not g.is_connected():
        return DispatchVerdict(Ampleness.NOT_APPLICABLE, None)
    rel = relative_two_inseparable(g, support)
    two_insep = is_two_inseparable(g)
    if deg >= 3:
        if two_insep:
            return DispatchVerdict(Ampleness.VERY_AMPLE, "twist of degree >= 3 on a 2-inseparable curve")
        if rel.inseparable and rel.two_inseparable:
            return DispatchVerdict(
                Ampleness.VERY_AMPLE, "twist of degree >= 3, curve 2-inseparable relative to the twist"
            )
        return DispatchVerdict(Ampleness.NOT_APPLICABLE, None)
    if not two_insep:
        if rel.inseparable and rel.two_inseparable:
            return DispatchVerdict(
                Ampleness.VERY_AMPLE_OFF_A, "degree-2 twist, curve 2-inseparable relative to the twist"
            )
        return DispatchVerdict(Ampleness.NOT_APPLICABLE, None)
    facts = _Facts(oracle)
    kind = _kind(g, component_id(g.vertex_ids), facts)
    hyperelliptic_pair = False
    if kind in HYPERELLIPTIC_LIKE:
        key = pair_key or "a"
        hyperelliptic_pair = facts.divisor(key)
    facts.raise_if_missing()
    if not hyperelliptic_pair:
        return DispatchVerdict(Ampleness.VERY_AMPLE_OFF_A, "degree-2 twist on a 2-inseparable curve")
    if azimuth is not None and azimuth != facts.oracle.hyperelliptic_azimuth[pair_key or "a"]:
        return DispatchVerdict(
            Ampleness.VERY_AMPLE_OFF_A, "azimuth constraint differs from the hyperelliptic azimuth"
        )
    return DispatchVerdict(Ampleness.HYPERELLIPTIC_EXCEPTION, "hyperelliptic pair on a 2-inseparable curve")


# -- bridges ---------------------------------------------------------------------

_BRIDGE_MONOMIALS = {
    (True, True): [(2, 0), (0, 2)],
    (True, False): [(3, 0), (2, 1), (0, 3)],
    (False, True): [(3, 0), (1, 2), (0, 3)],
    (False, False): [(4, 0), (3, 1), (1, 3), (0, 4)],
}


def bridge_system(left_hyp: bool, right_hyp: bool) -> list[tuple[int, int]]:
    """Exponents (i, j) of the monomials X0^i X1^j spanning the system on a bridge component."""
    return list(_BRIDGE_MONOMIALS[(bool(left_hyp), bool(right_hyp))])


# -- reports -----------------------------------------------------------------------


@dataclass(frozen=True)
class GenusAccounting:
    component_genera: int  # sum of g_Y
    arithmetic_genus: int
    blown_edges: int
    components: int

    @property
    def holds(self) -> bool:
        return self.component_genera == self.arithmetic_genus - self.blown_edges + self.components - 1


def genus_accounting(g: CurveGraph, blown: Iterable[str]) -> GenusAccounting:
    blown = set(blown)
    parts = g.without_edges(blown)
    comps = parts.components()
    total = sum(arithmetic_genus(parts.restrict(c)) for c in comps)
    return GenusAccounting(total, arithmetic_genus(g), len(blown), len(comps))


@dataclass(frozen=True)
class BridgeReport:
    edge: str
    vertices: tuple[str, ...]
    separating: bool
    left_hyperelliptic: bool
    right_hyperelliptic: bool
    monomials: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class SepcanonicalReport:
    components: tuple[ComponentReport, ...]
    accounting: GenusAccounting
    verdict: ClassificationVerdict | None = None
    bridges: tuple[BridgeReport, ...] = ()
    stable_model: CurveGraph | None = None

    def component(self, cid: str) -> ComponentReport:
        for c in self.components:
            if c.component == cid:
                return c
        raise KeyError(cid)

    def to_json(self) -> dict:
        a = self.accounting
        out = {
            "components": [c.to_json() for c in self.components],
            "genusAccounting": {
                "sumComponentGenera": a.component_genera,
                "arithmeticGenus": a.arithmetic_genus,
                "blownEdges": a.blown_edges,
                "components": a.components,
                "holds": a.holds,
            },
            "bridges": [
                {
                    "edge": b.edge,
                    "vertices": list(b.vertices),
                    "separating": b.separating,
                    "leftHyperelliptic": b.left_hyperelliptic,
                    "rightHyperelliptic": b.right_hyperelliptic,
                    "monomials": [list(m) for m in b.monomials],
                }
                for b in self.bridges
            ],
        }
        if self.verdict is not None:
            out["overall"] = self.verdict.overall.value
            out["witnesses"] = [
                {"kind": w.kind, "id": w.id, "reason": w.reason} for w in self.verdict.witnesses
            ]
        return out


def _blown_edges(g: CurveGraph, theta) -> set[str]:
    if theta is None:
        s = structure(g)
        return {e for st in s.seps + s.adjacent_stars for e in st.edges}
    return {e for st in theta for e in st.edges}


def _bridge_reports(h: CurveGraph, bridges, o, m) -> tuple[BridgeReport, ...]:
    if not bridges:
        return ()
    seps = {st.edges[0]: st for st in find_seps(h)}
    out, missing = [], set()
    for br in bridges:
        if br.edge in seps:
            st = seps[br.edge]
            left = right = False
            for side in (Side.LEFT, Side.RIGHT):
                try:
                    val = side_hyperelliptic(h, st, side, None, o, m)
                except IncompleteOracle as exc:
                    missing.update(exc.missing)
                    continue
                if side is Side.LEFT:
                    left = val
                else:
                    right = val
            separating = True
        else:
            flag = (o or ModuliOracle()).bridges.get(br.edge)
            if flag is None:
                missing.add(f"bridges[{br.edge}].hyperelliptic")
            left = right = bool(flag)
            separating = False
        out.append(BridgeReport(br.edge, tuple(br.vertices), separating, left, right,
                                tuple(bridge_system(left, right))))
    if missing:
        raise IncompleteOracle(missing)
    return tuple(out)


def _known_kind(c: TwoComponent, oracle) -> InsepKind | None:
    """Kind of a 2-inseparable component, or None when the oracle does not settle it."""
    if not component_two_inseparable(c):
        return None
    facts = _Facts(oracle)
    kind = _kind(c.subgraph, c.id, facts)
    return None if facts.missing else kind


def full_report(
    g: CurveGraph,
    oracle: ModuliOracle | None = None,
    middle: MiddleAzimuthData | None = None,
    theta: Iterable[StarSep] | None = None,
) -> SepcanonicalReport:
    """Sepcanonical system of ``g`` (relative to ``theta``, default the 2-separation)."""
    h, contracted = admissible_model(g)
    bridges = stable_model(g)[1] if contracted else ()
    theta = None if theta is None else tuple(theta)
    verdict = classify_curve(h, oracle, middle)
    comps = two_separation(h) if theta is None else theta_separation(h, theta)
    per = dict(verdict.per_component)
    entries = []
    for c in comps:
        xi = induced_azimuthal_marking(h, theta, c, oracle, middle)
        rep = system_dimension(c, xi)
        kind = _known_kind(c, oracle)
        v = per.get(c.id)
        if v is None:  # coarser separation: inherit the global dichotomy
            hyper = verdict.overall is Overall.HYPERELLIPTIC
            v = ComponentVerdict.TWO_TO_ONE if hyper else ComponentVerdict.ESSENTIALLY_VERY_AMPLE
        rep = replace(rep, kind=kind, verdict=v)
        if v is ComponentVerdict.TWO_TO_ONE and rep.bundle_degree != 2 * (rep.system_dim - 1):
            raise InvariantViolation(f"{c.id}: degree identity fails on a hyperelliptic component")
        entries.append(rep)
    acc = genus_accounting(h, _blown_edges(h, theta))
    if not acc.holds:
        raise InvariantViolation(f"genus accounting fails: {acc}")
    return SepcanonicalReport(
        tuple(entries), acc, verdict, _bridge_reports(h, bridges, oracle, middle), h if contracted else None
    )


def twisted_report(g: CurveGraph, a: Mapping[str, int]) -> SepcanonicalReport:
    """omega(a)^sep: every mark treated as non-hyperelliptic, residue conditions only."""
    h, contracted = admissible_model(g)
    unknown = set(a) - set(h.vertex_ids)
    if unknown:
        raise MalformedInput(f"twist names unknown vertices {sorted(unknown)}")
    entries = []
    for c in two_separation(h):
        xi = AzimuthalMarking(
            tuple(UnimarkDesignation(u.half_edge, False, u.star.id) for u in c.unimarks),
            tuple(BimarkDesignation(b.half_edges, False, None, b.star.id) for b in c.bimarks),
        )
        entries.append(system_dimension(c, xi, a))
    acc = genus_accounting(h, _blown_edges(h, None))
    if not acc.holds:
        raise InvariantViolation(f"genus accounting fails: {acc}")
    return SepcanonicalReport(tuple(entries), acc, None, (), h if contracted else None)
