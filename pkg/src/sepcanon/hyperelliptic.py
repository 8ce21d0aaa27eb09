"""Relative hyperellipticity and the hyperelliptic / very ample dichotomy.

Facts that depend on continuous moduli (is a component hyperelliptic, is a
marked point Weierstrass, is a marked pair a fibre of the g^1_2 and what is
its hyperelliptic azimuth, are the two halves of an interlace isomorphic)
come from a :class:`ModuliOracle`.  This module only propagates them along
the 2-separation.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .azimuths import Azimuth, compose, induced_left_azimuth, is_regular
from .curve_graph import (
    CurveGraph,
    Stability,
    arithmetic_genus,
    classify_stability,
    component_id,
    stable_model,
)
from .errors import (
    DisconnectedCurve,
    GenusTooLow,
    IncompleteOracle,
    MalformedInput,
    NotTwoInseparable,
    OracleConflict,
    UnstableCurve,
)
from .marking import AzimuthalMarking, BimarkDesignation, UnimarkDesignation
from .separators import (
    Bimark,
    Side,
    StarKind,
    StarSep,
    TwoComponent,
    Unimark,
    is_two_inseparable,
    structure,
    theta_separation,
    two_separation,
)

MiddleAzimuthData = Mapping[str, Azimuth]


@dataclass
class ModuliOracle:
    hyperelliptic: dict[str, bool] = field(default_factory=dict)  # 2-component id
    interlace: dict[str, bool] = field(default_factory=dict)  # 2-component id
    weierstrass: dict[str, bool] = field(default_factory=dict)  # unimark half-edge
    hyperelliptic_divisor: dict[str, bool] = field(default_factory=dict)  # bimark key
    hyperelliptic_azimuth: dict[str, Azimuth] = field(default_factory=dict)  # bimark key
    bridges: dict[str, bool] = field(default_factory=dict)  # contracted edge id

    def __post_init__(self):
        for key, z in self.hyperelliptic_azimuth.items():
            if not is_regular(z):
                raise OracleConflict(f"hyperelliptic azimuth at {key} must be regular, got {z}")

    @classmethod
    def from_json(cls, data: Mapping) -> "ModuliOracle":
        if not isinstance(data, Mapping):
            raise MalformedInput("oracle must be a JSON object")
        unknown = set(data) - {"components", "unimarks", "bimarks", "bridges"}
        if unknown:
            raise MalformedInput(f"unknown oracle sections {sorted(unknown)}")
        o = cls()

        def flag(entry, name, where):
            value = entry[name]
            if not isinstance(value, bool):
                raise MalformedInput(f"{where}.{name} must be true or false")
            return value

        for cid, entry in data.get("components", {}).items():
            for name in entry:
                if name == "hyperelliptic":
                    o.hyperelliptic[cid] = flag(entry, name, f"components[{cid}]")
                elif name == "interlace":
                    o.interlace[cid] = flag(entry, name, f"components[{cid}]")
                else:
                    raise MalformedInput(f"unknown field components[{cid}].{name}")
        for h, entry in data.get("unimarks", {}).items():
            if set(entry) - {"weierstrass"}:
                raise MalformedInput(f"unknown fields in unimarks[{h}]")
            if "weierstrass" in entry:
                o.weierstrass[h] = flag(entry, "weierstrass", f"unimarks[{h}]")
        for key, entry in data.get("bimarks", {}).items():
            if set(entry) - {"hyperelliptic", "azimuth"}:
                raise MalformedInput(f"unknown fields in bimarks[{key}]")
            if "hyperelliptic" in entry:
                o.hyperelliptic_divisor[key] = flag(entry, "hyperelliptic", f"bimarks[{key}]")
            if entry.get("azimuth") is not None:
                o.hyperelliptic_azimuth[key] = Azimuth.from_json(entry["azimuth"])
        for eid, entry in data.get("bridges", {}).items():
            o.bridges[eid] = flag(entry, "hyperelliptic", f"bridges[{eid}]")
        o.__post_init__()
        return o

    def to_json(self) -> dict:
        comps: dict[str, dict] = {}
        for cid, v in self.hyperelliptic.items():
            comps.setdefault(cid, {})["hyperelliptic"] = v
        for cid, v in self.interlace.items():
            comps.setdefault(cid, {})["interlace"] = v
        bimarks: dict[str, dict] = {}
        for k, v in self.hyperelliptic_divisor.items():
            bimarks.setdefault(k, {})["hyperelliptic"] = v
        for k, z in self.hyperelliptic_azimuth.items():
            bimarks.setdefault(k, {})["azimuth"] = z.to_json()
        return {
            "components": comps,
            "unimarks": {h: {"weierstrass": v} for h, v in self.weierstrass.items()},
            "bimarks": bimarks,
            "bridges": {e: {"hyperelliptic": v} for e, v in self.bridges.items()},
        }


def load_middle_azimuths(data: Mapping) -> dict[str, Azimuth]:
    if not isinstance(data, Mapping):
        raise MalformedInput("azimuth file must be a JSON object keyed by bisep id")
    return {k: Azimuth.from_json(v) for k, v in data.items()}


class InsepKind(str, enum.Enum):
    VERY_AMPLE = "VeryAmple"
    IRREDUCIBLE_HYPERELLIPTIC = "IrreducibleHyperelliptic"
    INTERLACE = "Interlace"
    LOW_GENUS = "LowGenus"


HYPERELLIPTIC_LIKE = frozenset(
    {InsepKind.IRREDUCIBLE_HYPERELLIPTIC, InsepKind.INTERLACE, InsepKind.LOW_GENUS}
)


class Overall(str, enum.Enum):
    HYPERELLIPTIC = "Hyperelliptic"
    NOT_HYPERELLIPTIC = "NotHyperelliptic"


class ComponentVerdict(str, enum.Enum):
    ESSENTIALLY_VERY_AMPLE = "EssentiallyVeryAmple"
    TWO_TO_ONE = "TwoToOneOntoRationalNormalCurve"


@dataclass(frozen=True)
class Witness:
    kind: str
    id: str
    reason: str


@dataclass(frozen=True)
class ClassificationVerdict:
    overall: Overall
    per_component: tuple[tuple[str, ComponentVerdict], ...]
    witnesses: tuple[Witness, ...] = ()
    stable_model: CurveGraph | None = None  # set when the input was strictly semistable

    def component(self, cid: str) -> ComponentVerdict:
        return dict(self.per_component)[cid]


def is_interlace_shaped(g: CurveGraph) -> bool:
    return (
        len(g.vertices) == 2
        and all(v.genus == 0 for v in g.vertices)
        and len(g.edges) >= 3
        and all(not e.is_loop for e in g.edges)
    )


# -- oracle access with missing-key bookkeeping ---------------------------------


class _Facts:
    """Oracle reader that records every missing key instead of failing early."""

    def __init__(self, oracle: ModuliOracle | None, middle: MiddleAzimuthData | None = None):
        self.oracle = oracle or ModuliOracle()
        self.middle = dict(middle or {})
        self.missing: set[str] = set()

    def _get(self, table, key, label):
        if key in table:
            return table[key]
        self.missing.add(label)
        return None

    def component_flag(self, name: str, cid: str) -> bool:
        table = self.oracle.hyperelliptic if name == "hyperelliptic" else self.oracle.interlace
        return bool(self._get(table, cid, f"components[{cid}].{name}"))

    def weierstrass(self, h: str) -> bool:
        return bool(self._get(self.oracle.weierstrass, h, f"unimarks[{h}].weierstrass"))

    def divisor(self, key: str) -> bool:
        flag = self._get(self.oracle.hyperelliptic_divisor, key, f"bimarks[{key}].hyperelliptic")
        if flag:
            self._get(self.oracle.hyperelliptic_azimuth, key, f"bimarks[{key}].azimuth")
        return bool(flag)

    def hyp_azimuth(self, key: str) -> Azimuth | None:
        return self._get(self.oracle.hyperelliptic_azimuth, key, f"bimarks[{key}].azimuth")

    def middle_azimuth(self, bisep: str) -> Azimuth | None:
        return self._get(self.middle, bisep, f"azimuths[{bisep}]")

    def bridge(self, eid: str) -> bool:
        return bool(self._get(self.oracle.bridges, eid, f"bridges[{eid}].hyperelliptic"))

    def raise_if_missing(self) -> None:
        if self.missing:
            raise IncompleteOracle(self.missing)


def _kind(g: CurveGraph, cid: str, facts: _Facts) -> InsepKind:
    if not is_two_inseparable(g):
        raise NotTwoInseparable(f"{cid} is not 2-inseparable")
    pa = arithmetic_genus(g)
    if pa <= 1:
        return InsepKind.LOW_GENUS
    o = facts.oracle
    if is_interlace_shaped(g):
        if len(g.edges) == 3:
            # any two 3-pointed lines are isomorphic
            if o.interlace.get(cid) is False:
                raise OracleConflict(f"{cid} is a 3-interlace, which is always a true interlace")
            return InsepKind.INTERLACE
        return InsepKind.INTERLACE if facts.component_flag("interlace", cid) else InsepKind.VERY_AMPLE
    if len(g.vertices) == 1:
        if pa == 2:
            if o.hyperelliptic.get(cid) is False:
                raise OracleConflict(f"{cid} has genus 2, which is always hyperelliptic")
            return InsepKind.IRREDUCIBLE_HYPERELLIPTIC
        if facts.component_flag("hyperelliptic", cid):
            return InsepKind.IRREDUCIBLE_HYPERELLIPTIC
        return InsepKind.VERY_AMPLE
    return InsepKind.VERY_AMPLE


def classify_2inseparable(g: CurveGraph, o: ModuliOracle | None = None, comp_id: str | None = None) -> InsepKind:
    """Irreducible hyperelliptic, interlace, low genus, or canonically very ample."""
    if not g.is_connected():
        raise DisconnectedCurve("classification needs a connected curve")
    if classify_stability(g) is Stability.UNSTABLE:
        raise UnstableCurve("classification needs a semistable curve")
    facts = _Facts(o)
    kind = _kind(g, comp_id or component_id(g.vertex_ids), facts)
    facts.raise_if_missing()
    return kind


def _find_mark(comp: TwoComponent, mark) -> Unimark | Bimark:
    if isinstance(mark, (Unimark, Bimark)):
        if mark in comp.unimarks or mark in comp.bimarks:
            return mark
    else:
        key = mark if isinstance(mark, str) else ",".join(mark)
        for u in comp.unimarks:
            if u.half_edge == key:
                return u
        for b in comp.bimarks:
            if b.key == key or set(b.half_edges) == set(key.split(",")):
                return b
    raise MalformedInput(f"mark {mark!r} is not on component {comp.id}")


def component_two_inseparable(comp: TwoComponent) -> bool:
    """Whether the bare curve of ``comp`` is connected and 2-inseparable."""
    return comp.pieces == 1 and is_two_inseparable(comp.subgraph)


def _local(comp: TwoComponent, mark: Unimark | Bimark, facts: _Facts) -> bool:
    if not component_two_inseparable(comp):
        return False
    if _kind(comp.subgraph, comp.id, facts) not in HYPERELLIPTIC_LIKE:
        return False
    if isinstance(mark, Unimark):
        return facts.weierstrass(mark.half_edge)
    return facts.divisor(mark.key)


def locally_hyperelliptic(comp: TwoComponent, mark, o: ModuliOracle | None = None) -> bool:
    """Whether (comp, mark) is a hyperelliptic pair."""
    m = _find_mark(comp, mark)
    facts = _Facts(o)
    result = _local(comp, m, facts)
    facts.raise_if_missing()
    return result


# -- propagation over the 2-separation -------------------------------------------


class _Context:
    def __init__(self, g: CurveGraph, facts: _Facts):
        self.g = g
        self.facts = facts
        self.s = structure(g)
        self.comps = two_separation(g)
        self.by_point: dict[frozenset[str], tuple[TwoComponent, Unimark | Bimark]] = {}
        for c in self.comps:
            for u in c.unimarks:
                self.by_point[frozenset([u.half_edge])] = (c, u)
            for b in c.bimarks:
                self.by_point[frozenset(b.half_edges)] = (c, b)
        self.proper_edges = {e for p in self.s.polyseparators if p.is_proper for e in p.edges}

    def facing(self, star: StarSep, side: Side):
        """2-component and mark on ``side`` of ``star``, or None if not a single mark."""
        verts = star.side(side)
        halves = []
        for eid in star.edges:
            e = self.g.edge(eid)
            halves.extend(h for h, v in zip(e.half_edges, e.ends) if v in verts)
        return self.by_point.get(frozenset(halves))

    def local(self, star: StarSep, side: Side) -> bool:
        found = self.facing(star, side)
        if found is None:
            return False
        return _local(*found, self.facts)

    def bilateral(self, star: StarSep) -> bool:
        left = self.local(star, Side.LEFT)
        right = self.local(star, Side.RIGHT)
        return left and right

    def hyperelliptic_middle(self, star: StarSep) -> Azimuth | None:
        zs = []
        for side in (Side.LEFT, Side.RIGHT):
            found = self.facing(star, side)
            zs.append(self.facts.hyp_azimuth(found[1].key) if found else None)
        if None in zs:
            return None
        return compose(*zs)

    def azimuth_ok(self, star: StarSep) -> bool:
        given = self.facts.middle_azimuth(star.id)
        if not self.bilateral(star):
            return False
        expected = self.hyperelliptic_middle(star)
        return given is not None and expected is not None and given == expected

    def side_hyperelliptic(self, star: StarSep, side: Side, theta: Iterable[StarSep]) -> bool:
        verts = star.side(side)
        checks = [self.local(star, side)]
        for e in self.proper_edges:
            if set(self.g.edge(e).ends) <= verts:
                checks.append(False)
                break
        for t in theta:
            if t.edges == star.edges or not t.lies_in(self.g, verts):
                continue
            checks.append(self.bilateral(t))
            if t.kind is StarKind.BISEP:
                checks.append(self.azimuth_ok(t))
        return all(checks)


def admissible_model(g: CurveGraph) -> tuple[CurveGraph, bool]:
    """Check the curve is connected, semistable and of genus >= 2; return its stable model."""
    if not g.is_connected():
        raise DisconnectedCurve("classification needs a connected curve")
    stab = classify_stability(g)
    if stab is Stability.UNSTABLE:
        raise UnstableCurve("classification needs a semistable curve")
    if arithmetic_genus(g) < 2:
        raise GenusTooLow("classification needs arithmetic genus >= 2")
    if stab is Stability.SEMISTABLE:
        return stable_model(g)[0], True
    return g, False


def _resolve_star(g: CurveGraph, star: StarSep | str) -> StarSep:
    if isinstance(star, StarSep):
        return star
    s = structure(g)
    for x in s.seps + s.biseps:
        if x.id == star:
            return x
    raise MalformedInput(f"{star!r} is not a sep or bisep")


def side_hyperelliptic(
    g: CurveGraph,
    star: StarSep | str,
    side: Side,
    theta: Iterable[StarSep] | None = None,
    o: ModuliOracle | None = None,
    m: MiddleAzimuthData | None = None,
) -> bool:
    """Whether the ``side`` of ``star`` is hyperelliptic relative to ``theta``.

    Default ``theta`` is every sep plus every degree-2 maximal bisep.  A side
    carrying any edge of a proper polyseparator is never hyperelliptic.
    """
    star = _resolve_star(g, star)
    facts = _Facts(o, m)
    ctx = _Context(g, facts)
    theta = ctx.s.tree_stars if theta is None else tuple(theta)
    result = ctx.side_hyperelliptic(star, side, theta)
    facts.raise_if_missing()
    return result


def _component_of(g: CurveGraph, comps: list[TwoComponent], Y) -> TwoComponent:
    if isinstance(Y, TwoComponent):
        return Y
    for c in comps:
        if c.id == Y:
            return c
    raise MalformedInput(f"no component {Y!r}")


def _marking(ctx: _Context, comp: TwoComponent, theta, m_facts: _Facts) -> AzimuthalMarking:
    unis = []
    for u in comp.unimarks:
        co = ctx.side_hyperelliptic(u.star, Side.RIGHT, theta)
        unis.append(UnimarkDesignation(u.half_edge, co, u.star.id))
    bis = []
    for b in comp.bimarks:
        co = False if b.proper else ctx.side_hyperelliptic(b.star, Side.RIGHT, theta)
        az = None
        if co:
            middle = m_facts.middle_azimuth(b.star.id)
            found = ctx.facing(b.star, Side.RIGHT)
            hyp = m_facts.hyp_azimuth(found[1].key) if found else None
            if middle is None or hyp is None:
                co = False  # recorded as missing; never returned
            else:
                az = induced_left_azimuth(middle, hyp)
        bis.append(BimarkDesignation(b.half_edges, co, az, b.star.id))
    return AzimuthalMarking(tuple(unis), tuple(bis))


def induced_azimuthal_marking(
    g: CurveGraph,
    theta: Iterable[StarSep] | None,
    Y: TwoComponent | str,
    o: ModuliOracle | None = None,
    m: MiddleAzimuthData | None = None,
    base: AzimuthalMarking | None = None,
) -> AzimuthalMarking:
    """Marking induced on ``Y`` by the *-seps of ``theta``.

    With ``theta=None`` the components are the 2-components and every *-sep
    contributes a mark; biseps of proper polyseparators are never
    co-hyperelliptic.  A given ``theta`` selects the components of the
    ``theta``-separation and hyperellipticity relative to ``theta``.
    """
    facts = _Facts(o, m)
    ctx = _Context(g, facts)
    if theta is None:
        comps, rel = ctx.comps, ctx.s.tree_stars
    else:
        rel = tuple(theta)
        comps = theta_separation(g, rel)
    comp = _component_of(g, comps, Y)
    marking = _marking(ctx, comp, rel, facts)
    facts.raise_if_missing()
    return marking.merged(base)


# -- the dichotomy ---------------------------------------------------------------


def _check_oracle_consistency(ctx: _Context) -> None:
    o = ctx.facts.oracle
    unimark_owner = {}
    bimark_owner = {}
    for c in ctx.comps:
        for u in c.unimarks:
            unimark_owner[u.half_edge] = c
        for b in c.bimarks:
            bimark_owner[b.key] = c
    comp_ids = {c.id for c in ctx.comps}
    for cid in set(o.hyperelliptic) | set(o.interlace):
        if cid not in comp_ids:
            raise MalformedInput(f"oracle names unknown 2-component {cid!r}")
    for table, owners, what in (
        (o.weierstrass, unimark_owner, "unimark"),
        (o.hyperelliptic_divisor, bimark_owner, "bimark"),
    ):
        for key, flag in table.items():
            if key not in owners:
                raise MalformedInput(f"oracle names unknown {what} {key!r}")
            c = owners[key]
            if not flag:
                continue
            scratch = _Facts(o)
            ok = component_two_inseparable(c) and _kind(c.subgraph, c.id, scratch) in HYPERELLIPTIC_LIKE
            if not ok and not scratch.missing:
                raise OracleConflict(f"{what} {key} flagged hyperelliptic on non-hyperelliptic {c.id}")


def classify_curve(
    g: CurveGraph, o: ModuliOracle | None = None, m: MiddleAzimuthData | None = None
) -> ClassificationVerdict:
    """Hyperelliptic, or the sepcanonical system is essentially very ample.

    Strictly semistable curves are classified through their stable model.
    """
    h, contracted = admissible_model(g)
    facts = _Facts(o, m)
    ctx = _Context(h, facts)
    comps = ctx.comps
    witnesses: list[Witness] = []

    if not ctx.s.is_semicompact():
        for p in ctx.s.polyseparators:
            if p.is_proper:
                witnesses.append(Witness("polyseparator", p.id, "proper polyseparator"))
        hyper = False
    else:
        _check_oracle_consistency(ctx)
        kinds = {}
        for c in comps:
            if component_two_inseparable(c):
                kinds[c.id] = _kind(c.subgraph, c.id, facts)
        stars = ctx.s.tree_stars
        if not stars:
            (c,) = comps
            hyper = kinds.get(c.id) in HYPERELLIPTIC_LIKE
            if not hyper:
                witnesses.append(Witness("component", c.id, "2-inseparable and canonically very ample"))
        else:
            for st in stars:
                if not ctx.bilateral(st):
                    witnesses.append(Witness(st.kind.value, st.id, "not locally bilaterally hyperelliptic"))
                elif st.kind is StarKind.BISEP and not ctx.azimuth_ok(st):
                    witnesses.append(Witness(st.kind.value, st.id, "middle azimuth is not the hyperelliptic one"))
            for st in stars:
                if st.kind is StarKind.BISEP:
                    facts.middle_azimuth(st.id)
            hyper = not witnesses
        facts.raise_if_missing()

    verdict = ComponentVerdict.TWO_TO_ONE if hyper else ComponentVerdict.ESSENTIALLY_VERY_AMPLE
    return ClassificationVerdict(
        Overall.HYPERELLIPTIC if hyper else Overall.NOT_HYPERELLIPTIC,
        tuple((c.id, verdict) for c in comps),
        tuple(witnesses),
        h if contracted else None,
    )


def semistable_reduction_note(g: CurveGraph) -> CurveGraph:
    """Stable model of a semistable curve (bridges contracted to nodes)."""
    return stable_model(g)[0]


def required_oracle_keys(g: CurveGraph) -> list[str]:
    """Every key the two-phase workflow may ask for, assuming every candidate is hyperelliptic."""
    h, _ = admissible_model(g)
    s = structure(h)
    keys = []
    for c in two_separation(h):
        if not component_two_inseparable(c):
            continue
        sub = c.subgraph
        pa = arithmetic_genus(sub)
        if pa >= 2:
            if is_interlace_shaped(sub):
                if len(sub.edges) > 3:
                    keys.append(f"components[{c.id}].interlace")
            elif len(sub.vertices) == 1:
                if pa > 2:
                    keys.append(f"components[{c.id}].hyperelliptic")
            else:
                continue  # canonically very ample; its marks never matter
        keys.extend(f"unimarks[{u.half_edge}].weierstrass" for u in c.unimarks)
        for b in c.bimarks:
            if not b.proper:
                keys.append(f"bimarks[{b.key}].hyperelliptic")
                keys.append(f"bimarks[{b.key}].azimuth")
    keys.extend(f"azimuths[{b.id}]" for b in s.tree_stars if b.kind is StarKind.BISEP)
    return sorted(keys)
