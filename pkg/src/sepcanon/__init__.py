"""Separation calculus of nodal curves: seps, biseps, polyseparators,
2-components, azimuths, sepcanonical twists, and the hyperelliptic /
essentially-very-ample dichotomy."""

from .azimuths import Azimuth, AzimuthTriple, complete_triple, compose, induced_left_azimuth, is_regular
from .curve_graph import (
    CurveGraph,
    Edge,
    Stability,
    Subcurve,
    Vertex,
    arithmetic_genus,
    blowup,
    classify_stability,
    omega_degree,
    spines_and_base_locus,
    stable_model,
    subcurve_degree,
)
from .hyperelliptic import (
    ClassificationVerdict,
    InsepKind,
    ModuliOracle,
    classify_2inseparable,
    classify_curve,
    induced_azimuthal_marking,
    locally_hyperelliptic,
    semistable_reduction_note,
    side_hyperelliptic,
)
from .marking import AzimuthalMarking, BimarkDesignation, UnimarkDesignation
from .separators import (
    Polyseparator,
    SeparationTree,
    Side,
    StarSep,
    TwoComponent,
    adjacency_check,
    cyclic_arrangement,
    find_biseps,
    find_seps,
    is_semicompact_type,
    maximal_polyseparators,
    relative_two_inseparable,
    separation_tree,
    two_separation,
)
from .sepcanonical import (
    bridge_system,
    deg0_vanishing_certificate,
    full_report,
    system_dimension,
    twist_divisor,
    twisted_report,
    very_ampleness_dispatch,
)

__all__ = [
    "Azimuth",
    "AzimuthTriple",
    "complete_triple",
    "compose",
    "induced_left_azimuth",
    "is_regular",
    "CurveGraph",
    "Edge",
    "Stability",
    "Subcurve",
    "Vertex",
    "arithmetic_genus",
    "blowup",
    "classify_stability",
    "omega_degree",
    "spines_and_base_locus",
    "stable_model",
    "subcurve_degree",
    "ClassificationVerdict",
    "InsepKind",
    "ModuliOracle",
    "classify_2inseparable",
    "classify_curve",
    "induced_azimuthal_marking",
    "locally_hyperelliptic",
    "semistable_reduction_note",
    "side_hyperelliptic",
    "AzimuthalMarking",
    "BimarkDesignation",
    "UnimarkDesignation",
    "Polyseparator",
    "SeparationTree",
    "Side",
    "StarSep",
    "TwoComponent",
    "adjacency_check",
    "cyclic_arrangement",
    "find_biseps",
    "find_seps",
    "is_semicompact_type",
    "maximal_polyseparators",
    "relative_two_inseparable",
    "separation_tree",
    "two_separation",
    "bridge_system",
    "deg0_vanishing_certificate",
    "full_report",
    "system_dimension",
    "twist_divisor",
    "twisted_report",
    "very_ampleness_dispatch",
]
