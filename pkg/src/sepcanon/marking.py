"""Azimuthal markings on a component: designated unimarks and bimarks."""

from __future__ import annotations

from dataclasses import dataclass

from .azimuths import Azimuth, is_regular
from .errors import MalformedInput


@dataclass(frozen=True)
class UnimarkDesignation:
    half_edge: str
    co_hyperelliptic: bool
    star: str | None = None

    @property
    def multiplicity(self) -> int:
        return 2 if self.co_hyperelliptic else 3


@dataclass(frozen=True)
class BimarkDesignation:
    half_edges: tuple[str, str]
    co_hyperelliptic: bool
    azimuth: Azimuth | None = None
    star: str | None = None

    def __post_init__(self):
        if self.co_hyperelliptic != (self.azimuth is not None):
            raise MalformedInput("a bimark carries an azimuth exactly when it is co-hyperelliptic")
        if self.azimuth is not None and not is_regular(self.azimuth):
            raise MalformedInput(f"bimark azimuth {self.azimuth} must be regular")

    @property
    def key(self) -> str:
        return ",".join(self.half_edges)


@dataclass(frozen=True)
class AzimuthalMarking:
    unimarks: tuple[UnimarkDesignation, ...] = ()
    bimarks: tuple[BimarkDesignation, ...] = ()

    def points(self) -> list[str]:
        pts = [u.half_edge for u in self.unimarks]
        for b in self.bimarks:
            pts.extend(b.half_edges)
        return pts

    def merged(self, other: "AzimuthalMarking | None") -> "AzimuthalMarking":
        if other is None:
            return self
        return AzimuthalMarking(self.unimarks + other.unimarks, self.bimarks + other.bimarks)

    def all_non_co_hyperelliptic(self) -> "AzimuthalMarking":
        """The marking used for twisted systems: every mark treated as non-hyperelliptic."""
        return AzimuthalMarking(
            tuple(UnimarkDesignation(u.half_edge, False, u.star) for u in self.unimarks),
            tuple(BimarkDesignation(b.half_edges, False, None, b.star) for b in self.bimarks),
        )
