"""Model strips, boundary intervals, gluings, and striped surfaces.

A striped surface is a finite family of model strips (each a horizontal band
``R x (a,b)`` together with finitely many open intervals on its two boundary
lines) plus a partial pairing of those intervals by orientation-flagged
identifications.  Everything downstream (leaf spaces, decomposition, the
homeomorphism engine) consumes the validated :class:`StripedSurface`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence


class Side(Enum):
    LOWER = "lower"
    UPPER = "upper"

    @property
    def other(self) -> "Side":
        return Side.UPPER if self is Side.LOWER else Side.LOWER


class Orientation(Enum):
    PRESERVING = "preserving"
    REVERSING = "reversing"

    @property
    def sign(self) -> int:
        return 1 if self is Orientation.PRESERVING else -1

    @property
    def flipped(self) -> "Orientation":
        if self is Orientation.PRESERVING:
            return Orientation.REVERSING
        return Orientation.PRESERVING


class SurfaceError(ValueError):
    """Validation failure; ``rule`` names the violated construction rule."""

    rule = "Invalid"

    def __init__(self, message: str):
        super().__init__(f"{self.rule}: {message}")
        self.message = message


class DuplicateIdError(SurfaceError):
    rule = "DuplicateId"


class UnknownIntervalRefError(SurfaceError):
    rule = "UnknownIntervalRef"


class DoubleGluingError(SurfaceError):
    rule = "DoubleGluing"


class SelfGluingError(SurfaceError):
    rule = "SelfGluing"


class SameSideGluingError(SurfaceError):
    rule = "SameSideGluing"


class BadEndpointsError(SurfaceError):
    rule = "BadEndpoints"


class BadIndexError(SurfaceError):
    rule = "BadIndex"


class DisconnectedSurfaceError(SurfaceError):
    rule = "DisconnectedSurface"


@dataclass(frozen=True)
class Interval:
    """One open boundary interval of a strip, ordered left-to-right by index.

    ``endpoints`` are optional extended reals (``-inf``/``+inf`` allowed); when
    absent, the interval with index k occupies ``(2k, 2k+1)``.
    """

    id: str
    side: Side
    index: int
    endpoints: tuple[float, float] | None = None

    def effective_endpoints(self) -> tuple[float, float]:
        if self.endpoints is not None:
            return self.endpoints
        return (2.0 * self.index, 2.0 * self.index + 1.0)


@dataclass(frozen=True)
class ModelStripSpec:
    """A model strip: band interior plus the interval lists of its two sides."""

    id: str
    lower: tuple[Interval, ...] = ()
    upper: tuple[Interval, ...] = ()

    def side_intervals(self, side: Side) -> tuple[Interval, ...]:
        return self.lower if side is Side.LOWER else self.upper


@dataclass(frozen=True)
class GluingSpec:
    """Identification of two boundary intervals, preserving or reversing x."""

    id: str
    first: str
    second: str
    orientation: Orientation

    def members(self) -> tuple[str, str]:
        return (self.first, self.second)

    def other(self, interval_id: str) -> str:
        if interval_id == self.first:
            return self.second
        if interval_id == self.second:
            return self.first
        raise KeyError(f"interval {interval_id!r} not part of gluing {self.id!r}")


SideEnd = tuple[str, Side]  # (strip id, side)


def strip(
    strip_id: str,
    lower: Sequence[str | tuple[str, tuple[float, float]]] = (),
    upper: Sequence[str | tuple[str, tuple[float, float]]] = (),
) -> ModelStripSpec:
    """Build a strip spec from interval ids (optionally with endpoints)."""

    def make(side: Side, items) -> tuple[Interval, ...]:
        out = []
        for k, item in enumerate(items):
            if isinstance(item, str):
                out.append(Interval(item, side, k))
            else:
                iid, ends = item
                out.append(Interval(iid, side, k, (float(ends[0]), float(ends[1]))))
        return tuple(out)

    return ModelStripSpec(strip_id, make(Side.LOWER, lower), make(Side.UPPER, upper))


def glue(
    gluing_id: str,
    first: str,
    second: str,
    orientation: Orientation | str = Orientation.PRESERVING,
) -> GluingSpec:
    if isinstance(orientation, str):
        orientation = Orientation(orientation)
    return GluingSpec(gluing_id, first, second, orientation)


@dataclass(frozen=True)
class StripedSurface:
    """A validated collection of strips and gluings.

    Immutable; construct through :func:`build_surface`, which enforces all
    invariants (unique ids, fixed-point-free partial involution of gluings,
    no same-side gluings, legal endpoint order).
    """

    strips: tuple[ModelStripSpec, ...]
    gluings: tuple[GluingSpec, ...]
    _strip_by_id: dict = field(init=False, repr=False, compare=False, hash=False)
    _interval_loc: dict = field(init=False, repr=False, compare=False, hash=False)
    _gluing_by_interval: dict = field(init=False, repr=False, compare=False, hash=False)
    _gluing_by_id: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        strip_by_id = {s.id: s for s in self.strips}
        interval_loc: dict[str, tuple[str, Side, int]] = {}
        for s in self.strips:
            for side in (Side.LOWER, Side.UPPER):
                for iv in s.side_intervals(side):
                    interval_loc[iv.id] = (s.id, side, iv.index)
        gluing_by_interval: dict[str, GluingSpec] = {}
        for g in self.gluings:
            gluing_by_interval[g.first] = g
            gluing_by_interval[g.second] = g
        object.__setattr__(self, "_strip_by_id", strip_by_id)
        object.__setattr__(self, "_interval_loc", interval_loc)
        object.__setattr__(self, "_gluing_by_interval", gluing_by_interval)
        object.__setattr__(self, "_gluing_by_id", {g.id: g for g in self.gluings})

    def strip(self, strip_id: str) -> ModelStripSpec:
        return self._strip_by_id[strip_id]

    def strip_ids(self) -> tuple[str, ...]:
        return tuple(s.id for s in self.strips)

    def interval(self, interval_id: str) -> Interval:
        strip_id, side, index = self._interval_loc[interval_id]
        return self._strip_by_id[strip_id].side_intervals(side)[index]

    def interval_location(self, interval_id: str) -> tuple[str, Side, int]:
        return self._interval_loc[interval_id]

    def side_end_of(self, interval_id: str) -> SideEnd:
        strip_id, side, _ = self._interval_loc[interval_id]
        return (strip_id, side)

    def gluing(self, gluing_id: str) -> GluingSpec:
        return self._gluing_by_id[gluing_id]

    def gluing_of(self, interval_id: str) -> GluingSpec | None:
        return self._gluing_by_interval.get(interval_id)

    def side_ends(self) -> list[SideEnd]:
        return [(s.id, side) for s in self.strips for side in (Side.LOWER, Side.UPPER)]

    def intervals(self) -> list[Interval]:
        return [
            iv
            for s in self.strips
            for side in (Side.LOWER, Side.UPPER)
            for iv in s.side_intervals(side)
        ]


def _check_side(strip_id: str, side: Side, intervals: tuple[Interval, ...]) -> None:
    for k, iv in enumerate(intervals):
        if iv.side is not side or iv.index != k:
            raise BadIndexError(
                f"interval {iv.id!r} on ({strip_id}, {side.value}) must carry "
                f"side={side.value}, index={k}"
            )
    for iv in intervals:
        if iv.endpoints is not None:
            x0, x1 = iv.endpoints
            if math.isnan(x0) or math.isnan(x1) or not x0 < x1:
                raise BadEndpointsError(
                    f"interval {iv.id!r} endpoints must satisfy x0 < x1, got ({x0}, {x1})"
                )
    explicit = [iv for iv in intervals if iv.endpoints is not None]
    if explicit and len(explicit) == len(intervals):
        for prev, nxt in zip(intervals, intervals[1:]):
            if not prev.endpoints[1] <= nxt.endpoints[0]:
                raise BadEndpointsError(
                    f"intervals {prev.id!r} and {nxt.id!r} on ({strip_id}, {side.value}) "
                    "overlap or are out of index order"
                )
    elif explicit and len(intervals) > 1:
        raise BadEndpointsError(
            f"({strip_id}, {side.value}): either all or no intervals of a side "
            "may carry explicit endpoints"
        )


def build_surface(
    strips: Iterable[ModelStripSpec], gluings: Iterable[GluingSpec] = ()
) -> StripedSurface:
    """Validate and assemble a striped surface.

    Raises a :class:`SurfaceError` subclass naming the violated rule:
    DuplicateId, UnknownIntervalRef, DoubleGluing, SelfGluing, SameSideGluing,
    BadEndpoints or BadIndex.
    """
    strips = tuple(strips)
    gluings = tuple(gluings)

    seen_strips: set[str] = set()
    seen_intervals: dict[str, SideEnd] = {}
    for s in strips:
        if s.id in seen_strips:
            raise DuplicateIdError(f"strip id {s.id!r} appears twice")
        seen_strips.add(s.id)
        for side in (Side.LOWER, Side.UPPER):
            _check_side(s.id, side, s.side_intervals(side))
            for iv in s.side_intervals(side):
                if iv.id in seen_intervals or iv.id in seen_strips:
                    raise DuplicateIdError(f"interval id {iv.id!r} appears twice")
                seen_intervals[iv.id] = (s.id, side)

    seen_gluing_ids: set[str] = set()
    glued: set[str] = set()
    for g in gluings:
        if g.id in seen_gluing_ids:
            raise DuplicateIdError(f"gluing id {g.id!r} appears twice")
        seen_gluing_ids.add(g.id)
        if g.first == g.second:
            raise SelfGluingError(f"gluing {g.id!r} pairs interval {g.first!r} with itself")
        for iid in g.members():
            if iid not in seen_intervals:
                raise UnknownIntervalRefError(f"gluing {g.id!r} references unknown interval {iid!r}")
            if iid in glued:
                raise DoubleGluingError(f"interval {iid!r} appears in more than one gluing")
            glued.add(iid)
        if seen_intervals[g.first] == seen_intervals[g.second]:
            strip_id, side = seen_intervals[g.first]
            raise SameSideGluingError(
                f"gluing {g.id!r} pairs intervals {g.first!r} and {g.second!r} "
                f"on the same side ({strip_id}, {side.value})"
            )

    return StripedSurface(strips, gluings)


@dataclass(frozen=True)
class GluedLeafRecord:
    gluing_id: str
    collar_sides: tuple[SideEnd, SideEnd]
    distinct: bool


@dataclass(frozen=True)
class ValidationReport:
    """Per-gluing collar summary plus connectivity of the gluing graph."""

    ok: bool
    glued_leaves: tuple[GluedLeafRecord, ...]
    components: tuple[tuple[str, ...], ...]
    connected: bool
    warnings: tuple[str, ...]


def _strip_partition(surface: StripedSurface) -> list[list[str]]:
    parent = {s.id: s.id for s in surface.strips}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in surface.gluings:
        a = find(surface.side_end_of(g.first)[0])
        b = find(surface.side_end_of(g.second)[0])
        if a != b:
            parent[a] = b
    groups: dict[str, list[str]] = {}
    for s in surface.strips:
        groups.setdefault(find(s.id), []).append(s.id)
    # deterministic: order groups by first strip appearance
    order = {s.id: i for i, s in enumerate(surface.strips)}
    return sorted(groups.values(), key=lambda grp: min(order[x] for x in grp))


def validate_class_f(surface: StripedSurface) -> ValidationReport:
    """Report collar sides of every glued leaf and surface connectivity.

    Structural violations are already rejected by :func:`build_surface`; this
    confirms each glued leaf has collars from two distinct (strip, side) pairs
    and flags disconnected input.
    """
    records = []
    for g in surface.gluings:
        sides = (surface.side_end_of(g.first), surface.side_end_of(g.second))
        records.append(GluedLeafRecord(g.id, sides, sides[0] != sides[1]))
    parts = _strip_partition(surface)
    warnings = []
    if len(parts) > 1:
        warnings.append(f"Disconnected: {len(parts)} components")
    return ValidationReport(
        ok=all(r.distinct for r in records),
        glued_leaves=tuple(records),
        components=tuple(tuple(p) for p in parts),
        connected=len(parts) <= 1,
        warnings=tuple(warnings),
    )


def components(surface: StripedSurface) -> list[StripedSurface]:
    """Split a surface into its connected pieces (gluings restricted)."""
    parts = _strip_partition(surface)
    out = []
    for part in parts:
        members = set(part)
        strips = tuple(s for s in surface.strips if s.id in members)
        gluings = tuple(
            g for g in surface.gluings if surface.side_end_of(g.first)[0] in members
        )
        out.append(StripedSurface(strips, gluings))
    return out


def is_connected(surface: StripedSurface) -> bool:
    return len(_strip_partition(surface)) <= 1
