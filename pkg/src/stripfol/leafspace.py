"""Combinatorial leaf spaces of striped surfaces.

The space of leaves of a striped surface is a (possibly non-Hausdorff)
one-manifold: one open arc per strip (parametrizing its interior leaves) and
one point per glued or unglued boundary interval class.  This module builds
that skeleton, computes Hausdorff closures of points, finds the special
points, and classifies the arc components of the non-special part.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .core import Side, SideEnd, StripedSurface


class PointKind(Enum):
    SPECIAL = "special"
    NON_SPECIAL_GLUED = "non-special-glued"
    BOUNDARY_LEAF = "boundary-leaf"


@dataclass(frozen=True)
class LeafPoint:
    """A leaf-class point: one gluing (two member intervals) or one unglued interval.

    Unglued intervals keep kind BOUNDARY_LEAF even when special; gluings are
    SPECIAL exactly when their Hausdorff closure has more than one point.
    """

    id: str
    members: tuple[str, ...]
    kind: PointKind


@dataclass(frozen=True)
class LeafSpace:
    """Arcs (one per strip), points, and the side-end incidence lists."""

    surface: StripedSurface
    arcs: tuple[str, ...]
    points: tuple[LeafPoint, ...]
    incidence: dict  # SideEnd -> tuple of point ids, in interval-index order
    _point_by_id: dict = field(init=False, repr=False, compare=False)
    _ends_by_point: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        by_id = {p.id: p for p in self.points}
        ends: dict[str, tuple[SideEnd, ...]] = {}
        for p in self.points:
            ends[p.id] = tuple(self.surface.side_end_of(m) for m in p.members)
        object.__setattr__(self, "_point_by_id", by_id)
        object.__setattr__(self, "_ends_by_point", ends)

    def point(self, point_id: str) -> LeafPoint:
        return self._point_by_id[point_id]

    def ends_of(self, point: LeafPoint | str) -> tuple[SideEnd, ...]:
        pid = point if isinstance(point, str) else point.id
        return self._ends_by_point[pid]

    def points_on(self, end: SideEnd) -> tuple[str, ...]:
        return self.incidence.get(end, ())


def _closure_ids(surface: StripedSurface, incidence: dict, members: tuple[str, ...], pid: str) -> set[str]:
    out = {pid}
    for m in members:
        out.update(incidence[surface.side_end_of(m)])
    return out


def build_leaf_space(surface: StripedSurface) -> LeafSpace:
    """Quotient a surface to its leaf-space skeleton.

    Point ids are the gluing ids (glued leaves) and interval ids (unglued
    boundary leaves); incidence lists follow the interval order of each side.
    """
    incidence: dict[SideEnd, tuple[str, ...]] = {}
    for s in surface.strips:
        for side in (Side.LOWER, Side.UPPER):
            ids = []
            for iv in s.side_intervals(side):
                g = surface.gluing_of(iv.id)
                ids.append(g.id if g is not None else iv.id)
            incidence[(s.id, side)] = tuple(ids)

    points = []
    for g in surface.gluings:
        members = g.members()
        special = len(_closure_ids(surface, incidence, members, g.id)) > 1
        kind = PointKind.SPECIAL if special else PointKind.NON_SPECIAL_GLUED
        points.append(LeafPoint(g.id, members, kind))
    for iv in surface.intervals():
        if surface.gluing_of(iv.id) is None:
            points.append(LeafPoint(iv.id, (iv.id,), PointKind.BOUNDARY_LEAF))

    return LeafSpace(surface, surface.strip_ids(), tuple(points), incidence)


def hausdorff_closure(ls: LeafSpace, point: LeafPoint | str) -> frozenset[LeafPoint]:
    """All points no neighborhood of which is disjoint from some neighborhood of `point`.

    Combinatorially: the point itself plus every other point sharing one of
    its incident side-ends.  Verified against the brute-force finite-basis
    computation in :mod:`stripfol.oracle`.
    """
    p = ls.point(point) if isinstance(point, str) else point
    ids = _closure_ids(ls.surface, ls.incidence, p.members, p.id)
    return frozenset(ls.point(i) for i in ids)


def is_special(ls: LeafSpace, point: LeafPoint | str) -> bool:
    return len(hausdorff_closure(ls, point)) > 1


def special_points(ls: LeafSpace) -> frozenset[LeafPoint]:
    """Points whose Hausdorff closure is not a singleton."""
    return frozenset(p for p in ls.points if is_special(ls, p))


class ArcType(Enum):
    OPEN_INTERVAL = "open-interval"
    HALF_CLOSED = "half-closed"
    CLOSED = "closed"
    CIRCLE = "circle"


@dataclass(frozen=True)
class ArcComponent:
    """A connected component of the leaf space minus its special points."""

    arcs: tuple[str, ...]
    joints: tuple[str, ...]      # non-special glued points traversed
    end_points: tuple[str, ...]  # retained boundary points at closed ends


ArcEnd = tuple[str, Side]


def _end_status(ls: LeafSpace, end: ArcEnd):
    """Classify an arc end: ('continue', next_end, joint_id) | ('closed', pid) | ('open',)."""
    pids = ls.points_on(end)
    if len(pids) != 1:
        return ("open",)
    p = ls.point(pids[0])
    if is_special(ls, p):
        return ("open",)
    if p.kind is PointKind.BOUNDARY_LEAF:
        return ("closed", p.id)
    # sole non-special gluing: the arc continues into the partner interval's strip
    ends = [ls.surface.side_end_of(m) for m in p.members]
    other_end = ends[1] if ends[0] == end else ends[0]
    return ("continue", other_end, p.id)


def arc_component_types(ls: LeafSpace) -> list[tuple[ArcComponent, ArcType]]:
    """Connected components of the non-special part, each with its topological type.

    Arcs are joined across non-special glued points; a sole non-special
    boundary leaf closes its end; a chain meeting itself is a circle.
    """
    # A non-special gluing between two side-ends of one strip closes that
    # single arc into a circle; detect while walking.
    seen: set[str] = set()
    out: list[tuple[ArcComponent, ArcType]] = []
    for start in ls.arcs:
        if start in seen:
            continue
        arcs = [start]
        seen.add(start)
        joints: list[str] = []
        end_points: list[str] = []
        closed_ends = 0
        circle = False

        def walk(end: ArcEnd) -> None:
            nonlocal closed_ends, circle
            while True:
                status = _end_status(ls, end)
                if status[0] == "open":
                    return
                if status[0] == "closed":
                    closed_ends += 1
                    end_points.append(status[1])
                    return
                _, nxt, joint = status
                if joint in joints:
                    circle = True  # wrapped around to the start
                    return
                joints.append(joint)
                strip_id, entered = nxt
                if strip_id in seen:
                    # can only happen when the chain closes into a circle
                    circle = True
                    return
                seen.add(strip_id)
                arcs.append(strip_id)
                end = (strip_id, entered.other)

        walk((start, Side.UPPER))
        if not circle:
            # continue from the other end, prepending
            forward = list(arcs)
            arcs = []

            def walk_back(end: ArcEnd) -> None:
                nonlocal closed_ends
                while True:
                    status = _end_status(ls, end)
                    if status[0] == "open":
                        return
                    if status[0] == "closed":
                        closed_ends += 1
                        end_points.append(status[1])
                        return
                    _, nxt, joint = status
                    joints.append(joint)
                    strip_id, entered = nxt
                    seen.add(strip_id)
                    arcs.append(strip_id)
                    end = (strip_id, entered.other)

            walk_back((start, Side.LOWER))
            arcs = list(reversed(arcs)) + forward

        if circle:
            kind = ArcType.CIRCLE
        else:
            kind = (ArcType.OPEN_INTERVAL, ArcType.HALF_CLOSED, ArcType.CLOSED)[closed_ends]
        out.append((ArcComponent(tuple(arcs), tuple(joints), tuple(end_points)), kind))
    return out
