"""Canonical decomposition and combinatorial classification of striped surfaces.

Cutting a connected striped surface along its special (and optionally
boundary) leaves splits it into chain and cycle components of the merge graph
whose edges are the non-special gluings.  Chains are open / half-closed /
closed strips; cycles are a cylinder or a Moebius band depending on the
orientation monodromy around the cycle.  Merging chains yields a canonical
representative, and a lexicographically minimal code over strip relabelings
and flips decides foliated-homeomorphism equivalence.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

from .core import (
    DisconnectedSurfaceError,
    GluingSpec,
    Interval,
    ModelStripSpec,
    Orientation,
    Side,
    SideEnd,
    StripedSurface,
    build_surface,
    is_connected,
)
from .leafspace import LeafPoint, LeafSpace, PointKind, build_leaf_space, is_special


class Mode(Enum):
    INTERIOR = "interior"            # cut special leaves only
    WITH_BOUNDARY = "with-boundary"  # cut special and boundary leaves


class Shape(Enum):
    CHAIN = "chain"
    CYCLE = "cycle"


class StripClass(Enum):
    OPEN_STRIP = "open-strip"
    HALF_CLOSED_STRIP = "half-closed-strip"
    CLOSED_STRIP = "closed-strip"
    CYLINDER = "cylinder"
    MOEBIUS = "moebius"


class NotAChainError(ValueError):
    pass


@dataclass(frozen=True)
class Component:
    """One connected piece of the cut surface.

    ``strips`` pairs each member strip with its vertical-flip flag in the
    stacking order of the chain (cycles use an arbitrary but deterministic
    starting strip).  Only chains expose the two outer side-ends; their
    ``*_points`` carry the cut leaves bordering that extreme, in interval
    order, and ``retained_*`` the non-special boundary leaf kept by interior
    mode, if any.
    """

    shape: Shape
    strips: tuple[tuple[str, bool], ...]
    interfaces: tuple[str, ...]
    mode: Mode
    outer_lower: SideEnd | None = None
    outer_upper: SideEnd | None = None
    outer_lower_points: tuple[LeafPoint, ...] = ()
    outer_upper_points: tuple[LeafPoint, ...] = ()
    retained_lower: str | None = None
    retained_upper: str | None = None
    monodromy: int | None = None

    def strip_ids(self) -> tuple[str, ...]:
        return tuple(s for s, _ in self.strips)


@dataclass(frozen=True)
class ClosureStrip:
    """Model-strip description of one half-closure of a chain component."""

    base_points: tuple[LeafPoint, ...]
    side_parity: Side


@dataclass(frozen=True)
class CanonicalCode:
    """Minimal serialization of a surface over relabelings and strip flips."""

    code: bytes

    def hex(self) -> str:
        return self.code.hex()


def _merge_edges(ls: LeafSpace) -> dict[SideEnd, GluingSpec]:
    """Map each side-end consumed by a non-special gluing to that gluing."""
    out: dict[SideEnd, GluingSpec] = {}
    for p in ls.points:
        if p.kind is not PointKind.NON_SPECIAL_GLUED:
            continue
        g = ls.surface.gluing(p.id)
        for member in p.members:
            out[ls.surface.side_end_of(member)] = g
    return out


def _epsilon_y(surface: StripedSurface, g: GluingSpec) -> int:
    sides = {surface.side_end_of(g.first)[1], surface.side_end_of(g.second)[1]}
    return 1 if sides == {Side.LOWER, Side.UPPER} else -1


def _gluing_sign(surface: StripedSurface, g: GluingSpec) -> int:
    return g.orientation.sign * _epsilon_y(surface, g)


def _cut_points(ls: LeafSpace, mode: Mode) -> frozenset[LeafPoint]:
    cut = set()
    for p in ls.points:
        if is_special(ls, p):
            cut.add(p)
        elif mode is Mode.WITH_BOUNDARY and p.kind is PointKind.BOUNDARY_LEAF:
            cut.add(p)
    return frozenset(cut)


def _outer_data(ls: LeafSpace, end: SideEnd, cut_ids: set[str], mode: Mode):
    """Base points (cut leaves, interval order) and retained boundary leaf of an extreme."""
    pids = ls.points_on(end)
    base = tuple(ls.point(pid) for pid in pids if pid in cut_ids)
    retained = None
    if mode is Mode.INTERIOR and len(pids) == 1:
        p = ls.point(pids[0])
        if p.kind is PointKind.BOUNDARY_LEAF and not is_special(ls, p):
            retained = p.id
    return base, retained


def decompose(
    surface: StripedSurface, mode: Mode = Mode.WITH_BOUNDARY, ls: LeafSpace | None = None
) -> tuple[list[Component], frozenset[LeafPoint]]:
    """Cut along special (and, per mode, boundary) leaves.

    Returns the components of the merge graph, each strip in exactly one, and
    the set of cut points.  Raises DisconnectedSurface on disconnected input.
    """
    if not is_connected(surface):
        raise DisconnectedSurfaceError("decompose requires a connected surface")
    if ls is None:
        ls = build_leaf_space(surface)
    cut = _cut_points(ls, mode)
    edges = _merge_edges(ls)

    order = {sid: i for i, sid in enumerate(surface.strip_ids())}
    seen: set[str] = set()
    comps: list[Component] = []
    for sid in surface.strip_ids():
        if sid in seen:
            continue
        comps.append(_trace_component(ls, sid, edges, cut, mode, seen, order))
    return comps, cut


def _edge_at(edges: dict[SideEnd, GluingSpec], sid: str, side: Side) -> GluingSpec | None:
    return edges.get((sid, side))


def _partner_end(surface: StripedSurface, g: GluingSpec, end: SideEnd) -> SideEnd:
    e1 = surface.side_end_of(g.first)
    e2 = surface.side_end_of(g.second)
    return e2 if end == e1 else e1


def _trace_component(
    ls: LeafSpace,
    start: str,
    edges: dict[SideEnd, GluingSpec],
    cut: frozenset[LeafPoint],
    mode: Mode,
    seen: set[str],
    order: dict[str, int],
) -> Component:
    surface = ls.surface

    # collect the member strips first to find the extremes
    members = {start}
    frontier = [start]
    while frontier:
        sid = frontier.pop()
        for side in (Side.LOWER, Side.UPPER):
            g = _edge_at(edges, sid, side)
            if g is None:
                continue
            nxt = _partner_end(surface, g, (sid, side))[0]
            if nxt not in members:
                members.add(nxt)
                frontier.append(nxt)
    seen.update(members)

    def degree(sid: str) -> int:
        return sum(1 for side in (Side.LOWER, Side.UPPER) if _edge_at(edges, sid, side))

    extremes = sorted((s for s in members if degree(s) < 2), key=lambda s: order[s])
    cut_ids = {p.id for p in cut}

    if extremes:
        first = extremes[0]
        exposed = next(
            side for side in (Side.LOWER, Side.UPPER) if _edge_at(edges, first, side) is None
        )
        strips: list[tuple[str, bool]] = [(first, exposed is Side.UPPER)]
        interfaces: list[str] = []
        cur, cur_exit = first, exposed.other
        while True:
            g = _edge_at(edges, cur, cur_exit)
            if g is None:
                break
            interfaces.append(g.id)
            nxt, entered = _partner_end(surface, g, (cur, cur_exit))
            strips.append((nxt, entered is Side.UPPER))
            cur, cur_exit = nxt, entered.other
        outer_lower = (first, exposed)
        outer_upper = (cur, cur_exit)
        low_pts, low_ret = _outer_data(ls, outer_lower, cut_ids, mode)
        up_pts, up_ret = _outer_data(ls, outer_upper, cut_ids, mode)
        return Component(
            shape=Shape.CHAIN,
            strips=tuple(strips),
            interfaces=tuple(interfaces),
            mode=mode,
            outer_lower=outer_lower,
            outer_upper=outer_upper,
            outer_lower_points=low_pts,
            outer_upper_points=up_pts,
            retained_lower=low_ret,
            retained_upper=up_ret,
        )

    # cycle: every member side is consumed
    first = min(members, key=lambda s: order[s])
    strips = [(first, False)]
    interfaces = []
    sign = 1
    cur, cur_exit = first, Side.UPPER
    while True:
        g = _edge_at(edges, cur, cur_exit)
        interfaces.append(g.id)
        sign *= _gluing_sign(surface, g)
        nxt, entered = _partner_end(surface, g, (cur, cur_exit))
        if nxt == first and len(interfaces) == len(members):
            break
        strips.append((nxt, entered is Side.UPPER))
        cur, cur_exit = nxt, entered.other
    return Component(
        shape=Shape.CYCLE,
        strips=tuple(strips),
        interfaces=tuple(interfaces),
        mode=mode,
        monodromy=sign,
    )


def classify_component(comp: Component) -> StripClass:
    """Five-type classification: chains by closed extremes, cycles by monodromy."""
    if comp.shape is Shape.CYCLE:
        return StripClass.CYLINDER if comp.monodromy == 1 else StripClass.MOEBIUS
    closed = (comp.retained_lower is not None) + (comp.retained_upper is not None)
    return (
        StripClass.OPEN_STRIP,
        StripClass.HALF_CLOSED_STRIP,
        StripClass.CLOSED_STRIP,
    )[closed]


@dataclass(frozen=True)
class CycleCheckReport:
    ok: bool
    violations: tuple[str, ...]


def check_cycle_components(
    surface: StripedSurface, components: list[Component]
) -> CycleCheckReport:
    """A cycle component must be the whole surface, with no special or boundary leaves."""
    violations = []
    cycles = [c for c in components if c.shape is Shape.CYCLE]
    for cyc in cycles:
        if len(components) != 1:
            violations.append(
                f"cycle through {cyc.strip_ids()} coexists with other components"
            )
        if set(cyc.strip_ids()) != set(surface.strip_ids()):
            violations.append("cycle component does not exhaust the surface")
    if cycles:
        ls = build_leaf_space(surface)
        for p in ls.points:
            if is_special(ls, p) or p.kind is PointKind.BOUNDARY_LEAF:
                violations.append(f"cycle surface carries cut leaf {p.id!r}")
    return CycleCheckReport(ok=not violations, violations=tuple(violations))


def component_closures(
    comp: Component,
) -> tuple[ClosureStrip, ClosureStrip, frozenset[LeafPoint]]:
    """Closures of the two halves of a chain component, as base-leaf lists.

    The overlap is the set of cut leaves bordering both extremes (the same
    leaf can close the chain's lower and upper half at once).
    """
    if comp.shape is not Shape.CHAIN:
        raise NotAChainError("component closures are defined for chain components only")
    lower = ClosureStrip(comp.outer_lower_points, Side.LOWER)
    upper = ClosureStrip(comp.outer_upper_points, Side.UPPER)
    overlap = frozenset(p for p in lower.base_points if p in upper.base_points)
    return lower, upper, overlap


# ---------------------------------------------------------------------------
# admissible moves


def relabel_strips(surface: StripedSurface, mapping: dict[str, str]) -> StripedSurface:
    """Rename strips (interval and gluing ids untouched)."""
    strips = tuple(replace(s, id=mapping.get(s.id, s.id)) for s in surface.strips)
    return build_surface(strips, surface.gluings)


def _toggle_incident(
    gluings: tuple[GluingSpec, ...], surface: StripedSurface, strip_id: str
) -> tuple[GluingSpec, ...]:
    out = []
    for g in gluings:
        toggles = sum(
            1 for iid in g.members() if surface.side_end_of(iid)[0] == strip_id
        )
        out.append(replace(g, orientation=g.orientation.flipped) if toggles % 2 else g)
    return tuple(out)


def _reverse_side(intervals: tuple[Interval, ...]) -> tuple[Interval, ...]:
    out = []
    for k, iv in enumerate(reversed(intervals)):
        ends = None
        if iv.endpoints is not None:
            ends = (-iv.endpoints[1], -iv.endpoints[0])
        out.append(Interval(iv.id, iv.side, k, ends))
    return tuple(out)


def h_flip(surface: StripedSurface, strip_id: str) -> StripedSurface:
    """Reverse the interval order on both sides of one strip.

    Gluings with exactly one endpoint on the strip toggle orientation;
    self-gluings of the strip toggle twice, i.e. stay put.
    """
    strips = []
    for s in surface.strips:
        if s.id == strip_id:
            s = ModelStripSpec(s.id, _reverse_side(s.lower), _reverse_side(s.upper))
        strips.append(s)
    return build_surface(strips, _toggle_incident(surface.gluings, surface, strip_id))


def v_flip(surface: StripedSurface, strip_id: str) -> StripedSurface:
    """Swap the two sides of one strip."""
    strips = []
    for s in surface.strips:
        if s.id == strip_id:
            lower = tuple(replace(iv, side=Side.LOWER) for iv in s.upper)
            upper = tuple(replace(iv, side=Side.UPPER) for iv in s.lower)
            s = ModelStripSpec(s.id, lower, upper)
        strips.append(s)
    return build_surface(strips, surface.gluings)


def mirror(surface: StripedSurface) -> StripedSurface:
    """Reflect the whole surface: h-flip of every strip."""
    out = surface
    for sid in surface.strip_ids():
        out = h_flip(out, sid)
    return out


# ---------------------------------------------------------------------------
# canonical representative


def canonicalize(surface: StripedSurface) -> StripedSurface:
    """Merge every chain across its non-special gluings into a single strip.

    Cycle components are terminal and returned unchanged.  Idempotent, and
    the leaf space of the output is isomorphic to that of the input (point
    ids are preserved verbatim).
    """
    if not is_connected(surface):
        raise DisconnectedSurfaceError("canonicalize requires a connected surface")
    ls = build_leaf_space(surface)
    comps, _ = decompose(surface, Mode.INTERIOR, ls)
    if any(c.shape is Shape.CYCLE for c in comps):
        return surface

    order = {sid: i for i, sid in enumerate(surface.strip_ids())}
    h_flipped: set[str] = set()
    merged: list[tuple[int, ModelStripSpec]] = []
    for comp in comps:
        ids = comp.strip_ids()
        if len(ids) == 1:
            merged.append((order[ids[0]], surface.strip(ids[0])))
            continue
        # cumulative horizontal flip along the chain: one per reversing seam
        h = {ids[0]: False}
        for gid, (prev, nxt) in zip(comp.interfaces, zip(ids, ids[1:])):
            g = surface.gluing(gid)
            h[nxt] = h[prev] ^ (g.orientation is Orientation.REVERSING)
        for sid, flipped in h.items():
            if flipped:
                h_flipped.add(sid)

        def contributed(end: SideEnd, new_side: Side) -> tuple[Interval, ...]:
            sid, side = end
            ivs = surface.strip(sid).side_intervals(side)
            if h[sid]:
                ivs = _reverse_side(ivs)
            return tuple(
                Interval(iv.id, new_side, k, iv.endpoints) for k, iv in enumerate(ivs)
            )

        merged_id = "+".join(ids)
        lower = contributed(comp.outer_lower, Side.LOWER)
        upper = contributed(comp.outer_upper, Side.UPPER)
        merged.append((order[ids[0]], ModelStripSpec(merged_id, lower, upper)))

    merged.sort(key=lambda t: t[0])
    new_strips = [s for _, s in merged]

    consumed = {gid for comp in comps for gid in comp.interfaces}
    gluings = []
    for g in surface.gluings:
        if g.id in consumed:
            continue
        toggles = sum(
            1 for iid in g.members() if surface.side_end_of(iid)[0] in h_flipped
        )
        gluings.append(replace(g, orientation=g.orientation.flipped) if toggles % 2 else g)
    return build_surface(new_strips, gluings)


# ---------------------------------------------------------------------------
# canonical code and isomorphism


def _slot_table(surface: StripedSurface):
    """Per strip: (lower ids, upper ids); plus interval -> (strip, side, slot)."""
    sides = {}
    loc = {}
    for s in surface.strips:
        lo = tuple(iv.id for iv in s.lower)
        up = tuple(iv.id for iv in s.upper)
        sides[s.id] = (lo, up)
        for side_idx, ids in enumerate((lo, up)):
            for k, iid in enumerate(ids):
                loc[iid] = (s.id, side_idx, k)
    return sides, loc


def _assignment_row(surface, sides, loc, placed_pos, placement, p):
    """Encode strip row at position p given the partial placement.

    placement[p] = (strip_id, h, v).  Gluings are written as back references
    from their later endpoint in scan order; earlier endpoints emit a forward
    marker, boundary slots a 'b'.
    """
    sid, h, v = placement[p]
    lo, up = sides[sid]
    row_sides = (lo, up) if not v else (up, lo)
    row: list = [len(row_sides[0]), len(row_sides[1])]

    def scan_pos(strip_pos, strip_key, side_idx_natural, slot_natural):
        s_id, s_h, s_v = placement[strip_pos]
        side_idx = side_idx_natural ^ (1 if s_v else 0)
        n = len(sides[s_id][side_idx_natural])
        slot = (n - 1 - slot_natural) if s_h else slot_natural
        return (strip_pos, side_idx, slot)

    # tokens are tuples throughout so rows compare lexicographically; back
    # references ("g") sort below boundary ("i") and forward ("z") markers so
    # the minimal code keeps gluings as early as possible, which is what lets
    # the search prune on symmetric surfaces
    for side_idx, ids in enumerate(row_sides):
        ordered = tuple(reversed(ids)) if h else ids
        for slot, iid in enumerate(ordered):
            g = surface.gluing_of(iid)
            if g is None:
                row.append(("i",))
                continue
            other = g.other(iid)
            o_sid, o_side_nat, o_slot_nat = loc[other]
            if o_sid not in placed_pos:
                row.append(("z",))
                continue
            q = placed_pos[o_sid]
            here = (p, side_idx, slot)
            there = scan_pos(q, o_sid, o_side_nat, o_slot_nat)
            if there >= here:
                row.append(("z",))
                continue
            _, o_h, _ = placement[q]
            flag = (g.orientation is Orientation.REVERSING) ^ h ^ o_h
            row.append(("g", there[0], there[1], there[2], 1 if flag else 0))
    return tuple(row)


def _canonical_rows(surface: StripedSurface) -> tuple:
    sides, loc = _slot_table(surface)
    n = len(surface.strips)
    strip_ids = surface.strip_ids()
    best: list[tuple] | None = None

    def rec(placement: list, placed_pos: dict, rows: list):
        nonlocal best
        p = len(placement)
        if p == n:
            rows_t = tuple(rows)
            if best is None or rows_t < tuple(best):
                best = list(rows)
            return
        candidates = []
        for sid in strip_ids:
            if sid in placed_pos:
                continue
            for h in (False, True):
                for v in (False, True):
                    placement.append((sid, h, v))
                    placed_pos[sid] = p
                    row = _assignment_row(surface, sides, loc, placed_pos, placement, p)
                    placement.pop()
                    del placed_pos[sid]
                    candidates.append((row, sid, h, v))
        candidates.sort(key=lambda c: c[0])
        for row, sid, h, v in candidates:
            if best is not None and tuple(rows + [row]) > tuple(best[: p + 1]):
                continue
            placement.append((sid, h, v))
            placed_pos[sid] = p
            rows.append(row)
            rec(placement, placed_pos, rows)
            rows.pop()
            placement.pop()
            del placed_pos[sid]

    rec([], {}, [])
    return tuple(best if best is not None else [])


def _rows_to_bytes(rows: tuple) -> bytes:
    parts = []
    for row in rows:
        tokens = []
        for tok in row:
            if isinstance(tok, tuple):
                tokens.append(tok[0] + ".".join(str(t) for t in tok[1:]))
            else:
                tokens.append(str(tok))
        parts.append(",".join(tokens))
    return ("|".join(parts)).encode("ascii")


def canonical_code(surface: StripedSurface) -> CanonicalCode:
    """Lexicographically minimal serialization over relabelings and flips.

    Branch-and-bound over strip placement order with per-strip horizontal and
    vertical flips; two surfaces get equal codes exactly when some sequence
    of admissible moves carries one onto the other.
    """
    return CanonicalCode(_rows_to_bytes(_canonical_rows(surface)))


def _profile(surface: StripedSurface):
    return (
        len(surface.strips),
        len(surface.gluings),
        sorted(
            tuple(sorted((len(s.lower), len(s.upper)))) for s in surface.strips
        ),
    )


def is_isomorphic(a: StripedSurface, b: StripedSurface) -> bool:
    """Foliated-homeomorphism equivalence of two connected surfaces.

    Both are canonicalized (chains merged); equality of canonical codes then
    decides equivalence under relabelings and strip flips.
    """
    ca = canonicalize(a)
    cb = canonicalize(b)
    if _profile(ca) != _profile(cb):
        return False
    return canonical_code(ca) == canonical_code(cb)
