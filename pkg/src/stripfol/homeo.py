"""Level-preserving homeomorphisms between strips, realized numerically.

Everything here is plane geometry: piecewise-linear increasing interpolation
that straightens families of non-crossing curve graphs into vertical
segments, trapezoids inscribed under a clearance function, affine-per-level
maps between trapezoid roofs, a leaf-shrinking map, and their composite that
realizes the closure of a half strip as a model half strip with marked base
intervals.  All maps evaluate pointwise and carry numeric inverses; the
working tolerance is ``TOL``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence

from .core import StripedSurface
from .decomposition import Component, ClosureStrip, Shape, StripClass, classify_component
from .core import Side

TOL = 1e-9


class HomeoError(ValueError):
    pass


class NonIncreasingInputError(HomeoError):
    pass


class GraphsIntersectError(HomeoError):
    pass


class BadIntervalError(HomeoError):
    pass


class BadEpsError(HomeoError):
    pass


class NonPositiveClearanceError(HomeoError):
    pass


class LevelRangeMismatchError(HomeoError):
    pass


class NotOpenStripComponentError(HomeoError):
    pass


class Tail(Enum):
    LINEAR = "linear"
    CONSTANT = "constant"


@dataclass(frozen=True)
class PLFunction:
    """Piecewise-linear function through (breakpoints[i], values[i]).

    Tails continue the end segment (LINEAR, slope 1 when only one breakpoint)
    or clamp (CONSTANT).
    """

    breakpoints: tuple[float, ...]
    values: tuple[float, ...]
    lower_tail: Tail = Tail.LINEAR
    upper_tail: Tail = Tail.LINEAR

    def __post_init__(self) -> None:
        if len(self.breakpoints) != len(self.values) or not self.breakpoints:
            raise ValueError("breakpoints and values must be equal-length and non-empty")
        for a, b in zip(self.breakpoints, self.breakpoints[1:]):
            if not a < b:
                raise NonIncreasingInputError("breakpoints must be strictly increasing")

    @classmethod
    def from_points(cls, points: Sequence[tuple[float, float]], **kw) -> "PLFunction":
        pts = sorted(points)
        return cls(tuple(p[0] for p in pts), tuple(p[1] for p in pts), **kw)

    @classmethod
    def constant(cls, value: float, at: float = 0.0) -> "PLFunction":
        return cls((at,), (value,), Tail.CONSTANT, Tail.CONSTANT)

    def _tail(self, x: float, lower: bool) -> float:
        bp, vals = self.breakpoints, self.values
        tail = self.lower_tail if lower else self.upper_tail
        i = 0 if lower else len(bp) - 1
        if tail is Tail.CONSTANT:
            return vals[i]
        if len(bp) == 1:
            return vals[0] + (x - bp[0])
        j = 1 if lower else len(bp) - 2
        slope = (vals[i] - vals[j]) / (bp[i] - bp[j])
        return vals[i] + slope * (x - bp[i])

    def __call__(self, x: float) -> float:
        bp, vals = self.breakpoints, self.values
        if x <= bp[0]:
            return vals[0] if x == bp[0] else self._tail(x, lower=True)
        if x >= bp[-1]:
            return vals[-1] if x == bp[-1] else self._tail(x, lower=False)
        lo, hi = 0, len(bp) - 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if bp[mid] <= x:
                lo = mid
            else:
                hi = mid
        t = (x - bp[lo]) / (bp[hi] - bp[lo])
        return vals[lo] + t * (vals[hi] - vals[lo])

    def is_strictly_increasing(self) -> bool:
        """Strict monotonicity across the breakpoint span."""
        return all(a < b for a, b in zip(self.values, self.values[1:]))

    def min_on(self, lo: float, hi: float) -> float:
        xs = [lo, hi] + [x for x in self.breakpoints if lo < x < hi]
        return min(self(x) for x in xs)


def uk_eval(x: float, y: Sequence[float], q: Sequence[float]) -> float:
    """Increasing piecewise-linear bijection of the line sending y_i to q_i.

    Affine on each [y_i, y_{i+1}], unit-slope translation beyond the extreme
    breakpoints; the identity when y == q.
    """
    y = list(y)
    q = list(q)
    if len(y) != len(q) or not y:
        raise NonIncreasingInputError("y and q must be equal-length and non-empty")
    for seq in (y, q):
        for a, b in zip(seq, seq[1:]):
            if not a < b:
                raise NonIncreasingInputError("u_k parameters must be strictly increasing")
    if y == q:
        return x
    if x <= y[0]:
        return x - y[0] + q[0]
    if x >= y[-1]:
        return x - y[-1] + q[-1]
    lo, hi = 0, len(y) - 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if y[mid] <= x:
            lo = mid
        else:
            hi = mid
    return q[lo] + (q[hi] - q[lo]) / (y[hi] - y[lo]) * (x - y[lo])


def uk_inverse(x: float, y: Sequence[float], q: Sequence[float]) -> float:
    return uk_eval(x, q, y)


def _bisect_increasing(g: Callable[[float], float], target: float, tol: float = 1e-13) -> float:
    lo, hi = -1.0, 1.0
    span = 1.0
    for _ in range(200):
        if g(lo) <= target:
            break
        span *= 2.0
        lo -= span
    else:
        raise HomeoError("target below the image of the map")
    span = 1.0
    for _ in range(200):
        if g(hi) >= target:
            break
        span *= 2.0
        hi += span
    else:
        raise HomeoError("target above the image of the map")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if hi - lo < tol:
            return mid
        if g(mid) < target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class Trapezoid:
    """Region between two curve graphs over a half-open level interval (c, d].

    ``alpha``/``beta`` give x as a function of the level; the roof is the two
    side curves plus the upper base at level d; ``base`` is the open limit
    interval at level c, when the side curves converge to finite endpoints.
    """

    alpha: PLFunction
    beta: PLFunction
    level_range: tuple[float, float]
    base: tuple[float, float] | None = None

    def __post_init__(self) -> None:
        c, d = self.level_range
        if not c < d:
            raise BadIntervalError("trapezoid level range must satisfy c < d")
        for i in range(1, 65):
            y = c + (d - c) * i / 64.0
            if not self.alpha(y) < self.beta(y):
                raise BadIntervalError(f"alpha(y) < beta(y) fails at level {y}")
        if self.base is not None:
            a, b = self.base
            if not (abs(self.alpha(c) - a) <= 1e-9 and abs(self.beta(c) - b) <= 1e-9):
                raise BadIntervalError("base endpoints must match the curve limits at c")

    @property
    def top(self) -> float:
        return self.level_range[1]

    def upper_base(self) -> tuple[float, float, float]:
        d = self.top
        return (self.alpha(d), self.beta(d), d)

    def contains(self, x: float, y: float, tol: float = 0.0) -> bool:
        c, d = self.level_range
        if not c < y <= d + tol:
            return False
        return self.alpha(y) - tol <= x <= self.beta(y) + tol

    def contains_closed(self, x: float, y: float, tol: float = 0.0) -> bool:
        c, _ = self.level_range
        if abs(y - c) <= tol and self.base is not None:
            a, b = self.base
            return a < x < b
        return self.contains(x, y, tol)

    def roof_samples(self, n: int = 32) -> list[tuple[float, float]]:
        c, d = self.level_range
        pts = []
        for i in range(1, n + 1):
            y = c + (d - c) * i / n
            pts.append((self.alpha(y), y))
            pts.append((self.beta(y), y))
        a_top, b_top = self.alpha(d), self.beta(d)
        for i in range(n + 1):
            pts.append((a_top + (b_top - a_top) * i / n, d))
        return pts


@dataclass(frozen=True)
class Piece:
    """One region of a piecewise level map."""

    forward: Callable[[float, float], tuple[float, float]]
    sigma: Callable[[float], float]
    region: Callable[[float, float], bool] | None = None
    backward: Callable[[float, float], tuple[float, float]] | None = None
    target_region: Callable[[float, float], bool] | None = None


class LevelMap:
    """Piecewise-defined plane map sending levels to levels.

    Pieces are tried in order; the first whose region holds evaluates the
    point.  Inversion uses explicit backward maps where provided and falls
    back to bisection (the forward map is strictly increasing in x at each
    level and the level reparametrization is strictly increasing).
    """

    def __init__(self, pieces: Sequence[Piece]):
        self.pieces = tuple(pieces)

    @staticmethod
    def identity() -> "LevelMap":
        ident = lambda x, y: (x, y)
        return LevelMap([Piece(ident, lambda y: y, backward=ident)])

    @staticmethod
    def chain(maps: Sequence["LevelMap"]) -> "LevelMap":
        maps = list(maps)

        def forward(x: float, y: float) -> tuple[float, float]:
            for m in maps:
                x, y = m.apply(x, y)
            return (x, y)

        def backward(x: float, y: float) -> tuple[float, float]:
            for m in reversed(maps):
                x, y = m.invert(x, y)
            return (x, y)

        def sigma(y: float) -> float:
            for m in maps:
                y = m.pieces[0].sigma(y) if len(m.pieces) == 1 else m.apply(0.0, y)[1]
            return y

        return LevelMap([Piece(forward, sigma, backward=backward)])

    def inverse_map(self) -> "LevelMap":
        fwd = self.apply
        bwd = self.invert
        return LevelMap(
            [Piece(lambda x, y: bwd(x, y), lambda y: y, backward=lambda x, y: fwd(x, y))]
        )

    def _piece_at(self, x: float, y: float) -> Piece:
        for piece in self.pieces:
            if piece.region is None or piece.region(x, y):
                return piece
        raise HomeoError(f"point ({x}, {y}) lies outside the map domain")

    def apply(self, x: float, y: float) -> tuple[float, float]:
        return self._piece_at(x, y).forward(x, y)

    def invert(self, x: float, y: float) -> tuple[float, float]:
        candidates = [
            p
            for p in self.pieces
            if p.target_region is not None and p.target_region(x, y)
        ]
        if not candidates:
            candidates = [p for p in self.pieces if p.target_region is None]
        for piece in candidates:
            if piece.backward is not None:
                return piece.backward(x, y)
        piece = candidates[0]
        y_in = _bisect_increasing(piece.sigma, y)
        x_in = _bisect_increasing(lambda t: piece.forward(t, y_in)[0], x)
        return (x_in, y_in)


CurveFn = Callable[[float], float]


def _check_disjoint(
    curves: Sequence[tuple[CurveFn, float]], floor: float, samples: int
) -> None:
    for i in range(len(curves)):
        for j in range(i + 1, len(curves)):
            f, df = curves[i]
            g, dg = curves[j]
            top = min(df, dg)
            if top <= floor:
                continue
            prev = None
            for k in range(1, samples + 1):
                y = floor + (top - floor) * k / samples
                diff = f(y) - g(y)
                if diff == 0.0 or (prev is not None and (diff > 0) != (prev > 0)):
                    raise GraphsIntersectError(
                        f"curve graphs {i} and {j} meet near level {y}"
                    )
                prev = diff


def rectify_finite(
    funcs: Sequence[CurveFn],
    s: float,
    c: float | None = None,
    samples: int = 64,
) -> LevelMap:
    """Straighten finitely many non-crossing curve graphs on (c, s].

    The map is level-preserving, fixed pointwise on the level s, and carries
    the graph of each curve onto the vertical segment through its value at s.
    """
    funcs = list(funcs)
    if c is None:
        c = s - 1.0
    if funcs:
        _check_disjoint([(f, s) for f in funcs], c, samples)
    order = sorted(range(len(funcs)), key=lambda i: funcs[i](s))
    sorted_funcs = [funcs[i] for i in order]
    q = [f(s) for f in sorted_funcs]

    def vals_at(y: float) -> list[float]:
        vals = [f(y) for f in sorted_funcs]
        for a, b in zip(vals, vals[1:]):
            if not a < b:
                raise GraphsIntersectError(f"curve order collapses at level {y}")
        return vals

    def forward(x: float, y: float) -> tuple[float, float]:
        if y >= s or not sorted_funcs:
            return (x, y)
        return (uk_eval(x, vals_at(y), q), y)

    def backward(x: float, y: float) -> tuple[float, float]:
        if y >= s or not sorted_funcs:
            return (x, y)
        return (uk_inverse(x, vals_at(y), q), y)

    return LevelMap([Piece(forward, lambda y: y, backward=backward)])


def rectify_stages(
    staged: Sequence[tuple[CurveFn, float]],
    floor: float | None = None,
    samples: int = 64,
) -> LevelMap:
    """Compose stage rectifications, deepest stage last.

    Each stage straightens every curve alive at its level (already-vertical
    ones stay put); each stage map is the identity at and above its level.
    """
    staged = list(staged)
    if not staged:
        return LevelMap.identity()
    if floor is None:
        floor = min(d for _, d in staged) - 1.0
    _check_disjoint(staged, floor, samples)

    levels = sorted({d for _, d in staged}, reverse=True)
    stage_maps: list[LevelMap] = []
    for s in levels:
        prefix = LevelMap.chain(stage_maps) if stage_maps else LevelMap.identity()
        alive = [f for f, d in staged if d >= s]
        stage_maps.append(_make_stage(alive, prefix, s))
    return LevelMap.chain(stage_maps)


def _make_stage(curves: Sequence[CurveFn], prefix: LevelMap, s: float) -> LevelMap:
    def vals_at(y: float) -> list[float]:
        vals = sorted(prefix.apply(f(y), y)[0] for f in curves)
        for a, b in zip(vals, vals[1:]):
            if not a < b:
                raise GraphsIntersectError(f"stage curves collide at level {y}")
        return vals

    q = vals_at(s)

    def forward(x: float, y: float) -> tuple[float, float]:
        if y >= s:
            return (x, y)
        return (uk_eval(x, vals_at(y), q), y)

    def backward(x: float, y: float) -> tuple[float, float]:
        if y >= s:
            return (x, y)
        return (uk_inverse(x, vals_at(y), q), y)

    return LevelMap([Piece(forward, lambda y: y, backward=backward)])


def shrink_leaf(a: float, b: float, eps: float) -> LevelMap:
    """Identity outside the band |y| < eps; squeezes level 0 onto (a, b).

    The level-0 restriction is the increasing bijection
    ``x -> (a+b)/2 + ((b-a)/pi) * atan(x)``; intermediate levels blend it
    linearly with the identity, so horizontal lines map to horizontal lines.
    """
    if not a < b:
        raise BadIntervalError(f"need a < b, got ({a}, {b})")
    if not eps > 0:
        raise BadEpsError(f"need eps > 0, got {eps}")

    def squeeze(x: float) -> float:
        return (a + b) / 2.0 + ((b - a) / math.pi) * math.atan(x)

    def mu(y: float) -> float:
        return min(abs(y) / eps, 1.0)

    def forward(x: float, y: float) -> tuple[float, float]:
        m = mu(y)
        if m >= 1.0:
            return (x, y)
        return (m * x + (1.0 - m) * squeeze(x), y)

    def backward(x: float, y: float) -> tuple[float, float]:
        m = mu(y)
        if m >= 1.0:
            return (x, y)
        return (_bisect_increasing(lambda t: m * t + (1.0 - m) * squeeze(t), x), y)

    return LevelMap([Piece(forward, lambda y: y, backward=backward)])


def trapezoid_under_clearance(
    clearance: PLFunction | CurveFn, a: float, b: float, depth: int
) -> Trapezoid:
    """Inscribe a half-open trapezoid with base (a, b) under a clearance graph.

    Dyadic shrinking sub-segments [a_i, b_i] of (a, b) get heights half the
    clearance minimum over them; the side curves interpolate those anchors
    linearly and run down to the base endpoints.
    """
    if not (math.isfinite(a) and math.isfinite(b) and a < b):
        raise BadIntervalError(f"need finite a < b, got ({a}, {b})")
    if depth < 1:
        raise BadIntervalError("depth must be at least 1")

    def min_on(lo: float, hi: float) -> float:
        if isinstance(clearance, PLFunction):
            return clearance.min_on(lo, hi)
        return min(clearance(lo + (hi - lo) * i / 1024) for i in range(1025))

    w = b - a
    a_seq = [a + w * 2.0 ** (-i - 2) for i in range(depth + 1)]
    b_seq = [b - w * 2.0 ** (-i - 2) for i in range(depth + 1)]
    r_seq = []
    for i in range(depth + 1):
        m = 0.5 * min_on(a_seq[i], b_seq[i])
        if m <= 0:
            raise NonPositiveClearanceError(
                f"clearance is not strictly positive on [{a_seq[i]}, {b_seq[i]}]"
            )
        r_seq.append(m)

    # anchor the side curves at height r_{i+1} over a_i / b_i, keeping only
    # strictly decreasing heights so x is a function of the level
    kept: list[tuple[float, int]] = []
    for i in range(depth):
        r = r_seq[i + 1]
        if not kept or r < kept[-1][0]:
            kept.append((r, i))

    alpha_pts = [(0.0, a)] + [(r, a_seq[i]) for r, i in kept]
    beta_pts = [(0.0, b)] + [(r, b_seq[i]) for r, i in kept]
    top = kept[0][0]
    alpha = PLFunction.from_points(alpha_pts, lower_tail=Tail.CONSTANT, upper_tail=Tail.CONSTANT)
    beta = PLFunction.from_points(beta_pts, lower_tail=Tail.CONSTANT, upper_tail=Tail.CONSTANT)
    return Trapezoid(alpha, beta, (0.0, top), base=(a, b))


def roof_homeo(
    source: Trapezoid,
    target: Trapezoid,
    sigma: PLFunction | CurveFn | None = None,
) -> LevelMap:
    """Extend a roof correspondence to a level-preserving trapezoid map.

    At each level the map is the affine stretch carrying [alpha, beta] of the
    source onto [gamma, delta] of the target at the sigma-matched level; when
    both trapezoids have finite bases the map extends to the closed bases.
    """
    cs, ds = source.level_range
    ct, dt = target.level_range
    if sigma is None:
        scale = (dt - ct) / (ds - cs)
        sig: CurveFn = lambda y: ct + (y - cs) * scale
    else:
        sig = sigma
    if abs(sig(cs) - ct) > 1e-9 or abs(sig(ds) - dt) > 1e-9:
        raise LevelRangeMismatchError(
            "sigma must carry the source level range onto the target level range"
        )
    prev = None
    for i in range(65):
        v = sig(cs + (ds - cs) * i / 64.0)
        if prev is not None and not v > prev:
            raise LevelRangeMismatchError("sigma must be strictly increasing")
        prev = v

    def forward(x: float, y: float) -> tuple[float, float]:
        s = sig(y)
        A, B = source.alpha(y), source.beta(y)
        G, D = target.alpha(s), target.beta(s)
        return (G + (D - G) * (x - A) / (B - A), s)

    def backward(x: float, y: float) -> tuple[float, float]:
        y_in = _bisect_increasing(sig, y) if sigma is not None else cs + (y - ct) / scale
        A, B = source.alpha(y_in), source.beta(y_in)
        G, D = target.alpha(y), target.beta(y)
        return (A + (B - A) * (x - G) / (D - G), y_in)

    return LevelMap([Piece(forward, sig, backward=backward)])


@dataclass(frozen=True)
class HalfStripChart:
    """Half model strip: the band R x (-1, 0] plus marked base intervals.

    One half-open rectangle [a_i, b_i] x (-1, d_i] per base leaf, with its
    open base interval J_i at level -1.
    """

    rectangles: tuple[tuple[float, float, float], ...]
    base_intervals: tuple[tuple[float, float], ...]
    level_range: tuple[float, float] = (-1.0, 0.0)

    def __post_init__(self) -> None:
        c, d = self.level_range
        spans = sorted((a, b) for a, b, _ in self.rectangles)
        for (a0, b0), (a1, b1) in zip(spans, spans[1:]):
            if not b0 < a1:
                raise BadIntervalError("rectangle x-spans must be pairwise disjoint")
        for a, b, di in self.rectangles:
            if not (a < b and c < di < d):
                raise BadIntervalError("rectangle tops must lie strictly inside the level range")

    def contains(self, x: float, y: float) -> bool:
        c, d = self.level_range
        if c < y <= d:
            return True
        if y == c:
            return any(a < x < b for a, b in self.base_intervals)
        return False


def realize_half_strip(
    surface: StripedSurface,
    comp: Component,
    closure: ClosureStrip,
    depth: int = 4,
    samples: int = 64,
) -> tuple[HalfStripChart, LevelMap]:
    """Realize the closure of one half of an open-strip chain component.

    Over each base leaf a trapezoid collar is inscribed, sheared into the
    half-strip chart, rectified into a rectangle by staged straightening,
    and mapped back by the affine roof extension; the resulting piecewise
    map eta is level-preserving, agrees across piece boundaries, and sends
    each base interval of the chart onto its leaf's interval coordinates.
    """
    if comp.shape is not Shape.CHAIN or classify_component(comp) is not StripClass.OPEN_STRIP:
        raise NotOpenStripComponentError(
            "half-strip realization needs an open-strip chain component"
        )
    end = comp.outer_lower if closure.side_parity is Side.LOWER else comp.outer_upper
    k = len(closure.base_points)
    if k == 0:
        return HalfStripChart((), ()), LevelMap.identity()

    # leaf coordinate intervals on the outer side-end, in interval order
    leaf_spans: list[tuple[float, float]] = []
    for p in closure.base_points:
        member = next(m for m in p.members if surface.side_end_of(m) == end)
        iv = surface.interval(member)
        lo, hi = iv.effective_endpoints()
        if not (math.isfinite(lo) and math.isfinite(hi)):
            lo, hi = 2.0 * iv.index, 2.0 * iv.index + 1.0
        leaf_spans.append((lo, hi))

    gap = 0.5 / (k + 1)
    heights = gap / 2.0
    d_levels = [-1.0 + 0.5 * (k - i) / (k + 1) for i in range(k)]
    min_gap = min(
        (leaf_spans[i + 1][0] - leaf_spans[i][1] for i in range(k - 1)),
        default=math.inf,
    )
    kappa = min(0.1, 0.4 * min_gap) if min_gap > 0 else 0.0

    collars: list[Trapezoid] = []
    crumpled: list[tuple[PLFunction, PLFunction]] = []
    for i, (L, R) in enumerate(leaf_spans):
        w = R - L
        scale = 8.0 * heights / w
        wedge = PLFunction((L, (L + R) / 2.0, R), (0.0, scale * w / 2.0, 0.0))
        trap = trapezoid_under_clearance(wedge, L, R, depth)
        collars.append(trap)
        shear = kappa if i % 2 == 0 else -kappa
        d_i = d_levels[i]
        stretch = (d_i + 1.0) / trap.top

        def to_chart(curve: PLFunction) -> PLFunction:
            bps = tuple(-1.0 + t * stretch for t in curve.breakpoints)
            vals = tuple(
                v + shear * (t / trap.top)
                for t, v in zip(curve.breakpoints, curve.values)
            )
            return PLFunction(bps, vals, Tail.CONSTANT, Tail.CONSTANT)

        crumpled.append((to_chart(trap.alpha), to_chart(trap.beta)))

    staged = []
    for i in range(k):
        a_curve, b_curve = crumpled[i]
        staged.append((a_curve, d_levels[i]))
        staged.append((b_curve, d_levels[i]))
    straighten = rectify_stages(staged, floor=-1.0, samples=samples)

    rect_spans = []
    for i in range(k):
        a_curve, b_curve = crumpled[i]
        d_i = d_levels[i]
        a_i = straighten.apply(a_curve(d_i), d_i)[0]
        b_i = straighten.apply(b_curve(d_i), d_i)[0]
        rect_spans.append((a_i, b_i))
    chart = HalfStripChart(
        tuple((a, b, d) for (a, b), d in zip(rect_spans, d_levels)),
        tuple(rect_spans),
    )

    pieces: list[Piece] = []
    for i in range(k):
        a_i, b_i = rect_spans[i]
        d_i = d_levels[i]
        trap = collars[i]
        shear = kappa if i % 2 == 0 else -kappa
        h_i = trap.top
        rect = Trapezoid(
            PLFunction.constant(a_i),
            PLFunction.constant(b_i),
            (-1.0, d_i),
            base=(a_i, b_i),
        )
        sig = PLFunction((-1.0, d_i), (0.0, h_i))
        xi = roof_homeo(rect, trap, sig)

        def make_piece(a_i=a_i, b_i=b_i, d_i=d_i, trap=trap, shear=shear, h_i=h_i, xi=xi):
            # the composite level map is the identity by construction; pass the
            # level through verbatim instead of round-tripping it through the
            # collar parametrization
            def psi_inv(X: float, Y: float) -> tuple[float, float]:
                t = (Y + 1.0) * h_i / (d_i + 1.0)
                return (X - shear * (t / h_i), t)

            def forward(x: float, y: float) -> tuple[float, float]:
                xx, t = xi.apply(x, y)
                return (xx + shear * (t / h_i), y)

            def backward(X: float, Y: float) -> tuple[float, float]:
                return (xi.invert(*psi_inv(X, Y))[0], Y)

            def region(x: float, y: float) -> bool:
                if y == -1.0:
                    return a_i < x < b_i
                return -1.0 < y <= d_i and a_i <= x <= b_i

            def target_region(X: float, Y: float) -> bool:
                x, t = psi_inv(X, Y)
                return trap.contains_closed(x, t, tol=1e-12)

            return Piece(
                forward,
                lambda y: y,
                region=region,
                backward=backward,
                target_region=target_region,
            )

        pieces.append(make_piece())

    def z_region(x: float, y: float) -> bool:
        return -1.0 < y <= 0.0

    pieces.append(
        Piece(
            lambda x, y: straighten.invert(x, y),
            lambda y: y,
            region=z_region,
            backward=lambda x, y: straighten.apply(x, y),
        )
    )
    return chart, LevelMap(pieces)
