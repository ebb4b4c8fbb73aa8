import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stripfol.decomposition import Mode, component_closures, decompose
from stripfol.fixtures import horseshoe, kaplan5, open_strip
from stripfol.homeo import (
    BadEpsError,
    BadIntervalError,
    GraphsIntersectError,
    LevelRangeMismatchError,
    NonIncreasingInputError,
    NotOpenStripComponentError,
    PLFunction,
    Trapezoid,
    rectify_finite,
    rectify_stages,
    realize_half_strip,
    roof_homeo,
    shrink_leaf,
    trapezoid_under_clearance,
    uk_eval,
    uk_inverse,
)

TOL = 1e-9


# ---------------------------------------------------------------------------
# u_k


def test_uk_worked_values():
    assert uk_eval(5, [2], [0]) == 3
    assert uk_eval(3, [1, 5], [0, 2]) == 1
    assert uk_eval(7, [1, 2], [1, 2]) == 7


def test_uk_hits_breakpoints_exactly():
    y = [-2.0, 0.5, 3.0, 7.5]
    q = [-5.0, -1.0, 0.0, 2.0]
    for yi, qi in zip(y, q):
        assert uk_eval(yi, y, q) == qi


def test_uk_rejects_non_increasing():
    with pytest.raises(NonIncreasingInputError):
        uk_eval(0, [1, 1], [0, 2])
    with pytest.raises(NonIncreasingInputError):
        uk_eval(0, [1, 2], [3, 3])
    with pytest.raises(NonIncreasingInputError):
        uk_eval(0, [], [])


increasing_lists = st.integers(1, 5).flatmap(
    lambda k: st.tuples(
        st.lists(
            st.floats(-50, 50, allow_nan=False), min_size=k, max_size=k, unique=True
        ),
        st.lists(
            st.floats(-50, 50, allow_nan=False), min_size=k, max_size=k, unique=True
        ),
    )
)


@settings(max_examples=200, deadline=None)
@given(increasing_lists, st.floats(-100, 100), st.floats(-100, 100))
def test_uk_strictly_increasing_and_invertible(yq, x1, x2):
    y, q = sorted(yq[0]), sorted(yq[1])
    if any(b - a < 1e-9 for a, b in zip(y, y[1:])):
        return
    if any(b - a < 1e-9 for a, b in zip(q, q[1:])):
        return
    if abs(x1 - x2) < 1e-9:
        return
    lo, hi = min(x1, x2), max(x1, x2)
    assert uk_eval(lo, y, q) < uk_eval(hi, y, q)
    assert abs(uk_inverse(uk_eval(x1, y, q), y, q) - x1) < 1e-6


@settings(max_examples=100, deadline=None)
@given(
    st.lists(st.floats(-20, 20, allow_nan=False), min_size=1, max_size=4, unique=True),
    st.floats(-40, 40),
)
def test_uk_identity_when_parameters_match(ys, x):
    y = sorted(ys)
    if any(b - a < 1e-9 for a, b in zip(y, y[1:])):
        return
    assert uk_eval(x, y, y) == x


# ---------------------------------------------------------------------------
# rectification


def test_rectify_finite_worked_values():
    m = rectify_finite([lambda y: y], s=1.0, c=0.0)
    assert m.apply(0.5, 0.5) == (1.0, 0.5)
    assert m.apply(0.0, 0.5) == (0.5, 0.5)
    for x in (-3.0, 0.0, 2.5):
        assert m.apply(x, 1.0) == (x, 1.0)


def test_rectify_finite_drives_graphs_vertical():
    funcs = [lambda y: y, lambda y: 2 + 0.5 * math.sin(3 * y), lambda y: -3 + y * y]
    m = rectify_finite(funcs, s=1.0, c=0.0, samples=128)
    for f in funcs:
        target = f(1.0)
        for i in range(1, 40):
            y = i / 40
            X, Y = m.apply(f(y), y)
            assert abs(X - target) < TOL
            assert Y == y


def test_rectify_finite_monotone_per_level():
    funcs = [lambda y: y, lambda y: y + 1]
    m = rectify_finite(funcs, s=1.0, c=0.0)
    rng = random.Random(0)
    for _ in range(200):
        y = rng.uniform(0.01, 1.0)
        a, b = sorted((rng.uniform(-5, 5), rng.uniform(-5, 5)))
        if b - a < 1e-9:
            continue
        assert m.apply(a, y)[0] < m.apply(b, y)[0]


def test_rectify_finite_detects_intersection():
    with pytest.raises(GraphsIntersectError):
        rectify_finite([lambda y: y, lambda y: 1 - y], s=1.0, c=0.0)


def test_rectify_stages_single_equals_finite():
    f = lambda y: y * y
    staged = rectify_stages([(f, 1.0)], floor=0.0)
    fin = rectify_finite([f], s=1.0, c=0.0)
    rng = random.Random(1)
    for _ in range(100):
        x, y = rng.uniform(-4, 4), rng.uniform(0.01, 1.0)
        a = staged.apply(x, y)
        b = fin.apply(x, y)
        assert abs(a[0] - b[0]) < TOL and a[1] == b[1]


def test_rectify_stages_two_levels():
    f1 = lambda y: 0.2 * math.sin(5 * y)
    f2 = lambda y: 3 + y
    staged = rectify_stages([(f1, 1.0), (f2, 0.5)], floor=0.0, samples=128)
    for i in range(1, 30):
        y = i / 30
        X, _ = staged.apply(f1(y), y)
        assert abs(X - f1(1.0)) < TOL
    q2 = staged.apply(f2(0.5), 0.5)[0]
    for i in range(1, 15):
        y = 0.5 * i / 15
        X, _ = staged.apply(f2(y), y)
        assert abs(X - q2) < TOL


def test_stage_maps_fixed_at_and_above_their_level():
    f1 = lambda y: 0.0
    f2 = lambda y: 5.0 + 2 * y
    staged = rectify_stages([(f1, 1.0), (f2, 0.5)], floor=0.0)
    # the composite above level 0.5 comes from stage one alone, which is the
    # identity at its own level 1.0
    for x in (-2.0, 0.3, 7.0):
        assert staged.apply(x, 1.0) == (x, 1.0)


def test_rectify_stages_empty_is_identity():
    m = rectify_stages([])
    assert m.apply(3.0, -0.7) == (3.0, -0.7)


def test_rectify_inverse_roundtrip():
    staged = rectify_stages(
        [(lambda y: y, 1.0), (lambda y: 4 - 0.5 * y, 0.75)], floor=0.0
    )
    rng = random.Random(2)
    for _ in range(100):
        x, y = rng.uniform(-5, 8), rng.uniform(0.01, 1.0)
        X, Y = staged.apply(x, y)
        x2, y2 = staged.invert(X, Y)
        assert abs(x2 - x) < TOL and y2 == y


# ---------------------------------------------------------------------------
# leaf shrinking


def test_shrink_leaf_worked_values():
    m = shrink_leaf(-1, 1, 1)
    assert m.apply(3, 2) == (3, 2)
    assert m.apply(0, 0) == (0.0, 0)
    x, y = m.apply(1, 0)
    assert abs(x - 0.5) < TOL and y == 0


def test_shrink_leaf_identity_outside_band():
    m = shrink_leaf(0, 2, 0.5)
    for y in (0.5, -0.5, 3.0, -7.0):
        for x in (-10.0, 0.0, 42.0):
            assert m.apply(x, y) == (x, y)


def test_shrink_leaf_level_zero_lands_inside_interval():
    a, b = -2.0, 5.0
    m = shrink_leaf(a, b, 1.0)
    for x in (-1e6, -3.0, 0.0, 17.0, 1e6):
        X, _ = m.apply(x, 0.0)
        assert a < X < b


def test_shrink_leaf_strictly_increasing_and_invertible():
    m = shrink_leaf(-1, 1, 1)
    rng = random.Random(3)
    for _ in range(200):
        y = rng.uniform(-2, 2)
        a, b = sorted((rng.uniform(-8, 8), rng.uniform(-8, 8)))
        if b - a < 1e-9:
            continue
        assert m.apply(a, y)[0] < m.apply(b, y)[0]
    for _ in range(100):
        x, y = rng.uniform(-5, 5), rng.uniform(-2, 2)
        X, Y = m.apply(x, y)
        x2, y2 = m.invert(X, Y)
        assert abs(x2 - x) < TOL and y2 == y


def test_shrink_leaf_rejects_bad_input():
    with pytest.raises(BadIntervalError):
        shrink_leaf(1, 1, 0.5)
    with pytest.raises(BadEpsError):
        shrink_leaf(0, 1, 0.0)


# ---------------------------------------------------------------------------
# trapezoids


def test_trapezoid_under_wedge_clearance():
    wedge = PLFunction((0.0, 0.5, 1.0), (0.0, 0.5, 0.0))
    t = trapezoid_under_clearance(wedge, 0.0, 1.0, 3)
    assert abs(t.top - 1 / 16) < 1e-15
    a, b, d = t.upper_base()
    assert (a, b, d) == (0.25, 0.75, t.top)
    assert t.base == (0.0, 1.0)


def test_trapezoid_under_constant_clearance():
    t = trapezoid_under_clearance(PLFunction.constant(1.0), 0.0, 1.0, 1)
    assert t.top == 0.5
    a, b, _ = t.upper_base()
    assert (a, b) == (0.25, 0.75)


def test_trapezoid_containment_sampling():
    rng = random.Random(4)
    clearances = [
        PLFunction((0.0, 0.5, 1.0), (0.0, 0.5, 0.0)),
        PLFunction.constant(1.0),
        PLFunction((0.0, 0.2, 0.6, 1.0), (0.0, 0.9, 0.05, 0.0)),
    ]
    for cl in clearances:
        t = trapezoid_under_clearance(cl, 0.0, 1.0, 5)
        for _ in range(10_000 // len(clearances)):
            y = rng.uniform(1e-9, t.top)
            x = rng.uniform(t.alpha(y), t.beta(y))
            assert y < cl(x)


def test_trapezoid_rejects_nonpositive_clearance():
    from stripfol.homeo import NonPositiveClearanceError

    dip = PLFunction((0.0, 0.5, 1.0), (1.0, -0.1, 1.0))
    with pytest.raises(NonPositiveClearanceError):
        trapezoid_under_clearance(dip, 0.0, 1.0, 2)
    with pytest.raises(BadIntervalError):
        trapezoid_under_clearance(PLFunction.constant(1.0), 0.0, math.inf, 2)


# ---------------------------------------------------------------------------
# roof extension


def _rect(a, b, c, d):
    return Trapezoid(
        PLFunction.constant(a), PLFunction.constant(b), (c, d), base=(a, b)
    )


def test_roof_homeo_worked_values():
    m = roof_homeo(_rect(0, 1, 0, 1), _rect(2, 4, 0, 2), lambda y: 2 * y)
    assert m.apply(0.5, 0.5) == (3.0, 1.0)
    assert m.apply(0.0, 1.0) == (2.0, 2.0)


def test_roof_homeo_identity():
    s = _rect(0, 1, 0, 1)
    m = roof_homeo(s, s)
    rng = random.Random(5)
    for _ in range(50):
        x, y = rng.uniform(0, 1), rng.uniform(0.01, 1)
        X, Y = m.apply(x, y)
        assert abs(X - x) < TOL and abs(Y - y) < TOL


def test_roof_homeo_maps_roof_to_roof():
    wedge = PLFunction((0.0, 0.5, 1.0), (0.0, 0.5, 0.0))
    src = trapezoid_under_clearance(wedge, 0.0, 1.0, 4)
    dst = _rect(3, 5, 0, src.top * 2)
    m = roof_homeo(src, dst, lambda y: 2 * y)
    for x, y in src.roof_samples(48):
        X, Y = m.apply(x, y)
        on_left = abs(X - dst.alpha(Y)) < TOL
        on_right = abs(X - dst.beta(Y)) < TOL
        on_top = abs(Y - dst.top) < TOL and dst.alpha(Y) - TOL <= X <= dst.beta(Y) + TOL
        assert on_left or on_right or on_top


def test_roof_homeo_extends_to_closed_bases():
    m = roof_homeo(_rect(0, 1, 0, 1), _rect(2, 4, 0, 2), lambda y: 2 * y)
    assert m.apply(0.0, 0.0) == (2.0, 0.0)
    assert m.apply(1.0, 0.0) == (4.0, 0.0)


def test_roof_homeo_level_range_mismatch():
    with pytest.raises(LevelRangeMismatchError):
        roof_homeo(_rect(0, 1, 0, 1), _rect(2, 4, 0, 2), lambda y: y)


# ---------------------------------------------------------------------------
# half-strip realization


def _component(surface, strip_id, side="upper"):
    comps, _ = decompose(surface, Mode.WITH_BOUNDARY)
    comp = next(c for c in comps if strip_id in c.strip_ids())
    lower, upper, _ = component_closures(comp)
    return comp, (lower if side == "lower" else upper)


def test_realize_empty_closure_is_identity():
    s = open_strip()
    comp, closure = _component(s, "A", "lower")
    chart, eta = realize_half_strip(s, comp, closure)
    assert chart.rectangles == ()
    assert eta.apply(2.5, -0.25) == (2.5, -0.25)


def test_realize_rejects_cycles():
    from stripfol.fixtures import cylinder
    from stripfol.decomposition import ClosureStrip
    from stripfol.core import Side

    comps, _ = decompose(cylinder(), Mode.WITH_BOUNDARY)
    with pytest.raises(NotOpenStripComponentError):
        realize_half_strip(cylinder(), comps[0], ClosureStrip((), Side.LOWER))


def test_realize_kaplan5_b_component():
    k = kaplan5()
    comp, closure = _component(k, "B")
    assert [p.id for p in closure.base_points] == ["alpha", "beta"]
    chart, eta = realize_half_strip(k, comp, closure, depth=3, samples=48)
    assert len(chart.rectangles) == 2

    # base intervals land exactly on the leaf coordinates (0,1) and (2,3)
    for (a, b), (lo, hi) in zip(chart.base_intervals, [(0.0, 1.0), (2.0, 3.0)]):
        for frac in (0.001, 0.25, 0.5, 0.75, 0.999):
            X, Y = eta.apply(a + (b - a) * frac, -1.0)
            assert Y == -1.0
            assert lo < X < hi
        left = eta.apply(a + (b - a) * 1e-9, -1.0)[0]
        right = eta.apply(a + (b - a) * (1 - 1e-9), -1.0)[0]
        assert abs(left - lo) < 1e-6 and abs(right - hi) < 1e-6


def test_realize_levels_are_preserved():
    k = kaplan5()
    comp, closure = _component(k, "B")
    _, eta = realize_half_strip(k, comp, closure, depth=3, samples=48)
    rng = random.Random(6)
    for _ in range(1000):
        y = rng.uniform(-0.999, -0.001)
        x = rng.uniform(-3, 6)
        X, Y = eta.apply(x, y)
        assert Y == y


def test_realize_pieces_agree_on_shared_boundaries():
    k = kaplan5()
    comp, closure = _component(k, "B")
    chart, eta = realize_half_strip(k, comp, closure, depth=3, samples=48)
    z_piece = eta.pieces[-1]
    worst = 0.0
    for piece, (a, b, d) in zip(eta.pieces, chart.rectangles):
        for i in range(1, 30):
            y = -1 + (d + 1) * i / 30
            for x in (a, b):
                f1, f2 = piece.forward(x, y), z_piece.forward(x, y)
                worst = max(worst, abs(f1[0] - f2[0]), abs(f1[1] - f2[1]))
        for i in range(31):
            x = a + (b - a) * i / 30
            f1, f2 = piece.forward(x, d), z_piece.forward(x, d)
            worst = max(worst, abs(f1[0] - f2[0]), abs(f1[1] - f2[1]))
    assert worst < TOL


def test_realize_inverse_roundtrip():
    k = kaplan5()
    comp, closure = _component(k, "B")
    chart, eta = realize_half_strip(k, comp, closure, depth=3, samples=48)
    rng = random.Random(7)
    for _ in range(400):
        y = rng.uniform(-0.999, -0.001)
        x = rng.uniform(-3, 6)
        X, Y = eta.apply(x, y)
        x2, y2 = eta.invert(X, Y)
        assert abs(x2 - x) < TOL and abs(y2 - y) < TOL
    for a, b in chart.base_intervals:
        for frac in (0.1, 0.5, 0.9):
            x = a + (b - a) * frac
            X, Y = eta.apply(x, -1.0)
            x2, y2 = eta.invert(X, Y)
            assert abs(x2 - x) < TOL and abs(y2 + 1.0) < TOL


def test_realize_clamps_unbounded_base_leaves():
    from stripfol.core import build_surface, strip

    s = build_surface(
        [strip("A", lower=[("A.l", (float("-inf"), float("inf")))])], []
    )
    comps, _ = decompose(s, Mode.WITH_BOUNDARY)
    (comp,) = comps
    lower, _, _ = component_closures(comp)
    chart, eta = realize_half_strip(s, comp, lower, depth=2, samples=24)
    (span,) = chart.base_intervals
    X, Y = eta.apply(sum(span) / 2, -1.0)
    assert Y == -1.0
    assert 0.0 < X < 1.0  # default coordinates stand in for the full line


def test_realize_horseshoe_merged_chain():
    h = horseshoe()
    comps, _ = decompose(h, Mode.WITH_BOUNDARY)
    (comp,) = comps
    lower, upper, overlap = component_closures(comp)
    assert {p.id for p in overlap} == {"z"}
    chart, eta = realize_half_strip(h, comp, lower, depth=3, samples=32)
    assert len(chart.rectangles) == 2
    for (a, b) in chart.base_intervals:
        X, Y = eta.apply((a + b) / 2, -1.0)
        assert Y == -1.0
