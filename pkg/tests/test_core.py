import math
import random

import pytest

from stripfol.core import (
    BadEndpointsError,
    DoubleGluingError,
    DuplicateIdError,
    SameSideGluingError,
    SelfGluingError,
    Side,
    UnknownIntervalRefError,
    build_surface,
    components,
    glue,
    strip,
    validate_class_f,
)
from stripfol.fixtures import kaplan5, cylinder, open_strip

from _gen import random_surface


def test_kaplan5_builds():
    k = kaplan5()
    assert k.strip_ids() == ("A", "B", "C", "D", "E")
    assert len(k.gluings) == 4
    assert k.interval_location("B.u1") == ("B", Side.UPPER, 1)


def test_empty_strip_is_valid():
    s = open_strip()
    assert s.strips[0].lower == () and s.strips[0].upper == ()


def test_same_side_gluing_rejected():
    with pytest.raises(SameSideGluingError):
        build_surface(
            [strip("A", upper=["u0", "u1"])], [glue("g", "u0", "u1")]
        )


def test_self_gluing_rejected():
    with pytest.raises(SelfGluingError):
        build_surface([strip("A", upper=["u0"])], [glue("g", "u0", "u0")])


def test_double_gluing_rejected():
    with pytest.raises(DoubleGluingError):
        build_surface(
            [strip("A", upper=["u0"]), strip("B", lower=["b0"], upper=["b1"])],
            [glue("g1", "u0", "b0"), glue("g2", "u0", "b1")],
        )


def test_unknown_interval_rejected():
    with pytest.raises(UnknownIntervalRefError):
        build_surface([strip("A", upper=["u0"])], [glue("g", "u0", "nope")])


def test_duplicate_ids_rejected():
    with pytest.raises(DuplicateIdError):
        build_surface([strip("A"), strip("A")], [])
    with pytest.raises(DuplicateIdError):
        build_surface([strip("A", upper=["x"]), strip("B", upper=["x"])], [])


def test_bad_endpoints_rejected():
    with pytest.raises(BadEndpointsError):
        strip_spec = strip("A", upper=[("u0", (3.0, 1.0))])
        build_surface([strip_spec], [])
    with pytest.raises(BadEndpointsError):
        build_surface(
            [strip("A", upper=[("u0", (0.0, 2.0)), ("u1", (1.0, 3.0))])], []
        )


def test_full_line_interval_and_defaults():
    c = cylinder()
    assert c.interval("A.l").effective_endpoints() == (-math.inf, math.inf)
    k = kaplan5()
    assert k.interval("B.u0").effective_endpoints() == (0.0, 1.0)
    assert k.interval("B.u1").effective_endpoints() == (2.0, 3.0)


def test_validate_class_f_kaplan5():
    rep = validate_class_f(kaplan5())
    assert rep.ok and rep.connected
    assert len(rep.glued_leaves) == 4
    assert all(r.distinct for r in rep.glued_leaves)
    assert rep.components == (("A", "B", "C", "D", "E"),)


def test_validate_class_f_cylinder_candidate():
    rep = validate_class_f(cylinder())
    assert rep.ok and rep.connected
    (rec,) = rep.glued_leaves
    assert rec.distinct
    assert set(rec.collar_sides) == {("A", Side.LOWER), ("A", Side.UPPER)}


def test_validate_flags_disconnected():
    s = build_surface([strip("A"), strip("B")], [])
    rep = validate_class_f(s)
    assert not rep.connected
    assert any("Disconnected" in w for w in rep.warnings)
    assert len(rep.components) == 2


def test_components_partition():
    s = build_surface([strip("A"), strip("B")], [])
    parts = components(s)
    assert [p.strip_ids() for p in parts] == [("A",), ("B",)]

    k = kaplan5()
    assert components(k)[0] == k

    # dropping one seam from the kaplan5 chain splits it in two
    k2 = build_surface(k.strips, [g for g in k.gluings if g.id != "beta"])
    parts = components(k2)
    assert sorted(len(p.strips) for p in parts) == [2, 3]
    assert {p.strip_ids() for p in parts} == {("A", "B"), ("C", "D", "E")}


def test_gluing_relation_is_partial_involution():
    rng = random.Random(3)
    for _ in range(50):
        s = random_surface(rng, connected=False)
        seen = {}
        for iv in s.intervals():
            g = s.gluing_of(iv.id)
            if g is None:
                continue
            assert iv.id in g.members() and g.other(iv.id) != iv.id
            seen.setdefault(g.id, []).append(iv.id)
        for ids in seen.values():
            assert len(ids) == 2


def test_nonspecial_gluing_degree_bound():
    # a side can host at most one gluing that is sole on both of its sides
    rng = random.Random(4)
    for _ in range(50):
        s = random_surface(rng, connected=False)
        per_side = {}
        for g in s.gluings:
            e1, e2 = s.side_end_of(g.first), s.side_end_of(g.second)
            sole = all(
                len(s.strip(e[0]).side_intervals(e[1])) == 1 for e in (e1, e2)
            )
            if sole:
                for e in (e1, e2):
                    per_side[e] = per_side.get(e, 0) + 1
        assert all(v == 1 for v in per_side.values())
