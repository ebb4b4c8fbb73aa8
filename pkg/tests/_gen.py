"""Random and exhaustive surface generation for the test suite."""

from __future__ import annotations

import random
from itertools import product

from stripfol.core import (
    Orientation,
    Side,
    StripedSurface,
    build_surface,
    components,
    glue,
    strip,
)


def random_surface(
    rng: random.Random,
    max_strips: int = 6,
    max_intervals: int = 4,
    p_glue: float = 0.7,
    connected: bool = True,
) -> StripedSurface:
    """A valid random surface; with connected=True, its largest component."""
    n = rng.randint(1, max_strips)
    strips = []
    pool: list[tuple[str, str]] = []  # (interval id, "strip:side")
    for i in range(n):
        sid = f"s{i}"
        lower = [f"{sid}.l{k}" for k in range(rng.randint(0, max_intervals))]
        upper = [f"{sid}.u{k}" for k in range(rng.randint(0, max_intervals))]
        strips.append(strip(sid, lower, upper))
        pool += [(iid, f"{sid}:l") for iid in lower]
        pool += [(iid, f"{sid}:u") for iid in upper]

    rng.shuffle(pool)
    gluings = []
    gi = 0
    while len(pool) >= 2:
        a, a_end = pool.pop()
        if rng.random() > p_glue:
            continue
        candidates = [t for t in pool if t[1] != a_end]
        if not candidates:
            continue
        b, _ = candidates[rng.randrange(len(candidates))]
        pool = [t for t in pool if t[0] != b]
        flag = Orientation.PRESERVING if rng.random() < 0.5 else Orientation.REVERSING
        gluings.append(glue(f"g{gi}", a, b, flag))
        gi += 1

    surface = build_surface(strips, gluings)
    if connected:
        pieces = components(surface)
        surface = max(pieces, key=lambda p: len(p.strips))
    return surface


def random_connected_corpus(seed: int, count: int, **kw) -> list[StripedSurface]:
    rng = random.Random(seed)
    return [random_surface(rng, **kw) for _ in range(count)]


def enumerate_cycle_surfaces(max_strips: int = 3) -> list[StripedSurface]:
    """Every ring of 1..max_strips strips glued side-to-side around a cycle.

    Each strip contributes one interval per side; every choice of entry side
    per strip and orientation flag per seam appears exactly once.
    """
    out = []
    for flag in (Orientation.PRESERVING, Orientation.REVERSING):
        out.append(
            build_surface(
                [strip("s0", ["s0.l"], ["s0.u"])], [glue("g0", "s0.l", "s0.u", flag)]
            )
        )
    for m in range(2, max_strips + 1):
        for entries in product((Side.LOWER, Side.UPPER), repeat=m):
            for flags in product(
                (Orientation.PRESERVING, Orientation.REVERSING), repeat=m
            ):
                strips = [strip(f"s{i}", [f"s{i}.l"], [f"s{i}.u"]) for i in range(m)]
                gluings = []
                for i in range(m):
                    j = (i + 1) % m
                    exit_side = entries[i].other
                    tag = "l" if exit_side is Side.LOWER else "u"
                    enter_tag = "l" if entries[j] is Side.LOWER else "u"
                    gluings.append(
                        glue(f"g{i}", f"s{i}.{tag}", f"s{j}.{enter_tag}", flags[i])
                    )
                out.append(build_surface(strips, gluings))
    return out


def random_moves(rng: random.Random, surface: StripedSurface, count: int) -> StripedSurface:
    """Apply a random sequence of admissible moves (relabel, h-flip, v-flip)."""
    from stripfol.decomposition import h_flip, relabel_strips, v_flip

    out = surface
    for _ in range(count):
        kind = rng.randrange(3)
        sid = rng.choice(out.strip_ids())
        if kind == 0:
            out = h_flip(out, sid)
        elif kind == 1:
            out = v_flip(out, sid)
        else:
            ids = list(out.strip_ids())
            shuffled = ids[:]
            rng.shuffle(shuffled)
            out = relabel_strips(out, {a: "tmp_" + b for a, b in zip(ids, shuffled)})
            out = relabel_strips(
                out, {"tmp_" + b: b for b in shuffled}
            )
    return out
