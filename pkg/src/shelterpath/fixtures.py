"""Small hand-built instances with known answers, plus a seeded random generator."""
from __future__ import annotations

import random
from fractions import Fraction

from .cantor import BasedLoop, CantorPath, ConcatSpec
from .geometry import Instance, PLPath, pt, validate_general_position


def _instance(a, b, c) -> Instance:
    return Instance(pt(*a[0]), pt(*a[-1]),
                    (PLPath.of(a, "a"), PLPath.of(b, "b"), PLPath.of(c, "c")))


def nested_arcs() -> Instance:
    """Three disjoint arcs; b runs between a (above) and c (below)."""
    return _instance([(0, 0), (2, 2), (4, 0)],
                     [(0, 0), (2, 1), (4, 0)],
                     [(0, 0), (2, -1), (4, 0)])


def x_crossing() -> Instance:
    """a and b cross once at (2, 0); c arches high above both."""
    return _instance([(0, 0), (1, 1), (3, -1), (4, 0)],
                     [(0, 0), (1, -1), (3, 1), (4, 0)],
                     [(0, 0), (2, 3), (4, 0)])


def zero_winding_pocket() -> Instance:
    """c runs clockwise around a big box, then loops back anticlockwise round an
    inner box closed by a self-crossing.  The inner box is a bounded face of
    b and c with winding 0, and a passes through it."""
    return _instance([(0, 0), (5, 3), (10, 0)],
                     [(0, 0), (5, -1), (10, 0)],
                     [(0, 0), (0, 10), (10, 10), (10, 5), (3, 5), (3, 2), (7, 2),
                      (7, 8), (9, 8), (9, 1), (10, 0)])


def double_winding() -> Instance:
    """Like the pocket, but the inner loop turns the same way as the outer one,
    so a crosses a region of winding -2."""
    return _instance([(0, 0), (5, "13/2"), (10, 0)],
                     [(0, 0), (5, -1), (10, 0)],
                     [(0, 0), (0, 10), (10, 10), (10, 5), (3, 5), (3, 8), (7, 8),
                      (7, 2), (9, 2), (9, 1), (10, 0)])


def triple_point() -> Instance:
    """All three paths pass through (2, 1): not in general position."""
    return _instance([(0, 0), (1, 0), (3, 2), (4, 0)],
                     [(0, 0), (1, 2), (3, 0), (4, 0)],
                     [(0, 0), (0, 1), (4, 1), (4, 0)])


CANONICAL = {
    "nested-arcs": nested_arcs,
    "x-crossing": x_crossing,
    "zero-winding-pocket": zero_winding_pocket,
    "double-winding": double_winding,
    "triple-point": triple_point,
}


def random_instance(rng: random.Random, max_segments: int = 10, size: int = 12,
                    grid: int = 64, max_tries: int = 1000) -> Instance:
    """Three random polylines from A to B with vertices on a 1/grid lattice,
    redrawn until in general position."""
    def coord(lo: int, hi: int) -> Fraction:
        return Fraction(rng.randint(lo * grid, hi * grid), grid)

    for _ in range(max_tries):
        A = (0, coord(-size // 2, size // 2))
        B = (size, coord(-size // 2, size // 2))
        paths = []
        for _label in "abc":
            n = rng.randint(1, max_segments)
            inner = [(coord(-2, size + 2), coord(-size, size)) for _ in range(n - 1)]
            paths.append([A, *inner, B])
        try:
            inst = _instance(*paths)
        except ValueError:
            continue
        if validate_general_position(inst).ok:
            return inst
    raise RuntimeError("no general-position instance found")


def random_instances(count: int, seed: int = 0, **kw) -> list[Instance]:
    rng = random.Random(seed)
    return [random_instance(rng, **kw) for _ in range(count)]


def comb_concat(depth: int, n_loops: int = 63) -> ConcatSpec:
    """Horizontal base arc with ``n_loops`` triangular loops, alternately above
    and below it, halving in size with each level of the concatenation tree."""
    bases = [pt(2 * i + 1, 0) for i in range(n_loops)]
    arc = (pt(0, 0), pt(2 * n_loops, 0))
    probe = [BasedLoop(x, (pt(x.x, 1), pt(x.x + 1, 1))) for x in bases]
    levels = CantorPath(ConcatSpec(arc, tuple(probe), 0)).levels
    loops = []
    for i, x in enumerate(bases):
        size = Fraction(1, 2 ** levels[i]) * (1 if i % 2 == 0 else -1)
        loops.append(BasedLoop(x, (pt(x.x, size), pt(x.x + abs(size) / 2, size))))
    return ConcatSpec(arc, tuple(loops), depth)
