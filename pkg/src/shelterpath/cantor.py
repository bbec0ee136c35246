"""Concatenating a base arc with countably many based loops, Cantor style.

The parameter interval is split into thirds recursively along a balanced
binary tree of the loops (sorted by where they sit on the arc).  The middle
third of a node carries its loop; the outer thirds carry the arc pieces on
either side.  At finite depth ``k`` only loops on tree levels ``< k`` are
traversed, the rest are replaced by a pause at their basepoint, so the
parameterisation never changes between depths and successive depths differ
only on the newly activated middle thirds.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .geometry import PLPath, Point, Segment, iter_segment_hits, lerp, point_on_segment


class ConcatError(ValueError):
    pass


@dataclass(frozen=True)
class BasedLoop:
    """Closed polyline starting and ending at ``base``; ``vertices`` excludes the base."""

    base: Point
    vertices: tuple[Point, ...]

    def points(self) -> list[Point]:
        return [self.base, *self.vertices, self.base]

    def diameter(self) -> float:
        pts = [(float(p.x), float(p.y)) for p in self.points()]
        return max(math.dist(p, q) for p in pts for q in pts)


@dataclass(frozen=True)
class ConcatSpec:
    arc: tuple[Point, ...]
    loops: tuple[BasedLoop, ...]
    depth: int

    def __post_init__(self):
        object.__setattr__(self, "arc", tuple(self.arc))
        object.__setattr__(self, "loops", tuple(self.loops))
        if len(self.arc) < 2:
            raise ConcatError("base arc needs two vertices")
        if self.depth < 0:
            raise ConcatError("depth must be non-negative")


def arc_parameter(arc: Sequence[Point], x: Point) -> Fraction:
    """Position of ``x`` on the polyline as segment index plus fraction."""
    for i in range(len(arc) - 1):
        s = Segment(arc[i], arc[i + 1])
        if point_on_segment(x, s):
            dx, dy = s.q.x - s.p.x, s.q.y - s.p.y
            t = (x.x - s.p.x) / dx if dx else (x.y - s.p.y) / dy
            return i + Fraction(t)
    raise ConcatError(f"basepoint {x} is not on the base arc")


def arc_point(arc: Sequence[Point], s: Fraction) -> Point:
    i = min(int(s), len(arc) - 2)
    return lerp(arc[i], arc[i + 1], s - i)


def _arc_vertices(arc: Sequence[Point], s0: Fraction, s1: Fraction) -> list[Point]:
    """Arc points from parameter s0 to s1, inclusive, with interior bends."""
    inner = [arc[i] for i in range(math.floor(s0) + 1, math.ceil(s1))]
    return [arc_point(arc, s0), *inner, arc_point(arc, s1)]


@dataclass
class _Node:
    loop: int
    level: int
    left: "_Node | None"
    right: "_Node | None"


def _build_tree(order: list[int], level: int = 0):
    if not order:
        return None
    mid = len(order) // 2
    return _Node(order[mid], level, _build_tree(order[:mid], level + 1),
                 _build_tree(order[mid + 1:], level + 1))


class CantorPath:
    """The finite-depth concatenation; evaluate with :meth:`at` or take :meth:`polyline`."""

    def __init__(self, spec: ConcatSpec):
        self.spec = spec
        arc = spec.arc
        params = [arc_parameter(arc, lp.base) for lp in spec.loops]
        end = Fraction(len(arc) - 1)
        for i, s in enumerate(params):
            if not 0 < s < end:
                raise ConcatError(f"basepoint of loop {i} is an arc endpoint")
        order = sorted(range(len(params)), key=lambda i: params[i])
        for i, j in zip(order, order[1:]):
            if params[i] == params[j]:
                raise ConcatError(f"loops {i} and {j} share a basepoint")
        self.params = params
        self.tree = _build_tree(order)
        self.levels: dict[int, int] = {}
        self._levels(self.tree)

    def _levels(self, node):
        if node is not None:
            self.levels[node.loop] = node.level
            self._levels(node.left)
            self._levels(node.right)

    def active(self) -> list[int]:
        """Loops traversed at this depth, in breadth-first tree order."""
        return sorted((i for i, lv in self.levels.items() if lv < self.spec.depth),
                      key=lambda i: (self.levels[i], self.params[i]))

    def intervals(self) -> dict[int, tuple[Fraction, Fraction]]:
        """Parameter interval carrying each active loop."""
        out: dict[int, tuple[Fraction, Fraction]] = {}

        def walk(node, t0, t1):
            if node is None:
                return
            d = (t1 - t0) / 3
            if node.level < self.spec.depth:
                out[node.loop] = (t0 + d, t0 + 2 * d)
            walk(node.left, t0, t0 + d)
            walk(node.right, t0 + 2 * d, t1)

        walk(self.tree, Fraction(0), Fraction(1))
        return out

    def at(self, t) -> Point:
        """beta(t) for t in [0, 1]."""
        t = Fraction(t)
        arc, depth = self.spec.arc, self.spec.depth
        node = self.tree
        s0, s1 = Fraction(0), Fraction(len(arc) - 1)
        t0, t1 = Fraction(0), Fraction(1)
        while node is not None:
            d = (t1 - t0) / 3
            sx = self.params[node.loop]
            if t <= t0 + d:
                node, s1, t1 = node.left, sx, t0 + d
            elif t >= t0 + 2 * d:
                node, s0, t0 = node.right, sx, t0 + 2 * d
            else:
                lp = self.spec.loops[node.loop]
                if node.level >= depth:
                    return lp.base
                return _along(lp.points(), (t - t0 - d) / d)
        return arc_point(arc, s0 + (s1 - s0) * (t - t0) / (t1 - t0))

    def pieces(self) -> list[tuple[str, int, list[Point]]]:
        """Consecutive pieces ("arc", -1, pts) and ("loop", i, pts) in traversal order."""
        out: list[tuple[str, int, list[Point]]] = []
        arc, depth = self.spec.arc, self.spec.depth

        def walk(node, s0, s1):
            if node is None:
                out.append(("arc", -1, _arc_vertices(arc, s0, s1)))
                return
            sx = self.params[node.loop]
            walk(node.left, s0, sx)
            if node.level < depth:
                out.append(("loop", node.loop, self.spec.loops[node.loop].points()))
            walk(node.right, sx, s1)

        walk(self.tree, Fraction(0), Fraction(len(arc) - 1))
        return out

    def polyline(self, label: str = "a") -> PLPath:
        pts: list[Point] = []
        for _, _, piece in self.pieces():
            for p in piece:
                if not pts or pts[-1] != p:
                    pts.append(p)
        return PLPath(tuple(pts), label)


def _along(points: Sequence[Point], u: Fraction) -> Point:
    """Point a fraction ``u`` through a polyline, each segment taking equal time."""
    n = len(points) - 1
    i = min(int(u * n), n - 1)
    return lerp(points[i], points[i + 1], u * n - i)


def check_disjoint(spec: ConcatSpec) -> None:
    """Loops may meet the arc only at their own basepoint and never each other."""
    pieces = [PLPath(spec.arc, "arc")]
    pieces += [PLPath(tuple(lp.points()), f"loop{i}") for i, lp in enumerate(spec.loops)]
    segs, owners, hits = iter_segment_hits(pieces)
    for i, j, res in hits:
        oi, oj = owners[i][0], owners[j][0]
        if oi == oj:
            continue
        if "arc" in (oi, oj):
            k = int((oj if oi == "arc" else oi)[4:])
            if res.point == spec.loops[k].base:
                continue
            raise ConcatError(f"loop {k} meets the base arc away from its basepoint at {res.point}")
        raise ConcatError(f"{oi} and {oj} overlap at {res.point}")


def cantor_concatenate(spec: ConcatSpec, label: str = "a", check: bool = True) -> PLPath:
    if check:
        check_disjoint(spec)
    return CantorPath(spec).polyline(label)


def sup_distance(p: CantorPath, q: CantorPath, samples: int = 10_000) -> float:
    worst = 0.0
    for j in range(samples + 1):
        t = Fraction(j, samples)
        a, b = p.at(t), q.at(t)
        worst = max(worst, math.hypot(float(a.x - b.x), float(a.y - b.y)))
    return worst
