"""Winding numbers of points about closed PL loops.

The exact routine counts signed crossings of a straight ray; the float
routine sums turning angles and exists only as an independent cross-check.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .geometry import PLPath, Point, Segment, point_on_segment


class PointOnTraceError(ValueError):
    """The query point lies on the loop, so its winding number is undefined."""


@dataclass(frozen=True)
class LoopPolyline:
    """Closed polyline; the edge from the last vertex back to the first is implied."""

    vertices: tuple[Point, ...]

    def __post_init__(self):
        verts = tuple(self.vertices)
        object.__setattr__(self, "vertices", verts)
        if len(verts) < 2:
            raise ValueError("a loop needs at least two vertices")
        for i, v in enumerate(verts):
            if v == verts[i - 1]:
                raise ValueError(f"repeated consecutive loop vertex {v}")

    def segments(self) -> list[Segment]:
        vs = self.vertices
        return [Segment(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def reversed(self) -> "LoopPolyline":
        return LoopPolyline(self.vertices[::-1])

    def repeated(self, times: int) -> "LoopPolyline":
        return LoopPolyline(self.vertices * times)


@dataclass(frozen=True)
class WindingResult:
    value: int
    ray_used: tuple[Fraction, Fraction]
    crossing_log: tuple[tuple[int, int], ...]

    def as_dict(self) -> dict:
        return {
            "value": self.value,
            "ray": [str(c) for c in self.ray_used],
            "crossings": [list(c) for c in self.crossing_log],
        }


def loop_of(first: PLPath, second: PLPath) -> LoopPolyline:
    """The closed loop ``first^- * second`` of two paths with common endpoints."""
    if first.start != second.start or first.end != second.end:
        raise ValueError(f"paths {first.label} and {second.label} do not share both endpoints")
    return LoopPolyline(first.vertices[::-1] + second.vertices[1:-1])


def _check_off_trace(loop: LoopPolyline, x: Point) -> None:
    for i, s in enumerate(loop.segments()):
        if point_on_segment(x, s):
            raise PointOnTraceError(f"point {x} lies on loop edge {i} ({s.p} -> {s.q})")


def ray_directions():
    """Candidate ray directions (1,0), (1,1), (1,2), ... in trial order."""
    k = 0
    while True:
        yield (Fraction(1), Fraction(k))
        k += 1


def _side(d, v: Point, x: Point):
    return d[0] * (v.y - x.y) - d[1] * (v.x - x.x)


def _direction_ok(d, vertices: Sequence[Point], x: Point) -> bool:
    for v in vertices:
        if _side(d, v, x) == 0 and d[0] * (v.x - x.x) + d[1] * (v.y - x.y) > 0:
            return False
    return True


def choose_ray(loop: LoopPolyline, x: Point, skip: int = 0):
    """First admissible direction, after skipping ``skip`` admissible ones."""
    for d in ray_directions():
        if _direction_ok(d, loop.vertices, x):
            if skip == 0:
                return d
            skip -= 1


def _signed_crossings(segments, indices, d, x: Point):
    log = []
    for i in indices:
        u, w = segments[i]
        su = _side(d, u, x)
        sw = _side(d, w, x)
        if (su > 0 and sw < 0) or (su < 0 and sw > 0):
            den = sw - su  # = d x (w - u)
            ahead = (u.x - x.x) * (w.y - u.y) - (u.y - x.y) * (w.x - u.x)
            if (ahead > 0) == (den > 0) and ahead != 0:
                log.append((i, 1 if den > 0 else -1))
    return log


def winding_number(loop: LoopPolyline, x: Point, direction=None, skip: int = 0) -> WindingResult:
    """Exact winding number of ``x`` about ``loop`` by signed ray crossings.

    ``direction`` forces a ray (it must be admissible); otherwise the first
    admissible direction in :func:`ray_directions` order is used, after
    skipping ``skip`` admissible ones.
    """
    _check_off_trace(loop, x)
    if direction is None:
        d = choose_ray(loop, x, skip)
    else:
        d = (Fraction(direction[0]), Fraction(direction[1]))
        if d == (0, 0) or not _direction_ok(d, loop.vertices, x):
            raise ValueError(f"ray direction {direction} passes through a loop vertex")
    segs = loop.segments()
    log = _signed_crossings(segs, range(len(segs)), d, x)
    return WindingResult(sum(s for _, s in log), d, tuple(log))


def winding_number_float(loop: LoopPolyline, x: Point) -> float:
    """Total turned angle of ``loop`` seen from ``x``, divided by 2*pi."""
    _check_off_trace(loop, x)
    px, py = float(x.x), float(x.y)
    vs = [(float(v.x) - px, float(v.y) - py) for v in loop.vertices]
    total = 0.0
    for i in range(len(vs)):
        ax, ay = vs[i - 1]
        bx, by = vs[i]
        total += math.atan2(ax * by - ay * bx, ax * bx + ay * by)
    return total / (2 * math.pi)


class WindingIndex:
    """Answers many exact winding queries against one fixed loop.

    Segments are bucketed by the range of ``y - k*x`` they span for each ray
    slope ``k`` in use, so a query only inspects segments its ray line can
    meet.  Results are identical to :func:`winding_number`.
    """

    def __init__(self, loop: LoopPolyline, bins: int = 256):
        self.loop = loop
        self.segments = loop.segments()
        self.bins = bins
        self._by_slope: dict[Fraction, tuple] = {}
        xs = [v.x for v in loop.vertices]
        ys = [v.y for v in loop.vertices]
        self.bbox = (min(xs), min(ys), max(xs), max(ys))

    def _table(self, k: Fraction):
        table = self._by_slope.get(k)
        if table is None:
            keys = [v.y - k * v.x for v in self.loop.vertices]
            lo, hi = min(keys), max(keys)
            width = (hi - lo) / self.bins or Fraction(1)
            buckets: list[list[int]] = [[] for _ in range(self.bins + 1)]
            n = len(keys)
            for i in range(n):
                a, b = keys[i], keys[(i + 1) % n]
                if a > b:
                    a, b = b, a
                for cell in range(int((a - lo) // width), int((b - lo) // width) + 1):
                    buckets[min(cell, self.bins)].append(i)
            vertex_keys: dict[Fraction, list[Point]] = {}
            for v, key in zip(self.loop.vertices, keys):
                vertex_keys.setdefault(key, []).append(v)
            table = (lo, hi, width, buckets, vertex_keys)
            self._by_slope[k] = table
        return table

    def query(self, x: Point) -> WindingResult:
        for d in ray_directions():
            k = d[1]
            lo, hi, width, buckets, vertex_keys = self._table(k)
            key = x.y - k * x.x
            blocked = any(v.x > x.x for v in vertex_keys.get(key, ()))
            if blocked:
                continue
            if key < lo or key > hi:
                # ray line misses every segment, so x cannot be on the trace either
                return WindingResult(0, d, ())
            cand = buckets[min(int((key - lo) // width), self.bins)]
            for i in cand:
                if point_on_segment(x, self.segments[i]):
                    raise PointOnTraceError(f"point {x} lies on loop edge {i}")
            log = _signed_crossings(self.segments, sorted(cand), d, x)
            return WindingResult(sum(s for _, s in log), d, tuple(log))
        raise AssertionError("unreachable")
