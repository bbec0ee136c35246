"""Exact planar primitives: points, segments, polylines and predicates.

All coordinates are :class:`fractions.Fraction`; no predicate in this module
ever touches a float.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple, Sequence

Rational = Fraction

LABELS = ("a", "b", "c")


def rational(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        num, sep, den = text.partition("/")
        try:
            n = int(num)
            d = int(den) if sep else 1
        except ValueError:
            raise ValueError(f"malformed rational {value!r}") from None
        if d == 0:
            raise ValueError(f"zero denominator in {value!r}")
        return Fraction(n, d)
    raise TypeError(f"cannot use {type(value).__name__} as an exact coordinate")


class Point(NamedTuple):
    x: Fraction
    y: Fraction

    def __add__(self, other):  # type: ignore[override]
        return Point(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return Point(self.x - other[0], self.y - other[1])

    def scale(self, k) -> "Point":
        return Point(self.x * k, self.y * k)

    def __repr__(self) -> str:
        return f"Point({self.x}, {self.y})"


def pt(x, y) -> Point:
    return Point(rational(x), rational(y))


def midpoint(p: Point, q: Point) -> Point:
    return Point((p.x + q.x) / 2, (p.y + q.y) / 2)


def lerp(p: Point, q: Point, t) -> Point:
    return Point(p.x + (q.x - p.x) * t, p.y + (q.y - p.y) * t)


class Orientation(enum.IntEnum):
    CW = -1
    COLLINEAR = 0
    CCW = 1


def cross(ox, oy, ax, ay, bx, by):
    return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)


def orient(p: Point, q: Point, r: Point) -> Orientation:
    """Sign of the exact cross product (q - p) x (r - p)."""
    d = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)
    if d > 0:
        return Orientation.CCW
    if d < 0:
        return Orientation.CW
    return Orientation.COLLINEAR


class Segment(NamedTuple):
    p: Point
    q: Point

    def bbox(self):
        return (min(self.p.x, self.q.x), min(self.p.y, self.q.y),
                max(self.p.x, self.q.x), max(self.p.y, self.q.y))


def make_segment(p: Point, q: Point) -> Segment:
    if p == q:
        raise ValueError(f"degenerate segment at {p}")
    return Segment(p, q)


class IntersectionKind(enum.Enum):
    NONE = "none"
    POINT = "point"
    OVERLAP = "overlap"


class Intersection(NamedTuple):
    kind: IntersectionKind
    point: Point | None = None
    interior1: bool = False
    interior2: bool = False


NO_INTERSECTION = Intersection(IntersectionKind.NONE)


def _on_closed_segment(p: Point, q: Point, r: Point) -> bool:
    # r assumed collinear with p, q
    return min(p.x, q.x) <= r.x <= max(p.x, q.x) and min(p.y, q.y) <= r.y <= max(p.y, q.y)


def point_on_segment(r: Point, s: Segment) -> bool:
    return orient(s.p, s.q, r) == 0 and _on_closed_segment(s.p, s.q, r)


def bboxes_overlap(s1: Segment, s2: Segment) -> bool:
    return not (max(s1.p.x, s1.q.x) < min(s2.p.x, s2.q.x)
                or max(s2.p.x, s2.q.x) < min(s1.p.x, s1.q.x)
                or max(s1.p.y, s1.q.y) < min(s2.p.y, s2.q.y)
                or max(s2.p.y, s2.q.y) < min(s1.p.y, s1.q.y))


def segment_intersect(s1: Segment, s2: Segment) -> Intersection:
    """Exact classification of how two closed segments meet."""
    if not bboxes_overlap(s1, s2):
        return NO_INTERSECTION
    p, q = s1
    r, s = s2
    o1, o2 = orient(p, q, r), orient(p, q, s)
    o3, o4 = orient(r, s, p), orient(r, s, q)
    if o1 == o2 == 0:
        # collinear: overlap, single shared endpoint, or disjoint
        shared = [v for v in (r, s) if _on_closed_segment(p, q, v)]
        shared += [v for v in (p, q) if _on_closed_segment(r, s, v) and v not in shared]
        if not shared:
            return NO_INTERSECTION
        if len(shared) == 1:
            hit = shared[0]
            return Intersection(IntersectionKind.POINT, hit, hit not in (p, q), hit not in (r, s))
        return Intersection(IntersectionKind.OVERLAP)
    if o1 * o2 > 0 or o3 * o4 > 0:
        return NO_INTERSECTION
    # proper or touching intersection; compute the point exactly
    dx1, dy1 = q.x - p.x, q.y - p.y
    dx2, dy2 = s.x - r.x, s.y - r.y
    den = dx1 * dy2 - dy1 * dx2
    t = ((r.x - p.x) * dy2 - (r.y - p.y) * dx2) / den
    hit = Point(p.x + t * dx1, p.y + t * dy1)
    return Intersection(IntersectionKind.POINT, hit, hit not in (p, q), hit not in (r, s))


@dataclass(frozen=True)
class PLPath:
    """Oriented polyline; the first vertex is its start, the last its end."""

    vertices: tuple[Point, ...]
    label: str = "a"

    def __post_init__(self):
        verts = tuple(self.vertices)
        object.__setattr__(self, "vertices", verts)
        if len(verts) < 2:
            raise ValueError("a path needs at least two vertices")
        for u, v in zip(verts, verts[1:]):
            if u == v:
                raise ValueError(f"path {self.label}: repeated consecutive vertex {u}")

    @classmethod
    def of(cls, coords: Iterable, label: str = "a") -> "PLPath":
        return cls(tuple(pt(x, y) for x, y in coords), label)

    @property
    def start(self) -> Point:
        return self.vertices[0]

    @property
    def end(self) -> Point:
        return self.vertices[-1]

    def segments(self) -> list[Segment]:
        return [Segment(u, v) for u, v in zip(self.vertices, self.vertices[1:])]

    def reversed(self) -> "PLPath":
        return PLPath(self.vertices[::-1], self.label)

    def __len__(self) -> int:
        return len(self.vertices) - 1


@dataclass(frozen=True)
class Instance:
    A: Point
    B: Point
    paths: tuple[PLPath, PLPath, PLPath]

    def __post_init__(self):
        paths = tuple(self.paths)
        object.__setattr__(self, "paths", paths)
        if self.A == self.B:
            raise ValueError("A and B must differ")
        if sorted(p.label for p in paths) != list(LABELS):
            raise ValueError("an instance needs exactly the paths a, b and c")
        for p in paths:
            if p.start != self.A or p.end != self.B:
                raise ValueError(f"path {p.label} does not run from A to B")

    def path(self, label: str) -> PLPath:
        for p in self.paths:
            if p.label == label:
                return p
        raise KeyError(label)

    def others(self, label: str) -> tuple[PLPath, PLPath]:
        """The two remaining paths, in alphabetical order."""
        rest = [p for p in sorted(self.paths, key=lambda p: p.label) if p.label != label]
        return rest[0], rest[1]

    def bbox(self):
        xs = [v.x for p in self.paths for v in p.vertices]
        ys = [v.y for p in self.paths for v in p.vertices]
        return min(xs), min(ys), max(xs), max(ys)


# ---------------------------------------------------------------------------
# general position


@dataclass(frozen=True)
class Violation:
    kind: str
    location: Point | None
    detail: str

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "location": None if self.location is None else [str(self.location.x), str(self.location.y)],
            "detail": self.detail,
        }


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)
    crossings: list[tuple[Point, tuple[str, int], tuple[str, int]]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}


class GeneralPositionError(ValueError):
    def __init__(self, report: ValidationReport):
        self.report = report
        first = report.violations[0]
        super().__init__(f"{len(report.violations)} general-position violation(s); first: "
                         f"{first.kind} at {first.location}: {first.detail}")


class _Grid:
    """Uniform bucket grid over segment bounding boxes (exact integer cells)."""

    def __init__(self, segments: Sequence[Segment], cells: int | None = None):
        if cells is None:
            cells = min(64, max(2, math.isqrt(len(segments))))
        xs = [c for s in segments for c in (s.p.x, s.q.x)]
        ys = [c for s in segments for c in (s.p.y, s.q.y)]
        self.x0, self.y0 = min(xs), min(ys)
        span = max(max(xs) - self.x0, max(ys) - self.y0) or Fraction(1)
        self.cell = span / cells
        self.buckets: dict[tuple[int, int], list[int]] = {}
        for i, s in enumerate(segments):
            x_lo, y_lo, x_hi, y_hi = s.bbox()
            for cx in range(self._c(x_lo, self.x0), self._c(x_hi, self.x0) + 1):
                for cy in range(self._c(y_lo, self.y0), self._c(y_hi, self.y0) + 1):
                    self.buckets.setdefault((cx, cy), []).append(i)

    def _c(self, v, origin) -> int:
        return int((v - origin) // self.cell)

    def candidate_pairs(self) -> Iterator[tuple[int, int]]:
        seen = set()
        for members in self.buckets.values():
            for i, j in combinations(members, 2):
                key = (i, j) if i < j else (j, i)
                if key not in seen:
                    seen.add(key)
                    yield key


def _path_segments(inst_paths: Sequence[PLPath]):
    segs: list[Segment] = []
    owners: list[tuple[str, int]] = []
    for path in inst_paths:
        for k, s in enumerate(path.segments()):
            segs.append(s)
            owners.append((path.label, k))
    return segs, owners


def iter_segment_hits(paths: Sequence[PLPath]):
    """Yield (i, j, Intersection) for every intersecting pair of segments."""
    segs, owners = _path_segments(paths)
    if not segs:
        return segs, owners, []
    hits = []
    for i, j in _Grid(segs).candidate_pairs():
        res = segment_intersect(segs[i], segs[j])
        if res.kind is not IntersectionKind.NONE:
            hits.append((i, j, res))
    hits.sort(key=lambda h: (h[0], h[1]))
    return segs, owners, hits


def validate_general_position(inst: Instance) -> ValidationReport:
    """Check the instance's traces meet only in transversal interior double points."""
    return validate_paths(inst.paths, inst.A, inst.B)


def validate_paths(paths: Sequence[PLPath], A: Point | None = None, B: Point | None = None) -> ValidationReport:
    report = ValidationReport()
    segs, owners, hits = iter_segment_hits(paths)
    n_segs = {p.label: len(p) for p in paths}
    closed = {p.label: p.start == p.end for p in paths}
    crossing_points: dict[Point, list] = {}

    def adjacent(i: int, j: int) -> bool:
        (li, ki), (lj, kj) = owners[i], owners[j]
        if li != lj:
            return False
        if abs(ki - kj) == 1:
            return True
        return closed[li] and {ki, kj} == {0, n_segs[li] - 1}

    for i, j, res in hits:
        si, sj = segs[i], segs[j]
        oi, oj = owners[i], owners[j]
        if res.kind is IntersectionKind.OVERLAP:
            report.violations.append(Violation(
                "overlap", si.p, f"segments {oi} and {oj} share a collinear piece"))
            continue
        hit = res.point
        if adjacent(i, j):
            # consecutive segments may only meet at their common bend vertex
            common = {si.p, si.q} & {sj.p, sj.q}
            if hit in common and not res.interior1 and not res.interior2:
                continue
            report.violations.append(Violation(
                "fold", hit, f"consecutive segments {oi} and {oj} fold back onto each other"))
            continue
        if not res.interior1 or not res.interior2:
            if A is not None and hit in (A, B) and oi[0] != oj[0] \
                    and _is_path_end(hit, si, oi, n_segs, A, B) and _is_path_end(hit, sj, oj, n_segs, A, B):
                continue
            kind = "endpoint" if hit in (A, B) else "vertex-on-trace"
            report.violations.append(Violation(
                kind, hit, f"segments {oi} and {oj} meet at a polyline vertex"))
            continue
        # a proper crossing must be transversal: interior/interior and non-collinear
        crossing_points.setdefault(hit, []).append((oi, oj))
        report.crossings.append((hit, oi, oj))

    for hit, pairs in crossing_points.items():
        if len(pairs) > 1:
            involved = sorted({o for pair in pairs for o in pair})
            report.violations.append(Violation(
                "triple-point", hit, f"{len(involved)} segments pass through one point: {involved}"))
    # endpoints may be shared only as path endpoints
    if A is not None:
        for path in paths:
            for k, v in enumerate(path.vertices[1:-1], start=1):
                if v in (A, B):
                    report.violations.append(Violation(
                        "endpoint", v, f"path {path.label} passes through an endpoint at vertex {k}"))
    return report


def _is_path_end(hit: Point, seg: Segment, owner: tuple[str, int], n_segs: dict,
                 A: Point, B: Point) -> bool:
    label, k = owner
    return (hit == A and k == 0 and seg.p == A) or (hit == B and k == n_segs[label] - 1 and seg.q == B)


def require_general_position(inst: Instance) -> ValidationReport:
    report = validate_general_position(inst)
    if not report.ok:
        raise GeneralPositionError(report)
    return report
