"""Planar arrangement of PL traces: vertices, open edges and faces."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, Sequence

from .geometry import (
    GeneralPositionError,
    Instance,
    PLPath,
    Point,
    Segment,
    midpoint,
    rational,
    validate_paths,
)
from .winding import LoopPolyline, PointOnTraceError, WindingIndex


class VertexKind(enum.Enum):
    ENDPOINT_A = "endpoint_a"
    ENDPOINT_B = "endpoint_b"
    CROSSING = "crossing"
    SELF_CROSSING = "self_crossing"
    BEND = "bend"


@dataclass
class ArrVertex:
    id: int
    location: Point
    kind: VertexKind
    paths: tuple[str, ...]
    edges: list[int] = field(default_factory=list)

    @property
    def valency(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class ArrEdge:
    """Open straight piece of one path between two consecutive vertices.

    ``u -> v`` follows the owner's A-to-B direction; ``param_range`` holds
    ``(segment index, fraction along segment)`` for both ends.
    """

    id: int
    owner: str
    u: int
    v: int
    p: Point
    q: Point
    param_range: tuple[tuple[int, Fraction], tuple[int, Fraction]]

    @property
    def segment(self) -> Segment:
        return Segment(self.p, self.q)

    @property
    def segment_index(self) -> int:
        """Index of the owner's segment containing this edge."""
        # the start may be recorded as the end (fraction 1) of the previous segment
        return self.param_range[1][0]

    def other(self, vertex: int) -> int:
        return self.v if vertex == self.u else self.u


@dataclass
class Arrangement:
    instance: Instance | None
    vertices: list[ArrVertex]
    edges: list[ArrEdge]
    index: dict[Point, int]
    cache: dict = field(default_factory=dict, repr=False, compare=False)

    def vertex_at(self, p: Point) -> ArrVertex:
        return self.vertices[self.index[p]]

    @property
    def A(self) -> ArrVertex:
        return self.vertex_at(self.instance.A)

    @property
    def B(self) -> ArrVertex:
        return self.vertex_at(self.instance.B)

    def edges_of(self, label: str) -> list[ArrEdge]:
        return [e for e in self.edges if e.owner == label]

    def incident(self, vertex: int) -> list[ArrEdge]:
        return [self.edges[i] for i in self.vertices[vertex].edges]


def _split_points(paths: Sequence[PLPath], crossings) -> dict[tuple[str, int], list[Fraction]]:
    """Parameters along each segment at which a crossing splits it."""
    splits: dict[tuple[str, int], list[Fraction]] = {}
    seg_lookup = {(p.label, k): s for p in paths for k, s in enumerate(p.segments())}
    for hit, oi, oj in crossings:
        for owner in (oi, oj):
            s = seg_lookup[owner]
            if s.q.x != s.p.x:
                t = (hit.x - s.p.x) / (s.q.x - s.p.x)
            else:
                t = (hit.y - s.p.y) / (s.q.y - s.p.y)
            splits.setdefault(owner, []).append(t)
    return splits


def _pieces(paths: Sequence[PLPath], crossings):
    """Yield (label, point, param) sequences: every vertex along each path in order."""
    splits = _split_points(paths, crossings)
    out = {}
    for path in paths:
        seq = [(path.vertices[0], (0, Fraction(0)))]
        for k, s in enumerate(path.segments()):
            for t in sorted(splits.get((path.label, k), ())):
                seq.append((Point(s.p.x + t * (s.q.x - s.p.x), s.p.y + t * (s.q.y - s.p.y)), (k, t)))
            seq.append((s.q, (k, Fraction(1))))
        out[path.label] = seq
    return out


def build_arrangement(inst: Instance) -> Arrangement:
    """Split the three traces at all crossings into vertices and open edges."""
    report = validate_paths(inst.paths, inst.A, inst.B)
    if not report.ok:
        raise GeneralPositionError(report)

    crossing_kind: dict[Point, tuple[str, str]] = {}
    for hit, oi, oj in report.crossings:
        crossing_kind[hit] = (oi[0], oj[0])

    vertices: list[ArrVertex] = []
    index: dict[Point, int] = {}

    def vertex(p: Point, kind: VertexKind, labels: tuple[str, ...]) -> int:
        if p not in index:
            index[p] = len(vertices)
            vertices.append(ArrVertex(len(vertices), p, kind, labels))
        return index[p]

    vertex(inst.A, VertexKind.ENDPOINT_A, ("a", "b", "c"))
    vertex(inst.B, VertexKind.ENDPOINT_B, ("a", "b", "c"))
    for hit, (l1, l2) in sorted(crossing_kind.items()):
        if l1 == l2:
            vertex(hit, VertexKind.SELF_CROSSING, (l1,))
        else:
            vertex(hit, VertexKind.CROSSING, tuple(sorted((l1, l2))))

    edges: list[ArrEdge] = []
    pieces = _pieces(inst.paths, report.crossings)
    for path in sorted(inst.paths, key=lambda p: p.label):
        seq = pieces[path.label]
        for pnt, _ in seq[1:-1]:
            if pnt not in index:
                vertex(pnt, VertexKind.BEND, (path.label,))
        for (p, tp), (q, tq) in zip(seq, seq[1:]):
            e = ArrEdge(len(edges), path.label, index[p], index[q], p, q, (tp, tq))
            edges.append(e)
            vertices[e.u].edges.append(e.id)
            vertices[e.v].edges.append(e.id)
    return Arrangement(inst, vertices, edges, index)


def edge_representative(e: ArrEdge) -> Point:
    """Exact midpoint of the edge; it lies on the owner's trace only."""
    return midpoint(e.p, e.q)


def edge_point(e: ArrEdge, t) -> Point:
    """Point at fraction ``t`` along the open edge (0 < t < 1)."""
    t = rational(t)
    return Point(e.p.x + (e.q.x - e.p.x) * t, e.p.y + (e.q.y - e.p.y) * t)


# ---------------------------------------------------------------------------
# faces


def _half(dx, dy) -> int:
    return 0 if dy > 0 or (dy == 0 and dx > 0) else 1


def _ccw_cmp(d1, d2) -> int:
    h1, h2 = _half(*d1), _half(*d2)
    if h1 != h2:
        return h1 - h2
    c = d1[0] * d2[1] - d1[1] * d2[0]
    return -1 if c > 0 else (1 if c < 0 else 0)


@dataclass
class Face:
    id: int
    bounded: bool
    boundary: list[int]  # cycle ids: outer boundary first (bounded faces), then holes


@dataclass
class FaceStructure:
    points: list[Point]
    edges: list[tuple[int, int, str]]  # (u, v, owner label), u -> v along the owner
    cycles: list[list[int]]  # vertex index sequences
    cycle_area2: list[Fraction]  # twice the signed area
    cycle_face: list[int]
    faces: list[Face]
    edge_faces: dict[int, tuple[int, int]]  # edge id -> (left face, right face)
    n_components: int
    _indices: dict[int, WindingIndex] = field(default_factory=dict, repr=False)
    _bboxes: list[tuple] = field(default_factory=list, repr=False)

    @property
    def unbounded(self) -> Face:
        return self.faces[0]

    @property
    def n_bounded(self) -> int:
        return len(self.faces) - 1

    def euler_characteristic(self) -> int:
        return len(self.points) - len(self.edges) + len(self.faces)

    def _index(self, c: int) -> WindingIndex:
        idx = self._indices.get(c)
        if idx is None:
            idx = WindingIndex(LoopPolyline(tuple(self.points[i] for i in self.cycles[c])))
            self._indices[c] = idx
        return idx

    def locate(self, x: Point) -> int:
        """Face id containing ``x``; raises PointOnTraceError on the traces."""
        best, best_area = 0, None
        for c, (x0, y0, x1, y1) in enumerate(self._bboxes):
            if not (x0 <= x.x <= x1 and y0 <= x.y <= y1):
                continue
            w = self._index(c).query(x).value  # raises when x is on this cycle
            area = self.cycle_area2[c]
            if area > 0 and w != 0 and (best_area is None or area < best_area):
                best, best_area = self.cycle_face[c], area
        return best


def build_faces(traces: Iterable[PLPath]) -> FaceStructure:
    """Planar subdivision of the plane by the union of the given traces."""
    traces = list(traces)
    labels = [t.label for t in traces]
    if len(set(labels)) != len(labels):
        traces = [PLPath(t.vertices, f"{t.label}{i}") for i, t in enumerate(traces)]
    starts = {t.start for t in traces}
    ends = {t.end for t in traces}
    A = next(iter(starts)) if len(starts) == 1 and len(traces) > 1 else None
    B = next(iter(ends)) if len(ends) == 1 and len(traces) > 1 else None
    report = validate_paths(traces, A, B)
    if not report.ok:
        raise GeneralPositionError(report)

    points: list[Point] = []
    pindex: dict[Point, int] = {}
    edges: list[tuple[int, int, str]] = []
    pieces = _pieces(traces, report.crossings)

    def pid(p: Point) -> int:
        if p not in pindex:
            pindex[p] = len(points)
            points.append(p)
        return pindex[p]

    for t in traces:
        seq = pieces[t.label]
        for (p, _), (q, _) in zip(seq, seq[1:]):
            edges.append((pid(p), pid(q), t.label))

    # half-edge h = 2*e (u->v) or 2*e+1 (v->u)
    def tail(h):
        u, v, _ = edges[h >> 1]
        return u if h % 2 == 0 else v

    def head(h):
        u, v, _ = edges[h >> 1]
        return v if h % 2 == 0 else u

    outgoing: list[list[int]] = [[] for _ in points]
    for e in range(len(edges)):
        outgoing[edges[e][0]].append(2 * e)
        outgoing[edges[e][1]].append(2 * e + 1)
    position: dict[int, tuple[int, int]] = {}
    for v, hs in enumerate(outgoing):
        o = points[v]

        def direction(h, o=o):
            w = points[head(h)]
            return (w.x - o.x, w.y - o.y)

        hs.sort(key=cmp_to_key(lambda h1, h2: _ccw_cmp(direction(h1), direction(h2))))
        for i, h in enumerate(hs):
            position[h] = (v, i)

    def nxt(h):
        twin = h ^ 1
        v, i = position[twin]
        ring = outgoing[v]
        return ring[(i - 1) % len(ring)]

    cycle_of = [-1] * (2 * len(edges))
    cycles: list[list[int]] = []
    for h0 in range(2 * len(edges)):
        if cycle_of[h0] >= 0:
            continue
        cyc, h = [], h0
        while cycle_of[h] < 0:
            cycle_of[h] = len(cycles)
            cyc.append(tail(h))
            h = nxt(h)
        cycles.append(cyc)

    area2 = []
    for cyc in cycles:
        s = Fraction(0)
        for i in range(len(cyc)):
            p, q = points[cyc[i - 1]], points[cyc[i]]
            s += p.x * q.y - p.y * q.x
        area2.append(s)

    # connected components of the union
    parent = list(range(len(points)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for u, v, _ in edges:
        parent[find(u)] = find(v)
    comp_ids = sorted({find(v) for v in range(len(points))})

    faces = [Face(0, False, [])]
    cycle_face = [0] * len(cycles)
    for c, a in enumerate(area2):
        if a > 0:
            cycle_face[c] = len(faces)
            faces.append(Face(len(faces), True, [c]))

    bboxes = []
    for cyc in cycles:
        xs = [points[i].x for i in cyc]
        ys = [points[i].y for i in cyc]
        bboxes.append((min(xs), min(ys), max(xs), max(ys)))
    fs = FaceStructure(points, edges, cycles, area2, cycle_face, faces, {}, len(comp_ids),
                       _bboxes=bboxes)

    # attach each component's outer cycle to the face that contains it
    inner_by_comp: dict[int, list[int]] = {}
    for c, cyc in enumerate(cycles):
        if area2[c] > 0:
            inner_by_comp.setdefault(find(cyc[0]), []).append(c)
    for c, cyc in enumerate(cycles):
        if area2[c] > 0:
            continue
        comp = find(cyc[0])
        probe = points[cyc[0]]
        best, best_area = 0, None
        for other in comp_ids:
            if other == comp:
                continue
            for ic in inner_by_comp.get(other, ()):
                x0, y0, x1, y1 = bboxes[ic]
                if not (x0 <= probe.x <= x1 and y0 <= probe.y <= y1):
                    continue
                if fs._index(ic).query(probe).value != 0 and (best_area is None or area2[ic] < best_area):
                    best, best_area = cycle_face[ic], area2[ic]
        cycle_face[c] = best
        faces[best].boundary.append(c)

    for e in range(len(edges)):
        fs.edge_faces[e] = (cycle_face[cycle_of[2 * e]], cycle_face[cycle_of[2 * e + 1]])
    return fs


def in_bounded_component(x: Point, fs: FaceStructure) -> bool:
    """True iff ``x`` lies in a bounded face of the subdivision."""
    return fs.faces[fs.locate(x)].bounded


def union_faces(inst: Instance, labels: Sequence[str]) -> FaceStructure:
    return build_faces([inst.path(lb) for lb in labels])


__all__ = [
    "ArrEdge", "ArrVertex", "Arrangement", "Face", "FaceStructure", "PointOnTraceError", "VertexKind",
    "build_arrangement", "build_faces", "edge_point", "edge_representative", "in_bounded_component",
    "union_faces",
]
