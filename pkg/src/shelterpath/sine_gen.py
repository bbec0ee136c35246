"""Finite stages of a three-path arrangement whose strongly sheltered path
sweeps back and forth ever closer to a segment, like a topologist's sine curve.

Local frame: the accumulation segment runs from Q=(0,0) to T=(1,0).  The
paths travel along separate rails just below it, and all loops hang off
those rails.  Generation g contributes a chain of hooked turning loops whose
horizontal parts sit at height h_g and span from the leftmost b-loop to the
left strand of the open c-loop; the traced path runs along that chain and
back once per generation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .cantor import BasedLoop, CantorPath, ConcatSpec, cantor_concatenate, sup_distance
from .geometry import Instance, PLPath, Point, Segment, pt
from .tracer import TraceResult
from .arrangement import Arrangement

F = Fraction

__all__ = [
    "BasedLoop",
    "ConcatSpec",
    "GenerationParams",
    "LoopRecord",
    "OscillationReport",
    "ScheduleError",
    "StageInstance",
    "assemble_paths",
    "cantor_concatenate",
    "generate_stage",
    "oscillation_metrics",
    "sup_distance",
]


class ScheduleError(ValueError):
    """The size schedules force two pieces of the drawing to collide."""


@dataclass(frozen=True)
class GenerationParams:
    n_generations: int
    height_base: Fraction = F(3, 4)
    height_ratio: Fraction = F(1, 2)
    width_base: Fraction = F(1)
    width_ratio: Fraction = F(1, 2)
    b_loop_coverage: Fraction = F(4, 5)
    band_ratio: Fraction = F(1, 8)  # strip thickness relative to its height
    left_margin: Fraction = F(1, 16)
    right_strand: Fraction = F(7, 8)
    rail_gap: Fraction = F(1, 256)

    def __post_init__(self):
        for name in ("height_base", "height_ratio", "width_base", "width_ratio",
                     "b_loop_coverage", "band_ratio", "left_margin", "right_strand", "rail_gap"):
            object.__setattr__(self, name, F(getattr(self, name)))
        if not isinstance(self.n_generations, int) or self.n_generations < 1:
            raise ValueError("n_generations must be a positive integer")
        if not 0 < self.b_loop_coverage < 1:
            raise ValueError("b-loop coverage must lie in (0, 1)")
        if not 0 < self.height_ratio < 1:
            raise ValueError("heights must decrease")
        if not F(1, 4) <= self.width_ratio <= 1:
            raise ValueError("widths must shrink by a factor between 1 and 4")
        if not 0 < self.band_ratio <= F(1, 4):
            raise ValueError("band ratio must lie in (0, 1/4]")
        if not 4 * self.left_margin < self.right_strand < 1:
            raise ValueError("right strand must sit between the leftmost b-loop and T")
        if self.b_loop_coverage <= self.height_ratio * (1 + self.band_ratio * F(5, 4)):
            raise ValueError("b-loops must reach above the next generation's strips")

    @property
    def central_line(self) -> Segment:
        return Segment(pt(1, 0), pt(0, 0))

    def h(self, g: int) -> Fraction:
        return self.height_base * self.height_ratio ** g

    def w(self, g: int) -> Fraction:
        return self.width_base * self.width_ratio ** g

    def unit(self, g: int) -> Fraction:
        """Column/disk size unit for generation g."""
        return self.w(g) / 8

    def band(self, g: int, outer: bool) -> tuple[Fraction, Fraction]:
        h, d = self.h(g), self.h(g) * self.band_ratio
        return (h, h + d) if outer else (h + d / 4, h + 3 * d / 4)


@dataclass
class LoopRecord:
    id: int
    kind: str  # straight | standard-turning | non-standard-open
    label: str
    generation: int  # 0 for the two exceptional pieces
    index: int = 0  # position within its generation, 1 = leftmost
    x: Fraction = F(0)  # column (or drop) centre
    band: tuple[Fraction, Fraction] | None = None
    has_x_region: bool = False
    clover_bands: list[tuple[Fraction, Fraction]] = field(default_factory=list)
    covers: int | None = None  # for b-loops: id of the covered turning loop

    def as_dict(self) -> dict:
        d = {"id": self.id, "kind": self.kind, "label": self.label,
             "generation": self.generation, "index": self.index, "x": str(self.x)}
        if self.band is not None:
            d["band"] = [str(v) for v in self.band]
        if self.kind == "standard-turning":
            d["x_region"] = self.has_x_region
            d["clovers"] = len(self.clover_bands)
        if self.covers is not None:
            d["covers"] = self.covers
        return d


@dataclass
class _Piece:
    """Polyline with one role tag per segment."""

    points: list[Point]
    tags: list[str]

    def add(self, p: Point, tag: str) -> None:
        """Append ``p``; the segment into it gets ``tag``."""
        self.tags.append(tag)
        self.points.append(p)


@dataclass
class StageInstance:
    params: GenerationParams
    instance: Instance
    loops: list[LoopRecord]
    tags: dict[tuple[str, int], str]  # (path label, segment index) -> role
    x_regions: list[tuple[int, Point]]
    clovers: list[tuple[int, int, Point]]  # (column loop id, crossing loop id, centre)
    depths: dict[str, int]
    pieces: dict = field(repr=False, default_factory=dict)

    @property
    def P(self) -> Point:
        return self.instance.A

    @property
    def Q(self) -> Point:
        return self.instance.B

    def inventory(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for lp in self.loops:
            key = f"{lp.kind}:{lp.label}"
            out[key] = out.get(key, 0) + 1
        return out

    def annotations(self) -> dict:
        return {
            "generations": self.params.n_generations,
            "heights": [str(self.params.h(g)) for g in range(1, self.params.n_generations + 1)],
            "loops": [lp.as_dict() for lp in self.loops],
            "x_regions": [{"loop": i, "at": [str(p.x), str(p.y)]} for i, p in self.x_regions],
            "clovers": [{"column": i, "crossing": j, "at": [str(p.x), str(p.y)]}
                        for i, j, p in self.clovers],
            "cantor_depths": dict(self.depths),
        }

    def tag_of(self, arr: Arrangement, edge_id: int) -> str:
        e = arr.edges[edge_id]
        return self.tags[(e.owner, e.segment_index)]


# ---------------------------------------------------------------------------
# column placement


@dataclass
class _Column:
    g: int
    k: int
    x: Fraction
    label: str


def _labels(K: int) -> list[str]:
    # rightmost is a; hooked neighbours alternate
    return ["a" if (K - k) % 2 == 0 else "c" for k in range(1, K + 1)]


def _gap_counts(old: Sequence[str], labels: Sequence[str],
                lengths: Sequence[Fraction] | None = None) -> list[int]:
    """How many new columns go into each gap between old columns.

    Old column j must fall inside a new loop whose label differs from its own.
    Minimises the sum over gaps of count**2 / free length.
    """
    if lengths is None:
        lengths = [F(1)] * (len(old) + 1)
    m, K = len(old), len(labels)

    @lru_cache(maxsize=None)
    def best(j: int, k: int):
        # k = index (0-based) of the loop whose strip is open at gap j
        if j == m:
            c = K - 1 - k
            return (c * c / lengths[m], (c,)) if c >= 0 else None
        out = None
        for c in range(0, K - k):
            kk = k + c
            if labels[kk] == old[j]:
                continue
            rest = best(j + 1, kk)
            if rest is None:
                continue
            cand = (c * c / lengths[j] + rest[0], (c,) + rest[1])
            if out is None or cand[0] < out[0]:
                out = cand
        return out

    res = best(0, 0)
    if res is None:
        raise ScheduleError("no label-compatible placement of the new generation")
    return list(res[1])


def _place_columns(p: GenerationParams) -> list[list[_Column]]:
    m = p.left_margin
    x_L0, x_L, x_R = 2 * m, 4 * m, p.right_strand
    gens: list[list[_Column]] = []
    for g in range(1, p.n_generations + 1):
        K = 2 ** (g - 1)
        labels = _labels(K)
        if g == 1:
            gens.append([_Column(1, 1, m, labels[0])])
            continue
        first = _Column(g, 1, x_L - (x_L - x_L0) / 2 ** (g - 1), labels[0])
        old = sorted((c for gen in gens[1:] for c in gen if c.k > 1), key=lambda c: c.x)
        u = p.unit(g)
        # keep new disks clear of older clover bulges and of both end strands
        bounds = [x_L + 2 * u] + [c.x for c in old] + [x_R - 2 * u]
        margin = [F(0)] + [F(3, 4) * p.unit(c.g) + u for c in old] + [F(0)]
        free = [max(bounds[j + 1] - margin[j + 1] - bounds[j] - margin[j], u)
                for j in range(len(old) + 1)]
        counts = _gap_counts([c.label for c in old], labels, free)
        cols = [first]
        for j, cnt in enumerate(counts):
            lo, hi = bounds[j] + margin[j], bounds[j + 1] - margin[j + 1]
            for i in range(1, cnt + 1):
                k = len(cols) + 1
                cols.append(_Column(g, k, lo + (hi - lo) * i / (cnt + 1), labels[k - 1]))
        gens.append(cols)
        _check_clearance(p, gens)
    return gens


def _check_clearance(p: GenerationParams, gens: list[list[_Column]]) -> None:
    g = len(gens)
    u = p.unit(g)
    for new in gens[-1][1:]:
        for gen in gens[1:-1]:
            for old in gen[1:]:
                need = u + F(3, 4) * p.unit(old.g) + u / 4
                if abs(new.x - old.x) <= need:
                    raise ScheduleError(
                        f"generation {g} loop {new.k} at x={new.x} collides with "
                        f"generation {old.g} loop {old.k} at x={old.x}")
    cols = gens[-1]
    for a, b in zip(cols[1:], cols[2:]):
        if b.x - a.x <= 2 * u + u / 4:
            raise ScheduleError(f"generation {g} loops {a.k} and {b.k} too close")
    if cols[1].x - 4 * p.left_margin <= u + u / 4 if len(cols) > 1 else False:
        raise ScheduleError(f"generation {g} loop 2 collides with the leftmost b-loop")
    if p.right_strand - cols[-1].x <= 2 * u:
        raise ScheduleError(f"generation {g} rightmost loop collides with the open loop")


# ---------------------------------------------------------------------------
# geometry of the pieces


class _Layout:
    def __init__(self, p: GenerationParams):
        self.p = p
        r = p.rail_gap
        self.r = r
        self.rail = {"a": -r, "c": -2 * r, "b": -3 * r}
        self.return_rail = -4 * r
        self.eps = r / 16  # chamfer size at loop bases
        self.arm = r / 4  # loops leave their rail this high above it
        m = p.left_margin
        self.x_L0, self.x_L, self.x_R = 2 * m, 4 * m, p.right_strand
        self.P = pt(F(9, 8), F(1, 2))
        self.Q = pt(0, 0)
        self.top_c = F(3, 4)
        self.top_b = F(7, 8)
        self.top_leftmost = F(9, 16)


def _turning_loop(L: _Layout, g: int, col: _Column, band, disk, east: Fraction,
                  west_disk: Fraction | None, has_x: bool,
                  clovers: list[tuple[Fraction, Fraction]]) -> _Piece:
    """Clockwise L-shaped loop: column at col.x, strip along ``band`` to ``east``.

    ``disk`` is the vertical extent of the turning-around disk; when it is
    wider than the band the disk is a box from ``west_disk`` to ``east``.
    """
    p = L.p
    u = p.unit(g)
    q = col.x
    cw = u / 4
    bulge = 3 * u / 4
    y0 = L.rail[col.label]
    base = pt(q, y0)
    lo, hi = band
    dlo, dhi = disk
    h = p.h(g)
    top_b = p.b_loop_coverage * h
    xa = top_b + (dlo - top_b) / 3
    xb = top_b + 2 * (dlo - top_b) / 3
    ordered = sorted(clovers)

    def up(piece: _Piece, x: Fraction, side: int):
        for c_lo, c_hi in ordered:
            y1, y2 = c_lo + (c_hi - c_lo) / 3, c_lo + 2 * (c_hi - c_lo) / 3
            piece.add(pt(x, y1), "column")
            piece.add(pt(q + side * bulge, y1), "clover")
            piece.add(pt(q + side * bulge, y2), "clover")
            piece.add(pt(x, y2), "clover")

    def down(piece: _Piece, x: Fraction, side: int):
        for c_lo, c_hi in reversed(ordered):
            y1, y2 = c_lo + (c_hi - c_lo) / 3, c_lo + 2 * (c_hi - c_lo) / 3
            piece.add(pt(x, y2), "column")
            piece.add(pt(q + side * bulge, y2), "clover")
            piece.add(pt(q + side * bulge, y1), "clover")
            piece.add(pt(x, y1), "clover")

    pc = _Piece([base], [])
    # the column below the x-region runs up its right strand when crossed
    first = 1 if has_x else -1
    pc.add(pt(q + first * cw, y0 + L.arm), "base")
    up(pc, q + first * cw, first)
    if has_x:
        pc.add(pt(q + cw, xa), "column")
        pc.add(pt(q - cw, xb), "x-region")
    pc.add(pt(q - cw, hi), "column")
    if west_disk is not None:
        pc.add(pt(west_disk, hi), "horizontal")
        pc.add(pt(west_disk, dhi), "disk")
        pc.add(pt(east, dhi), "disk")
        pc.add(pt(east, dlo), "disk")
        pc.add(pt(west_disk, dlo), "disk")
        pc.add(pt(west_disk, lo), "disk")
    else:
        pc.add(pt(east, hi), "horizontal")
        pc.add(pt(east, lo), "disk")
    pc.add(pt(q + cw, lo), "horizontal")
    if has_x:
        pc.add(pt(q + cw, xb), "column")
        pc.add(pt(q - cw, xa), "x-region")
    last = -first
    down(pc, q + last * cw, last)
    pc.add(pt(q + last * cw, y0 + L.arm), "column")
    pc.add(base, "base")
    return pc


def _drop(L: _Layout, x0: Fraction, x1: Fraction, top: Fraction) -> _Piece:
    """Anticlockwise b-loop: up the right wall, across, down the left wall."""
    y0 = L.rail["b"]
    base = pt((x0 + x1) / 2, y0)
    pc = _Piece([base], [])
    pc.add(pt(x1, y0 + L.arm), "base")
    pc.add(pt(x1, top), "b-wall")
    pc.add(pt(x0, top), "b-top")
    pc.add(pt(x0, y0 + L.arm), "b-wall")
    pc.add(base, "base")
    return pc


def _retag_turnaround(pc: _Piece) -> _Piece:
    # the right wall of the leftmost b-loop is where the sweeps turn around
    pc.tags[1] = "turnaround-wall"
    return pc


def generate_stage(p: GenerationParams) -> StageInstance:
    """Build stage ``p.n_generations`` with its loop inventory and segment roles."""
    L = _Layout(p)
    gens = _place_columns(p)
    loops: list[LoopRecord] = []
    pieces: dict[int, _Piece] = {}
    x_regions: list[tuple[int, Point]] = []
    clovers: list[tuple[int, int, Point]] = []

    def new_record(**kw) -> LoopRecord:
        rec = LoopRecord(id=len(loops), **kw)
        loops.append(rec)
        return rec

    # turning loops first so later strips can register clovers on older columns
    turning: dict[tuple[int, int], LoopRecord] = {}
    spans: list[tuple[LoopRecord, Fraction, Fraction]] = []
    geo: dict[int, dict] = {}
    for g, cols in enumerate(gens, start=1):
        K = len(cols)
        u = p.unit(g)
        for col in cols:
            outer = col.k % 2 == 1
            band = p.band(g, outer)
            if col.k < K:
                nxt = cols[col.k].x
                east = nxt + u
                if outer:
                    disk, west = band, None
                else:
                    h, d = p.h(g), p.h(g) * p.band_ratio
                    disk, west = (h - d / 4, h + 5 * d / 4), nxt - u
            else:
                east, disk, west = L.x_R + u, band, None
            rec = new_record(kind="standard-turning", label=col.label, generation=g,
                             index=col.k, x=col.x, band=band,
                             has_x_region=col.k > 1)
            turning[(g, col.k)] = rec
            geo[rec.id] = dict(g=g, col=col, band=band, disk=disk, east=east, west=west)
            spans.append((rec, col.x, west if west is not None else east))
    # clovers: later strips crossing older non-leftmost columns
    for rec in loops:
        if rec.generation < 2 or rec.index == 1:
            continue
        for other, x0, x1 in spans:
            if other.generation > rec.generation and x0 < rec.x < x1:
                if other.label == rec.label:
                    raise ScheduleError(
                        f"loop {other.id} ({other.label}) crosses column of loop {rec.id} "
                        f"with the same label")
                rec.clover_bands.append(other.band)
                clovers.append((rec.id, other.id, pt(rec.x, sum(other.band) / 2)))
    for rec in list(loops):
        kw = geo[rec.id]
        pieces[rec.id] = _turning_loop(L, kw["g"], kw["col"], kw["band"], kw["disk"],
                                       kw["east"], kw["west"], rec.has_x_region,
                                       rec.clover_bands)
        if rec.has_x_region:
            h = p.h(rec.generation)
            top_b = p.b_loop_coverage * h
            mid = top_b + (kw["disk"][0] - top_b) / 2
            x_regions.append((rec.id, pt(rec.x, mid)))
    # b-loops
    lm = new_record(kind="straight", label="b", generation=0, x=(L.x_L0 + L.x_L) / 2)
    pieces[lm.id] = _retag_turnaround(_drop(L, L.x_L0, L.x_L, L.top_leftmost))
    for rec in [r for r in loops if r.kind == "standard-turning"]:
        if rec.index == 1 and rec.generation > 1:
            continue
        u = p.unit(rec.generation)
        top = p.b_loop_coverage * p.h(rec.generation)
        b = new_record(kind="straight", label="b", generation=rec.generation,
                       x=rec.x, covers=rec.id)
        pieces[b.id] = _drop(L, rec.x - u / 2, rec.x + u / 2, top)
    new_record(kind="non-standard-open", label="c", generation=0, x=L.x_R)

    stage = StageInstance(p, None, loops, {}, x_regions, clovers, {}, pieces)  # type: ignore[arg-type]
    stage.pieces["layout"] = L
    stage.instance = assemble_paths(stage)
    return stage


# ---------------------------------------------------------------------------
# assembly


def _resolve_bases(pts: list[Point], tags: list[str], bases: set[Point], eps) -> tuple[list[Point], list[str]]:
    """Replace each touching at a loop basepoint by two short chords.

    Every occurrence of a basepoint is cut back along both of its arms by the
    same (max-norm) distance and the two arm points are joined; the two
    visits of a loop base then either cross transversally or pass apart.
    """
    out_p: list[Point] = [pts[0]]
    out_t: list[str] = []
    for i in range(1, len(pts)):
        v = pts[i]
        if v in bases and 0 < i < len(pts) - 1:
            prev, nxt = pts[i - 1], pts[i + 1]
            a = _toward(v, prev, eps)
            b = _toward(v, nxt, eps)
            out_t.append(tags[i - 1])
            out_p.append(a)
            out_t.append("base")
            out_p.append(b)
        else:
            out_t.append(tags[i - 1])
            out_p.append(v)
    return out_p, out_t


def _toward(v: Point, w: Point, eps) -> Point:
    d = max(abs(w.x - v.x), abs(w.y - v.y))
    if d <= eps:
        raise ScheduleError(f"arm from {v} to {w} is shorter than the chamfer")
    t = eps / d
    return pt(v.x + (w.x - v.x) * t, v.y + (w.y - v.y) * t)


def _concat(arc: list[Point], arc_tag: str, loops: list[tuple[int, _Piece]], label: str):
    spec_loops = [BasedLoop(pc.points[0], tuple(pc.points[1:-1])) for _, pc in loops]
    depth = max(len(loops), 0).bit_length()
    cp = CantorPath(ConcatSpec(tuple(arc), tuple(spec_loops), depth))
    pts: list[Point] = []
    tags: list[str] = []
    for kind, idx, piece in cp.pieces():
        ptags = [arc_tag] * (len(piece) - 1) if kind == "arc" else loops[idx][1].tags
        for q, tg in zip(piece[1:], ptags):
            if not pts:
                pts.append(piece[0])
            if pts[-1] == q:
                continue
            pts.append(q)
            tags.append(tg)
        if not pts:
            pts.append(piece[0])
    return pts, tags, depth, cp


def assemble_paths(stage: StageInstance) -> Instance:
    """Route a, b and c from P to Q through every piece of the stage."""
    L: _Layout = stage.pieces["layout"]
    P, Q, r = L.P, L.Q, L.r
    by_label: dict[str, list[tuple[int, _Piece]]] = {"a": [], "b": [], "c": []}
    for rec in stage.loops:
        if rec.kind == "non-standard-open":
            continue
        by_label[rec.label].append((rec.id, stage.pieces[rec.id]))
    if any(rec.kind == "straight" and rec.label != "b" for rec in stage.loops):
        raise ValueError("straight loops must carry label b")
    if any(rec.kind == "standard-turning" and rec.label not in "ac" for rec in stage.loops):
        raise ValueError("turning loops must carry label a or c")

    x_far = P.x + F(1, 8)
    T_a = pt(P.x + F(1, 16), L.rail["a"])
    T_b = pt(x_far, L.rail["b"])
    T_c = pt(1, L.rail["c"])
    fan = r  # rails bend into Q from x = r

    out: dict[str, tuple[list[Point], list[str]]] = {}
    depths: dict[str, int] = {}
    # a: short curve to T_a, then west along its rail
    head = _Piece([P], [])
    head.add(pt(T_a.x, P.y - F(1, 16)), "short-curve")
    head.add(T_a, "short-curve")
    arc = [T_a, pt(fan, L.rail["a"]), Q]
    pts, tags, depths["a"], _ = _concat(arc, "rail", by_label["a"], "a")
    out["a"] = (head.points + pts[1:], head.tags + tags)
    # b: long curve over the top to the left end of its rail, east with the drops, back
    head = _Piece([P], [])
    head.add(pt(P.x + F(1, 32), P.y + F(1, 32)), "long-curve")
    head.add(pt(P.x + F(1, 32), L.top_b), "long-curve")
    head.add(pt(-F(1, 16), L.top_b), "long-curve")
    Q_b = pt(-F(1, 16), L.rail["b"])
    head.add(Q_b, "long-curve")
    arc = [Q_b, T_b]
    pts, tags, depths["b"], _ = _concat(arc, "rail", by_label["b"], "b")
    tail = _Piece([T_b], [])
    tail.add(pt(x_far, L.return_rail), "return-rail")
    tail.add(pt(fan, L.return_rail), "return-rail")
    tail.add(Q, "return-rail")
    out["b"] = (head.points + pts[1:] + tail.points[1:], head.tags + tags + tail.tags)
    # c: the open loop down to T_c, then west along its rail
    head = _Piece([P], [])
    head.add(pt(P.x, L.top_c), "open-loop")
    head.add(pt(L.x_R, L.top_c), "open-loop")
    head.add(pt(L.x_R, -r / 2), "open-left")
    head.add(pt(T_c.x, -r / 2), "open-loop")
    head.add(T_c, "open-loop")
    arc = [T_c, pt(fan, L.rail["c"]), Q]
    pts, tags, depths["c"], _ = _concat(arc, "rail", by_label["c"], "c")
    out["c"] = (head.points + pts[1:], head.tags + tags)

    bases = {pc.points[0] for items in by_label.values() for _, pc in items}
    paths = []
    stage.tags.clear()
    for label in "abc":
        pts, tags = _resolve_bases(*out[label], bases, L.eps)
        for i, tg in enumerate(tags):
            stage.tags[(label, i)] = tg
        paths.append(PLPath(tuple(pts), label))
    stage.depths = depths
    return Instance(P, Q, tuple(paths))


# ---------------------------------------------------------------------------
# measuring the traced path


@dataclass
class OscillationReport:
    sweep_count: int
    approach_distances: list[Fraction]
    sweep_endpoints: list[tuple[Point, Point, Point]]  # (leave right, touch left, back right)
    starts_on_open_loop: bool

    def as_dict(self) -> dict:
        return {
            "sweep_count": self.sweep_count,
            "approach_distances": [str(d) for d in self.approach_distances],
            "approach_distances_float": [float(d) for d in self.approach_distances],
            "sweep_endpoints": [[[str(c) for c in q] for q in trip] for trip in self.sweep_endpoints],
            "starts_on_open_loop": self.starts_on_open_loop,
        }


class OscillationError(RuntimeError):
    pass


def oscillation_metrics(tr: TraceResult, stage: StageInstance, arr: Arrangement) -> OscillationReport:
    """Count right-left-right round trips of the traced path and how low each dips."""
    blocks: list[tuple[str, int, int]] = []  # side, first pos, last pos
    for pos, eid in enumerate(tr.edges):
        e = arr.edges[eid]
        tag = stage.tag_of(arr, eid)
        side = None
        if e.p.y + e.q.y > 0:
            side = "L" if tag == "turnaround-wall" else "R" if tag == "open-left" else None
        if side is None:
            continue
        if blocks and blocks[-1][0] == side:
            blocks[-1] = (side, blocks[-1][1], pos)
        else:
            blocks.append((side, pos, pos))
    if not any(b[0] == "L" for b in blocks) or not any(b[0] == "R" for b in blocks):
        raise OscillationError("traced path does not reach both turnaround strands")
    dists: list[Fraction] = []
    ends: list[tuple[Point, Point, Point]] = []
    for i in range(len(blocks) - 2):
        (s0, _, e0), (s1, f1, _), (s2, f2, _) = blocks[i], blocks[i + 1], blocks[i + 2]
        if (s0, s1, s2) != ("R", "L", "R"):
            continue
        ys = []
        for pos in range(e0 + 1, f2):
            eid = tr.edges[pos]
            if stage.tag_of(arr, eid) == "horizontal":
                e = arr.edges[eid]
                ys.append(min(e.p.y, e.q.y))
        if not ys:
            raise OscillationError(f"sweep {len(dists) + 1} has no horizontal part")
        dists.append(min(ys))
        loc = lambda pos: arr.vertices[tr.vertices[pos]].location  # noqa: E731
        ends.append((loc(e0 + 1), loc(f1), loc(f2)))
    first = arr.edges[tr.edges[0]]
    return OscillationReport(len(dists), dists, ends,
                             first.owner == "c" and stage.tag_of(arr, tr.edges[0]) == "open-loop")
