"""Weak / ordinary / strong shelteredness of arrangement edges, and the
vertex parity rules those classes must obey."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .arrangement import (
    ArrEdge,
    Arrangement,
    FaceStructure,
    VertexKind,
    build_faces,
    edge_point,
    in_bounded_component,
)
from .geometry import Point
from .winding import WindingIndex, WindingResult, loop_of


@dataclass(frozen=True)
class ShelterClass:
    weakly: bool
    sheltered: bool
    strongly: bool
    winding_evidence: WindingResult
    # open edges never lie on two traces in general position
    on_two_traces: bool = False

    def flags(self) -> tuple[bool, bool, bool]:
        return (self.weakly, self.sheltered, self.strongly)

    def as_dict(self) -> dict:
        return {
            "weakly": self.weakly,
            "sheltered": self.sheltered,
            "strongly": self.strongly,
            "winding": self.winding_evidence.value,
        }


class ShelterContext:
    """Per-arrangement caches: one face structure and one winding index per
    pair of remaining paths."""

    def __init__(self, arr: Arrangement):
        self.arr = arr
        self._faces: dict[str, FaceStructure] = {}
        self._winding: dict[str, WindingIndex] = {}

    def faces_without(self, label: str) -> FaceStructure:
        fs = self._faces.get(label)
        if fs is None:
            fs = build_faces(self.arr.instance.others(label))
            self._faces[label] = fs
        return fs

    def winding_without(self, label: str) -> WindingIndex:
        idx = self._winding.get(label)
        if idx is None:
            first, second = self.arr.instance.others(label)
            idx = WindingIndex(loop_of(first, second))
            self._winding[label] = idx
        return idx

    def classify_point(self, label: str, x: Point) -> ShelterClass:
        w = self.winding_without(label).query(x)
        weak = in_bounded_component(x, self.faces_without(label))
        return ShelterClass(weakly=weak, sheltered=w.value != 0, strongly=w.value % 2 == 1,
                            winding_evidence=w)


def context_for(arr: Arrangement) -> ShelterContext:
    ctx = arr.cache.get("shelter")
    if ctx is None:
        ctx = arr.cache["shelter"] = ShelterContext(arr)
    return ctx


def classify_edge(e: ArrEdge, arr: Arrangement, t=Fraction(1, 2)) -> ShelterClass:
    """Classify the open edge ``e`` at the point a fraction ``t`` along it."""
    return context_for(arr).classify_point(e.owner, edge_point(e, t))


@dataclass
class ShelterReport:
    classes: dict[int, ShelterClass]
    strong_counts: dict[int, int]

    def strong_edges(self) -> list[int]:
        return sorted(i for i, c in self.classes.items() if c.strongly)

    def __getitem__(self, edge_id: int) -> ShelterClass:
        return self.classes[edge_id]


def classify_all(arr: Arrangement) -> ShelterReport:
    classes = {e.id: classify_edge(e, arr) for e in arr.edges}
    counts = {
        v.id: sum(1 for i in v.edges if classes[i].strongly) for v in arr.vertices
    }
    return ShelterReport(classes, counts)


@dataclass(frozen=True)
class VertexCheck:
    vertex: int
    kind: VertexKind
    strong: int
    ok: bool
    detail: str = ""


@dataclass
class ParityCheck:
    results: list[VertexCheck] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def __bool__(self) -> bool:
        return self.ok

    @property
    def failures(self) -> list[VertexCheck]:
        return [r for r in self.results if not r.ok]


def verify_parity_lemma(rep: ShelterReport, arr: Arrangement) -> ParityCheck:
    """Check the strongly sheltered count at every vertex against its kind."""
    check = ParityCheck()
    for v in arr.vertices:
        strong = [arr.edges[i] for i in v.edges if rep.classes[i].strongly]
        n = len(strong)
        detail = ""
        if v.kind is VertexKind.CROSSING:
            ok = n == 2 and strong[0].owner != strong[1].owner
            if not ok:
                detail = f"crossing has {n} strongly sheltered edges on {[e.owner for e in strong]}"
        elif v.kind is VertexKind.SELF_CROSSING:
            ok = n in (0, 4)
            if not ok:
                detail = f"self-crossing has {n} strongly sheltered edges"
        elif v.kind in (VertexKind.ENDPOINT_A, VertexKind.ENDPOINT_B):
            ok = n in (1, 3)
            if not ok:
                detail = f"endpoint has {n} strongly sheltered edges"
        else:
            ok = n in (0, 2)
            if not ok:
                detail = "bend with exactly one strongly sheltered side"
        check.results.append(VertexCheck(v.id, v.kind, n, ok, detail))
    return check
