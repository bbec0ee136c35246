"""Walk the strongly sheltered subgraph from A to B."""
from __future__ import annotations

from dataclasses import dataclass, field

from .arrangement import Arrangement, VertexKind
from .geometry import Point
from .shelter import ShelterReport


class ParityViolation(RuntimeError):
    """The strongly sheltered subgraph breaks the even-degree rule."""


class TraceError(RuntimeError):
    pass


@dataclass
class ShelteredSubgraph:
    arrangement: Arrangement
    edges: frozenset[int]
    adjacency: dict[int, list[int]]  # vertex id -> sorted strongly sheltered edge ids

    @property
    def vertices(self) -> list[int]:
        return sorted(v for v, es in self.adjacency.items() if es)

    def degree(self, vertex: int) -> int:
        return len(self.adjacency.get(vertex, ()))


def sheltered_subgraph(rep: ShelterReport, arr: Arrangement) -> ShelteredSubgraph:
    strong = frozenset(rep.strong_edges())
    adjacency: dict[int, list[int]] = {}
    for i in sorted(strong):
        e = arr.edges[i]
        adjacency.setdefault(e.u, []).append(i)
        adjacency.setdefault(e.v, []).append(i)
    sub = ShelteredSubgraph(arr, strong, adjacency)
    a, b = arr.A.id, arr.B.id
    bad = [v for v, es in adjacency.items() if v not in (a, b) and len(es) % 2]
    if bad:
        loc = arr.vertices[bad[0]].location
        raise ParityViolation(f"{len(bad)} interior vertices of odd degree, first at {loc}")
    for v in (a, b):
        if sub.degree(v) % 2 == 0:
            raise ParityViolation(f"endpoint {arr.vertices[v].location} has even degree {sub.degree(v)}")
    return sub


@dataclass
class TraceResult:
    edges: list[int]
    vertices: list[int]  # visited vertex ids; len(vertices) == len(edges) + 1
    switches: list[tuple[int, str]] = field(default_factory=list)

    def polyline(self, arr: Arrangement) -> list[Point]:
        return [arr.vertices[v].location for v in self.vertices]

    def owners(self, arr: Arrangement) -> list[str]:
        return [arr.edges[i].owner for i in self.edges]


def _forward(arr: Arrangement, edge_id: int, leaving: int) -> bool:
    return arr.edges[edge_id].u == leaving


def _straight_through(arr: Arrangement, arrived: int, cand: int, at: int) -> bool:
    """Whether ``cand`` continues the same pass of the owner path through ``at``."""
    e, f = arr.edges[arrived], arr.edges[cand]
    if e.owner != f.owner:
        return False
    if e.v == at and f.u == at:
        return f.param_range[0] == e.param_range[1]
    if e.u == at and f.v == at:
        return f.param_range[1] == e.param_range[0]
    return False


def trace(sub: ShelteredSubgraph) -> TraceResult:
    """Deterministic A-to-B walk that uses every strongly sheltered edge at most once."""
    arr = sub.arrangement
    a, b = arr.A.id, arr.B.id
    used: set[int] = set()
    edges: list[int] = []
    verts = [a]
    switches: list[tuple[int, str]] = []

    def leave(v: int) -> list[int]:
        return [i for i in sub.adjacency.get(v, ()) if i not in used]

    at = a
    arrived: int | None = None
    while True:
        if at == b and arrived is not None:
            break
        free = leave(at)
        if not free:
            raise TraceError(f"walk stuck at {arr.vertices[at].location}")
        kind = arr.vertices[at].kind
        if arrived is None or kind is VertexKind.ENDPOINT_A:
            nxt = min(free)
            switches.append((at, "start" if arrived is None else "restart-at-A"))
        elif kind is VertexKind.CROSSING:
            owner = arr.edges[arrived].owner
            other = [i for i in free if arr.edges[i].owner != owner]
            if len(other) != 1:
                raise ParityViolation(f"crossing at {arr.vertices[at].location} offers {len(other)} switches")
            nxt = other[0]
            switches.append((at, "switch"))
        elif kind is VertexKind.SELF_CROSSING:
            nxt = min(free, key=lambda i: (not _straight_through(arr, arrived, i, at),
                                           not _forward(arr, i, at), i))
            rule = "straight" if _straight_through(arr, arrived, nxt, at) else "turn"
            switches.append((at, f"self-crossing-{rule}"))
        else:
            nxt = free[0]
        used.add(nxt)
        edges.append(nxt)
        at = arr.edges[nxt].other(at)
        verts.append(at)
        arrived = nxt
    return TraceResult(edges, verts, switches)
