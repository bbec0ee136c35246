"""Figures: a deterministic hand-written SVG and matplotlib PNG reports."""
from __future__ import annotations

from pathlib import Path
from typing import Iterable, Sequence
from xml.sax.saxutils import escape

from .arrangement import Arrangement
from .geometry import Point
from .tracer import TraceResult

COLORS = {"a": "#d62728", "b": "#2ca02c", "c": "#1f77b4"}


def _num(v) -> str:
    return f"{float(v):.12g}"


def svg_scene(arr: Arrangement, strong: Iterable[int] = (), tr: TraceResult | None = None,
              central_line: Sequence[Point] | None = None, size: int = 800) -> str:
    """One polyline per arrangement edge, then the strong edges and the trace on top.

    Coordinates are flipped so y grows upward; only display precision is kept.
    """
    x0, y0, x1, y1 = arr.instance.bbox()
    span = max(x1 - x0, y1 - y0) or 1
    pad = span / 20
    x0, y0, span = x0 - pad, y0 - pad, span + 2 * pad
    scale = size / span

    def xy(p: Point) -> str:
        return f"{_num((p.x - x0) * scale)},{_num((y0 + span - p.y) * scale)}"

    width = _num(span * scale)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{width}" '
        f'viewBox="0 0 {width} {width}">',
        '<g id="traces" fill="none" stroke-width="1">',
    ]
    for e in arr.edges:
        out.append(f'<polyline class="edge {escape(e.owner)}" data-edge="{e.id}" '
                   f'stroke="{COLORS.get(e.owner, "#000")}" points="{xy(e.p)} {xy(e.q)}"/>')
    out.append("</g>")
    strong = sorted(strong)
    if strong:
        out.append('<g id="strong" fill="none" stroke="#000" stroke-width="2.5" stroke-opacity="0.5">')
        for i in strong:
            e = arr.edges[i]
            out.append(f'<line x1="{xy(e.p).split(",")[0]}" y1="{xy(e.p).split(",")[1]}" '
                       f'x2="{xy(e.q).split(",")[0]}" y2="{xy(e.q).split(",")[1]}"/>')
        out.append("</g>")
    if central_line is not None:
        a, b = central_line
        out.append(f'<polyline id="central-line" fill="none" stroke="#888" stroke-dasharray="4 3" '
                   f'points="{xy(a)} {xy(b)}"/>')
    if tr is not None:
        pts = " ".join(xy(p) for p in tr.polyline(arr))
        out.append(f'<polyline id="trace" fill="none" stroke="#000" stroke-width="4" '
                   f'stroke-opacity="0.35" points="{pts}"/>')
    g = '<g id="vertices" fill="#000">'
    dots = [f'<circle cx="{xy(v.location).split(",")[0]}" cy="{xy(v.location).split(",")[1]}" r="1.5"/>'
            for v in arr.vertices if v.kind.name != "BEND"]
    out += [g, *dots, "</g>", "</svg>"]
    return "\n".join(out) + "\n"


def plot_instance(arr: Arrangement, path: str | Path, strong: Iterable[int] = (),
                  tr: TraceResult | None = None, title: str = "",
                  zoom: tuple[float, float, float, float] | None = None) -> None:
    """PNG of the traces with the traced path overlaid."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(10, 8), dpi=120)
    for label in "abc":
        for e in arr.edges_of(label):
            ax.plot([float(e.p.x), float(e.q.x)], [float(e.p.y), float(e.q.y)],
                    color=COLORS[label], lw=0.7)
    for i in strong:
        e = arr.edges[i]
        ax.plot([float(e.p.x), float(e.q.x)], [float(e.p.y), float(e.q.y)],
                color="k", lw=2.2, alpha=0.35)
    if tr is not None:
        pts = tr.polyline(arr)
        ax.plot([float(p.x) for p in pts], [float(p.y) for p in pts], color="k", lw=1.2)
    ax.set_aspect("equal")
    if zoom is not None:
        ax.set_xlim(zoom[0], zoom[2])
        ax.set_ylim(zoom[1], zoom[3])
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def plot_oscillation(distances: Sequence, heights: Sequence, path: str | Path) -> None:
    """Approach distance per sweep against the height schedule, log scale."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5, 3.5), dpi=120)
    xs = range(1, len(distances) + 1)
    ax.semilogy(list(xs), [float(d) for d in distances], "o-", label="approach distance")
    ax.semilogy(list(range(1, len(heights) + 1)), [float(h) for h in heights], "k--",
                lw=0.8, label="h_g")
    ax.set_xlabel("sweep")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
