"""Command-line entry point.

Exit codes: 0 success, 1 domain failure (bad instance, point on a trace,
schedule collision), 2 usage or parse error, 3 internal invariant breach.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .arrangement import Arrangement, build_faces
from .geometry import LABELS, Instance, pt, validate_general_position
from .jsonio import InstanceFormatError, dump_json, instance_to_dict, load_instance, point_json
from .pipeline import PipelineResult, run_pipeline
from .render import plot_instance, plot_oscillation, svg_scene
from .sine_gen import GenerationParams, OscillationError, ScheduleError, generate_stage, oscillation_metrics
from .tracer import ParityViolation, TraceError
from .winding import PointOnTraceError, loop_of, winding_number, winding_number_float

log = logging.getLogger("shelterpath")

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _emit(doc) -> None:
    print(json.dumps(doc, sort_keys=True))


def _load(path: str) -> Instance:
    try:
        return load_instance(path)
    except OSError as exc:
        raise CliError(EXIT_USAGE, f"cannot read {path}: {exc.strerror}") from None
    except InstanceFormatError as exc:
        raise CliError(EXIT_USAGE, f"parse error in {path}: {exc}") from None


def _require_valid(inst: Instance) -> None:
    rep = validate_general_position(inst)
    if not rep.ok:
        for v in rep.violations:
            _emit(v.as_dict())
        raise CliError(EXIT_DOMAIN, f"{len(rep.violations)} general-position violation(s)")


def _pipeline(inst: Instance) -> PipelineResult:
    try:
        res = run_pipeline(inst)
    except (ParityViolation, TraceError) as exc:
        raise CliError(EXIT_INTERNAL, f"internal invariant breach: {exc}") from None
    if not res.parity.ok:
        bad = res.parity.failures[0]
        loc = res.arrangement.vertices[bad.vertex].location
        raise CliError(EXIT_INTERNAL, f"parity check failed at {loc}: {bad.detail}")
    return res


def trace_document(res: PipelineResult, tag_of=None) -> dict:
    arr, tr = res.arrangement, res.trace
    edges = []
    for i in tr.edges:
        e = arr.edges[i]
        row = {"id": i, "owner": e.owner, "from": point_json(e.p), "to": point_json(e.q),
               "class": res.report[i].as_dict()}
        if tag_of is not None:
            row["role"] = tag_of(arr, i)
        edges.append(row)
    return {
        "edges": edges,
        "owners": tr.owners(arr),
        "polyline": [point_json(p) for p in tr.polyline(arr)],
        "switches": [{"at": point_json(arr.vertices[v].location), "rule": rule}
                     for v, rule in tr.switches],
        "strong_edges": res.report.strong_edges(),
        "n_edges": len(arr.edges),
        "n_vertices": len(arr.vertices),
    }


def _write_svg(arr: Arrangement, res: PipelineResult, path: Path, central=None) -> None:
    path.write_text(svg_scene(arr, res.report.strong_edges(), res.trace, central))


def cmd_validate(args) -> int:
    inst = _load(args.file)
    rep = validate_general_position(inst)
    for v in rep.violations:
        _emit(v.as_dict())
    if rep.ok:
        _emit({"valid": True, "crossings": len(rep.crossings)})
        return EXIT_OK
    return EXIT_DOMAIN


def cmd_trace(args) -> int:
    inst = _load(args.file)
    _require_valid(inst)
    res = _pipeline(inst)
    doc = trace_document(res)
    if args.svg:
        _write_svg(res.arrangement, res, Path(args.svg))
    if args.report:
        report = Path(args.report)
        dump_json(doc, report)
        plot_instance(res.arrangement, report.with_suffix(".png"), res.report.strong_edges(),
                      res.trace, title="strongly sheltered trace")
    _emit({"owners": doc["owners"], "edges": len(doc["edges"]),
           "switches": [s["rule"] for s in doc["switches"]]})
    return EXIT_OK


def cmd_counterexample(args) -> int:
    n = args.generations
    if n < 1:
        raise CliError(EXIT_USAGE, "--generations must be at least 1")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    params = GenerationParams(n)
    try:
        stage = generate_stage(params)
    except ScheduleError as exc:
        raise CliError(EXIT_DOMAIN, f"schedule violation: {exc}") from None
    _require_valid(stage.instance)
    res = _pipeline(stage.instance)
    try:
        osc = oscillation_metrics(res.trace, stage, res.arrangement)
    except OscillationError as exc:
        raise CliError(EXIT_INTERNAL, f"oscillation measurement failed: {exc}") from None

    doc = instance_to_dict(stage.instance)
    doc["annotations"] = stage.annotations()
    doc["annotations"]["inventory"] = stage.inventory()
    dump_json(doc, out / f"stage{n}.json")
    dump_json(trace_document(res, stage.tag_of), out / f"stage{n}_trace.json")
    dump_json(osc.as_dict(), out / f"stage{n}_oscillation.json")
    central = tuple(params.central_line)
    _write_svg(res.arrangement, res, out / f"stage{n}.svg", central)
    plot_instance(res.arrangement, out / f"stage{n}.png", res.report.strong_edges(), res.trace,
                  title=f"stage {n}")
    top = float(params.h(1)) * 1.3
    plot_instance(res.arrangement, out / f"stage{n}_zoom.png", res.report.strong_edges(), res.trace,
                  title=f"stage {n}, near the central line", zoom=(-0.1, -0.05, 1.3, top))
    plot_oscillation(osc.approach_distances, [params.h(g) for g in range(1, n + 1)],
                     out / f"stage{n}_oscillation.png")
    _emit({"generations": n, "sweep_count": osc.sweep_count,
           "approach_distances": [str(d) for d in osc.approach_distances],
           "starts_on_open_loop": osc.starts_on_open_loop, "out": str(out)})
    return EXIT_OK


def _parse_point(text: str):
    parts = text.split(",")
    if len(parts) != 2:
        raise CliError(EXIT_USAGE, f"--point expects 'x,y', got {text!r}")
    try:
        return pt(parts[0].strip(), parts[1].strip())
    except ValueError as exc:
        raise CliError(EXIT_USAGE, f"--point: {exc}") from None


def cmd_winding(args) -> int:
    inst = _load(args.file)
    labels = [s.strip() for s in args.loop.split(",")]
    if len(labels) != 2 or any(lb not in LABELS for lb in labels) or labels[0] == labels[1]:
        raise CliError(EXIT_USAGE, f"--loop expects two distinct labels like 'a,b', got {args.loop!r}")
    x = _parse_point(args.point)
    loop = loop_of(inst.path(labels[0]), inst.path(labels[1]))
    try:
        w = winding_number(loop, x)
    except PointOnTraceError as exc:
        raise CliError(EXIT_DOMAIN, str(exc)) from None
    _emit({"winding": w.value, "float": winding_number_float(loop, x), "ray": w.as_dict()["ray"],
           "loop": f"{labels[0]}^-1*{labels[1]}"})
    return EXIT_OK


def cmd_faces(args) -> int:
    inst = _load(args.file)
    labels = [s.strip() for s in args.paths.split(",")]
    if not labels or any(lb not in LABELS for lb in labels):
        raise CliError(EXIT_USAGE, f"--paths expects labels from a,b,c, got {args.paths!r}")
    try:
        fs = build_faces([inst.path(lb) for lb in labels])
    except ValueError as exc:
        raise CliError(EXIT_DOMAIN, str(exc)) from None
    _emit({"paths": labels, "vertices": len(fs.points), "edges": len(fs.edges),
           "faces": len(fs.faces), "bounded_faces": fs.n_bounded,
           "components": fs.n_components, "euler_characteristic": fs.euler_characteristic()})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="shelterpath", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check general position")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("trace", help="run the pipeline and trace the sheltered path")
    p.add_argument("file")
    p.add_argument("--svg")
    p.add_argument("--report", help="JSON report; a PNG figure is written next to it")
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("counterexample", help="generate, trace and measure stage n")
    p.add_argument("--generations", "-n", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("winding", help="winding number of a point about the loop of two paths")
    p.add_argument("file")
    p.add_argument("--point", required=True)
    p.add_argument("--loop", required=True)
    p.set_defaults(func=cmd_winding)

    p = sub.add_parser("faces", help="face statistics of the union of some paths")
    p.add_argument("file")
    p.add_argument("--paths", default="a,b,c")
    p.set_defaults(func=cmd_faces)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except Exception as exc:  # anything unforeseen is a bug, not a user error
        log.exception("unexpected failure")
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
