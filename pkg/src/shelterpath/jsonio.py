"""JSON instance files.  Rationals travel as "p/q" strings so round trips are exact."""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .geometry import LABELS, Instance, PLPath, Point, pt


class InstanceFormatError(ValueError):
    pass


def rat_str(v: Fraction) -> str | int:
    v = Fraction(v)
    return v.numerator if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def point_json(p: Point) -> list:
    return [rat_str(p.x), rat_str(p.y)]


def _point(raw, where: str) -> Point:
    if not isinstance(raw, (list, tuple)) or len(raw) != 2:
        raise InstanceFormatError(f"{where}: expected [x, y], got {raw!r}")
    try:
        return pt(*raw)
    except (TypeError, ValueError) as exc:
        raise InstanceFormatError(f"{where}: {exc}") from None


def instance_from_dict(doc: dict) -> Instance:
    if not isinstance(doc, dict):
        raise InstanceFormatError("instance must be a JSON object")
    try:
        A, B, raw_paths = doc["A"], doc["B"], doc["paths"]
    except KeyError as exc:
        raise InstanceFormatError(f"missing key {exc.args[0]!r}") from None
    if not isinstance(raw_paths, dict) or sorted(raw_paths) != list(LABELS):
        raise InstanceFormatError("paths must have exactly the keys a, b, c")
    try:
        paths = []
        for label in LABELS:
            pts = [_point(v, f"paths.{label}[{i}]") for i, v in enumerate(raw_paths[label])]
            paths.append(PLPath(tuple(pts), label))
        return Instance(_point(A, "A"), _point(B, "B"), tuple(paths))
    except InstanceFormatError:
        raise
    except (TypeError, ValueError) as exc:
        raise InstanceFormatError(str(exc)) from None


def instance_to_dict(inst: Instance) -> dict:
    return {
        "A": point_json(inst.A),
        "B": point_json(inst.B),
        "paths": {p.label: [point_json(v) for v in p.vertices]
                  for p in sorted(inst.paths, key=lambda p: p.label)},
    }


def load_instance(path: str | Path) -> Instance:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"not valid JSON: {exc}") from None
    return instance_from_dict(doc)


def dump_json(doc, path: str | Path) -> None:
    Path(path).write_text(json.dumps(doc, indent=1, sort_keys=True) + "\n")
