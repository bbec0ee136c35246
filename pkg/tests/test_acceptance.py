"""One test per acceptance criterion; each records a PASS/FAIL line for the terminal summary."""
import random
import time
from fractions import Fraction

import pytest

from conftest import record
from shelterpath.arrangement import VertexKind
from shelterpath.cantor import CantorPath, sup_distance
from shelterpath.fixtures import CANONICAL, comb_concat
from shelterpath.geometry import pt, validate_general_position
from shelterpath.pipeline import run_pipeline
from shelterpath.sine_gen import GenerationParams, generate_stage, oscillation_metrics
from shelterpath.winding import LoopPolyline, PointOnTraceError, winding_number, winding_number_float


def degree_problems(res) -> list[str]:
    """Recount strongly sheltered edges at each vertex, independently of the library's checker."""
    arr, rep = res.arrangement, res.report
    out = []
    for v in arr.vertices:
        strong = [arr.edges[i] for i in v.edges if rep[i].strongly]
        n = len(strong)
        if v.kind is VertexKind.CROSSING:
            ok = n == 2 and strong[0].owner != strong[1].owner
        elif v.kind is VertexKind.SELF_CROSSING:
            ok = n in (0, 4)
        elif v.kind in (VertexKind.ENDPOINT_A, VertexKind.ENDPOINT_B):
            ok = n in (1, 3)
        else:
            ok = n in (0, 2)
        if not ok:
            out.append(f"{v.kind.value} at {v.location} has {n}")
    return out


def walk_problems(res) -> list[str]:
    arr, tr = res.arrangement, res.trace
    if tr is None:
        return ["no trace"]
    out = []
    if tr.vertices[0] != arr.A.id or tr.vertices[-1] != arr.B.id:
        out.append("walk does not run from A to B")
    if len(set(tr.edges)) != len(tr.edges):
        out.append("edge repeated")
    for k, i in enumerate(tr.edges):
        e = arr.edges[i]
        if not res.report[i].strongly:
            out.append(f"edge {i} not strongly sheltered")
        if {e.u, e.v} != {tr.vertices[k], tr.vertices[k + 1]}:
            out.append(f"edge {i} does not join consecutive walk vertices")
    return out


@pytest.fixture(scope="module")
def stage_runs():
    out = {}
    for n in (1, 2, 3, 4):
        t0 = time.perf_counter()
        stage = generate_stage(GenerationParams(n))
        res = run_pipeline(stage.instance)
        osc = oscillation_metrics(res.trace, stage, res.arrangement)
        out[n] = (stage, res, osc, time.perf_counter() - t0)
    return out


def test_criterion_1_parity(random_suite):
    insts, results, elapsed = random_suite
    sizes_ok = all(len(p) <= 10 for inst in insts for p in inst.paths)
    rational = all(isinstance(c, Fraction) for inst in insts for p in inst.paths
                   for v in p.vertices for c in v)
    problems = [(k, d) for k, res in enumerate(results) for d in degree_problems(res)]
    ok = len(insts) >= 200 and sizes_ok and rational and not problems and elapsed < 60
    crossings = sum(v.kind is VertexKind.CROSSING for res in results for v in res.arrangement.vertices)
    record("1 parity", ok, f"{len(insts)} instances, {crossings} crossings, "
                           f"{len(problems)} violations, {elapsed:.1f}s (limit 60s)")
    assert sizes_ok and rational
    assert not problems, problems[:5]
    assert elapsed < 60


def test_criterion_2_existence(random_suite):
    _, results, _ = random_suite
    bad = [(k, p) for k, res in enumerate(results) for p in walk_problems(res)]
    good = len(results) - len({k for k, _ in bad})
    record("2 existence", not bad, f"{good}/{len(results)} valid A-to-B walks")
    assert not bad, bad[:5]


def _random_loop(rng: random.Random) -> LoopPolyline:
    while True:
        n = rng.randint(3, 12)
        vs = [pt(Fraction(rng.randint(-80, 80), 8), Fraction(rng.randint(-80, 80), 8)) for _ in range(n)]
        if all(vs[i] != vs[i - 1] for i in range(n)):
            return LoopPolyline(tuple(vs))


def test_criterion_3_winding_oracle():
    rng = random.Random(31)
    pairs, mismatches, worst, nonzero = 0, [], 0.0, 0
    ray_checks, ray_failures = 0, []
    while pairs < 1000:
        loop = _random_loop(rng)
        x = pt(Fraction(rng.randint(-110, 110), 11), Fraction(rng.randint(-110, 110), 11))
        try:
            w = winding_number(loop, x)
        except PointOnTraceError:
            continue
        pairs += 1
        approx = winding_number_float(loop, x)
        worst = max(worst, abs(approx - w.value))
        nonzero += w.value != 0
        if w.value != round(approx) or abs(approx - w.value) >= 1e-6:
            mismatches.append((loop, x, w.value, approx))
        if ray_checks < 100:
            ray_checks += 1
            others = {winding_number(loop, x, skip=s).value for s in (1, 2, 3)}
            if others != {w.value}:
                ray_failures.append((loop, x))
    ok = not mismatches and not ray_failures and ray_checks == 100
    record("3 winding oracle", ok, f"{pairs} pairs ({nonzero} nonzero), worst residue {worst:.2e}, "
                                   f"{ray_checks} ray-independence checks, "
                                   f"{len(mismatches) + len(ray_failures)} failures")
    assert not mismatches, mismatches[:3]
    assert not ray_failures, ray_failures[:3]


def test_criterion_4_implication_chain(random_suite, stage_runs):
    _, results, _ = random_suite
    runs = list(results) + [run_pipeline(make()) for name, make in CANONICAL.items()
                            if name != "triple-point"]
    runs += [res for _, res, _, _ in stage_runs.values()]
    edges, broken = 0, 0
    for res in runs:
        for c in res.report.classes.values():
            edges += 1
            if (c.strongly and not c.sheltered) or (c.sheltered and not c.weakly):
                broken += 1
    pocket = run_pipeline(CANONICAL["zero-winding-pocket"]())
    weak_only = [c for c in pocket.report.classes.values()
                 if c.weakly and not c.sheltered and c.winding_evidence.value == 0]
    double = run_pipeline(CANONICAL["double-winding"]())
    not_strong = [c for c in double.report.classes.values()
                  if c.sheltered and not c.strongly and abs(c.winding_evidence.value) == 2]
    ok = broken == 0 and bool(weak_only) and bool(not_strong)
    record("4 implication chain", ok, f"{edges} classified edges, {broken} broken; pocket edges "
                                      f"{len(weak_only)}, winding-2 edges {len(not_strong)}")
    assert broken == 0 and weak_only and not_strong


def test_criterion_5_counterexample_stages(stage_runs):
    lines, ok = [], True
    for n, (stage, res, osc, secs) in stage_runs.items():
        hs = [stage.params.h(g) for g in range(1, n + 1)]
        ds = osc.approach_distances
        checks = {
            "valid": validate_general_position(stage.instance).ok,
            "parity": res.parity.ok and not degree_problems(res),
            "starts at P on the open c-loop": osc.starts_on_open_loop
            and res.arrangement.vertices[res.trace.vertices[0]].location == stage.P,
            "sweeps": osc.sweep_count >= n,
            "strictly decreasing": all(x > y for x, y in zip(ds, ds[1:])),
            "matches h_g": ds[:n] == hs,
            "time": n != 4 or secs < 120,
        }
        failed = [k for k, v in checks.items() if not v]
        ok &= not failed
        lines.append(f"n={n}: {osc.sweep_count} sweeps, distances {[str(d) for d in ds]}, "
                     f"{secs:.1f}s{' FAILED ' + ','.join(failed) if failed else ''}")
    record("5 counterexample stages", ok, "; ".join(lines))
    assert ok, lines


def test_criterion_6_cantor():
    paths = {k: CantorPath(comb_concat(k)) for k in range(7)}
    n_loops = len(paths[0].spec.loops)
    problems = []
    for k, cp in paths.items():
        seen = [i for kind, i, _ in cp.pieces() if kind == "loop"]
        first = sorted(i for i, lv in cp.levels.items() if lv < k)
        if len(seen) != 2 ** k - 1 or len(set(seen)) != len(seen) or sorted(seen) != first:
            problems.append(f"depth {k} traverses {len(seen)} loops")
    gaps = []
    for k in range(6):
        a, b = paths[k], paths[k + 1]
        new = set(b.active()) - set(a.active())
        bound = max(b.spec.loops[i].diameter() for i in new)
        d = sup_distance(a, b, samples=10_000)
        gaps.append(f"{d:.3f}<={bound:.3f}")
        if d > bound + 1e-12:
            problems.append(f"depth {k}->{k + 1}: sup distance {d} above {bound}")
    ok = n_loops >= 63 and not problems
    record("6 cantor concatenation", ok, f"{n_loops} loops, depths 0..6, sup distances {', '.join(gaps)}")
    assert ok, problems


def test_criterion_7_canonical():
    nested = run_pipeline(CANONICAL["nested-arcs"]())
    arr = nested.arrangement
    middle = [pt(0, 0), pt(2, 1), pt(4, 0)]
    nested_ok = nested.trace.polyline(arr) == middle and set(nested.trace.owners(arr)) == {"b"}
    cross = run_pipeline(CANONICAL["x-crossing"]())
    arr = cross.arrangement
    owners = cross.trace.owners(arr)
    at = arr.vertex_at(pt(2, 0)).id
    k = cross.trace.vertices.index(at)
    cross_ok = (owners == ["a", "a", "b", "b"] and (at, "switch") in cross.trace.switches
                and owners[k - 1] != owners[k])
    record("7 canonical fixtures", nested_ok and cross_ok,
           f"nested arcs trace {'=' if nested_ok else '!='} middle arc; "
           f"x-crossing owners {owners}, switch at (2, 0)")
    assert nested_ok and cross_ok

