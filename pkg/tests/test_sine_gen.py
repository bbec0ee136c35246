from fractions import Fraction

import pytest

from shelterpath.geometry import validate_general_position
from shelterpath.pipeline import run_pipeline
from shelterpath.sine_gen import (
    GenerationParams, ScheduleError, generate_stage, oscillation_metrics,
)


@pytest.fixture(scope="module")
def stages():
    out = {}
    for n in (1, 2, 3):
        stage = generate_stage(GenerationParams(n))
        res = run_pipeline(stage.instance)
        out[n] = (stage, res, oscillation_metrics(res.trace, stage, res.arrangement))
    return out


def test_params_validation():
    with pytest.raises(ValueError):
        GenerationParams(0)
    with pytest.raises(ValueError):
        GenerationParams(2, b_loop_coverage=Fraction(1))
    p = GenerationParams(3)
    assert [p.h(g) for g in (1, 2, 3)] == [Fraction(3, 8), Fraction(3, 16), Fraction(3, 32)]
    assert p.w(2) == p.w(1) / 2


def test_stage_one_inventory(stages):
    stage, _, _ = stages[1]
    assert stage.inventory() == {"standard-turning:a": 1, "straight:b": 2, "non-standard-open:c": 1}


def test_stage_two_adds_two_half_size_loops(stages):
    one, two = stages[1][0], stages[2][0]
    new = [lp for lp in two.loops if lp.generation == 2 and lp.kind == "standard-turning"]
    assert len(new) == 2
    assert two.params.w(2) == one.params.w(1) / 2


def test_stage_three_has_clovers_outside_the_leftmost_b_loop(stages):
    stage = stages[3][0]
    assert stage.clovers
    leftmost = next(lp for lp in stage.loops if lp.kind == "straight" and lp.generation == 0)
    L = stage.pieces["layout"]
    for col, crossing, at in stage.clovers:
        assert not (L.x_L0 <= at.x <= L.x_L)
        assert stage.loops[col].label != stage.loops[crossing].label
    assert leftmost.covers is None


@pytest.mark.parametrize("n", [1, 2, 3])
def test_labels_and_hooking(stages, n):
    stage = stages[n][0]
    for lp in stage.loops:
        if lp.kind == "straight":
            assert lp.label == "b"
        elif lp.kind == "standard-turning":
            assert lp.label in ("a", "c")
    for g in range(1, n + 1):
        gen = sorted((lp for lp in stage.loops if lp.generation == g and lp.kind == "standard-turning"),
                     key=lambda lp: lp.index)
        assert len(gen) == 2 ** (g - 1)
        assert gen[-1].label == "a"
        # neighbours within a generation are hooked, so their labels alternate
        assert all(x.label != y.label for x, y in zip(gen, gen[1:]))
        assert [lp.has_x_region for lp in gen] == [False] + [True] * (len(gen) - 1)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_every_loop_traversed_once_by_its_own_path(stages, n):
    stage = stages[n][0]
    paths = {p.label: p.vertices for p in stage.instance.paths}
    for lp in stage.loops:
        if lp.kind == "non-standard-open":
            continue
        inner = stage.pieces[lp.id].points[1:-1]
        for label, verts in paths.items():
            hits = [i for i in range(len(verts) - len(inner) + 1)
                    if verts[i:i + len(inner)] == tuple(inner)]
            assert len(hits) == (1 if label == lp.label else 0), (lp, label)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_stage_pipeline(stages, n):
    stage, res, osc = stages[n]
    assert validate_general_position(stage.instance).ok
    assert res.parity.ok
    assert osc.starts_on_open_loop
    assert osc.sweep_count >= n
    hs = [stage.params.h(g) for g in range(1, n + 1)]
    assert osc.approach_distances[:n] == hs
    assert all(hs[-1] <= d <= hs[0] for d in osc.approach_distances)


def test_first_section_winding_is_unit(stages):
    stage, res, _ = stages[1]
    arr = res.arrangement
    windings = {abs(res.report[i].winding_evidence.value) for i in res.trace.edges}
    assert windings == {1}
    assert {stage.tag_of(arr, i) for i in res.trace.edges} >= {"open-loop", "open-left", "horizontal"}


def test_schedule_collision_is_reported():
    with pytest.raises(ScheduleError, match="collides"):
        generate_stage(GenerationParams(6))
