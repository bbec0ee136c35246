from fractions import Fraction

import pytest

from shelterpath.cantor import (
    BasedLoop, CantorPath, ConcatError, ConcatSpec, cantor_concatenate, check_disjoint, sup_distance,
)
from shelterpath.fixtures import comb_concat
from shelterpath.geometry import pt

UNIT = (pt(0, 0), pt(1, 0))
TRIANGLE = BasedLoop(pt("1/2", 0), (pt("1/2", "1/2"), pt("3/4", "1/2")))


def test_depth_zero_is_the_base_arc():
    path = cantor_concatenate(ConcatSpec(UNIT, (TRIANGLE,), 0))
    assert path.vertices == (pt(0, 0), pt("1/2", 0), pt(1, 0))
    cp = CantorPath(ConcatSpec(UNIT, (TRIANGLE,), 0))
    assert cp.at("1/2") == pt("1/2", 0)


def test_depth_one_puts_the_loop_on_the_middle_third():
    cp = CantorPath(ConcatSpec(UNIT, (TRIANGLE,), 1))
    assert cp.intervals() == {0: (Fraction(1, 3), Fraction(2, 3))}
    assert cp.at("1/3") == cp.at("2/3") == TRIANGLE.base
    assert cp.at("1/6") == pt("1/4", 0)
    assert cp.at("1/2") == pt("5/8", "1/2")  # middle of the second of three loop edges
    assert cp.polyline().vertices == (pt(0, 0), *TRIANGLE.points(), pt(1, 0))


def test_errors():
    off = BasedLoop(pt("1/2", 1), (pt(1, 2), pt(0, 2)))
    with pytest.raises(ConcatError):
        CantorPath(ConcatSpec(UNIT, (off,), 1))
    with pytest.raises(ConcatError):
        CantorPath(ConcatSpec(UNIT, (TRIANGLE, TRIANGLE), 1))
    end = BasedLoop(pt(1, 0), (pt(1, 1), pt(2, 1)))
    with pytest.raises(ConcatError):
        CantorPath(ConcatSpec(UNIT, (end,), 1))
    dipping = BasedLoop(pt("1/4", 0), (pt("1/4", 1), pt("3/4", -1)))
    with pytest.raises(ConcatError, match="base arc"):
        check_disjoint(ConcatSpec(UNIT, (dipping,), 1))
    other = BasedLoop(pt("5/8", 0), (pt("5/8", "1/4"), pt(0, "1/4")))
    with pytest.raises(ConcatError, match="overlap"):
        check_disjoint(ConcatSpec(UNIT, (TRIANGLE, other), 1))
    with pytest.raises(ConcatError):
        ConcatSpec(UNIT, (), -1)


@pytest.mark.parametrize("depth", range(7))
def test_comb_traverses_first_levels_once(depth):
    cp = CantorPath(comb_concat(depth))
    loops = [i for kind, i, _ in cp.pieces() if kind == "loop"]
    assert len(loops) == len(set(loops)) == 2 ** depth - 1
    assert sorted(loops) == sorted(cp.active())
    # each traversal keeps the loop's orientation
    for kind, i, pts in cp.pieces():
        if kind == "loop":
            assert pts == cp.spec.loops[i].points()


def test_removing_loops_leaves_the_base_arc():
    cp = CantorPath(comb_concat(4))
    arc_pts = []
    for kind, _, pts in cp.pieces():
        if kind == "arc":
            arc_pts += pts
    assert all(p.y == 0 for p in arc_pts)
    xs = [p.x for p in arc_pts]
    assert xs == sorted(xs) and xs[0] == 0 and xs[-1] == 126


def test_successive_depths_are_close():
    for k in range(4):
        a, b = CantorPath(comb_concat(k)), CantorPath(comb_concat(k + 1))
        new = set(b.active()) - set(a.active())
        bound = max(b.spec.loops[i].diameter() for i in new)
        assert sup_distance(a, b, samples=2000) <= bound + 1e-12
