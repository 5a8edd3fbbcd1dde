import pytest

from nestbuilder.engine import World
from nestbuilder.errors import LeafShifting, MarkerNotFound, NotABreakPoint, WalkEscaped
from nestbuilder.fixtures import STAIRCASE_EXTRA, STAIRCASE_MARKER, STAIRCASE_WALK, staircase_world
from nestbuilder.grid import Cell, Direction, components
from nestbuilder.trace import NOTE
from nestbuilder.walks import BreakPoint, FreeSide, StopRule, WalkMemory, WalkOrientation, c_prime_full, do_switch, return_switch_traversal, reversal, shifting, switch_traversal, traverse_segment

from . import line

SEGMENTS = [
    [(0, 0), (0, 1), (0, 2)],
    [(0, 2), (-1, 2), (-2, 2), (-3, 2), (-4, 2), (-5, 2)],
    [(-5, 2), (-5, 3), (-5, 4)],
    [(-5, 4), (-6, 4)],
    [(-6, 4), (-6, 5)],
    [(-x, 5) for x in range(6, 15)],
]
SIDES = [
    FreeSide.BOTH, FreeSide.RIGHT, FreeSide.LEFT, FreeSide.RIGHT,
    FreeSide.LEFT, FreeSide.RIGHT
]
BREAK_POINTS = [
    BreakPoint(Cell(-3, 2), Cell(-3, 1), Cell(-3, 3)),
    BreakPoint(Cell(-4, 2), Cell(-4, 1), Cell(-4, 3)),
    BreakPoint(Cell(-5, 3), Cell(-4, 3), Cell(-6, 3)),
    BreakPoint(Cell(-7, 5), Cell(-7, 4), Cell(-7, 6)),
    BreakPoint(Cell(-9, 5), Cell(-9, 4), Cell(-9, 6)),
    BreakPoint(Cell(-10, 5), Cell(-10, 4), Cell(-10, 6)),
]


def notes(world, tag):
    return [
        event for event in world.trace.events
        if event.kind == NOTE and event.tag == tag
    ]


@pytest.fixture
def staircase():
    world = staircase_world()
    world.walk_to(STAIRCASE_WALK[0])
    world.face(Direction.NORTH)
    return world


def test_staircase_search_walk(staircase):
    walk = switch_traversal(staircase)

    assert [list(segment.cells) for segment in walk.segments] == SEGMENTS
    assert [segment.side for segment in walk.segments] == SIDES
    assert [segment.terminal for segment in walk.segments
           ] == [False] * 5 + [True]
    assert walk.orientation == WalkOrientation.LEFT
    assert list(walk.break_points) == BREAK_POINTS
    assert walk.cells() == list(STAIRCASE_WALK)
    assert staircase.position == Cell(-14, 5)
    assert not staircase.heavy
    assert len(notes(staircase, 'segment')) == 6
    assert len(notes(staircase, 'break')) == 6
    # last segment of 9 cells after one of 2, count capped at three
    assert walk.memory == WalkMemory(FreeSide.RIGHT, False, True, 3)


def test_switches_move_bricks(staircase):
    switch_traversal(staircase)
    for cell in [(-3, 3), (-6, 3), (-7, 6), (-9, 6), (-10, 6)]:
        assert staircase.is_full(Cell(*cell))
    for cell in [(-3, 1), (-4, 1), (-4, 3), (-7, 4), (-9, 4), (-10, 4)]:
        assert not staircase.is_full(Cell(*cell))
    assert staircase.bricks() == 28


def test_staircase_shifting(staircase):
    walk = switch_traversal(staircase)
    record = shifting(staircase, walk)

    assert record.filled == (Cell(-13, 4), Cell(-12, 4), Cell(-11, 4))
    assert record.emptied == (
        Cell(-14, 5), Cell(-13, 5), Cell(-12, 5), Cell(-11, 5))
    assert record.end_cell == Cell(-10, 5)
    assert record.side == Direction.SOUTH
    assert record.carried
    assert staircase.position == Cell(-10, 5)
    assert staircase.heavy
    assert not c_prime_full(staircase, record)
    assert staircase.bricks() == 28


def test_staircase_return(staircase):
    walk = switch_traversal(staircase)
    shifting(staircase, walk)
    return_switch_traversal(staircase, reversal(walk), STAIRCASE_MARKER)

    assert staircase.position == Cell(0, 0)
    assert staircase.heavy
    assert len(notes(staircase, 'unbreak')) == 6
    expected = set(STAIRCASE_WALK + STAIRCASE_EXTRA)
    expected -= {Cell(-14, 5), Cell(-13, 5), Cell(-12, 5), Cell(-11, 5)}
    expected |= {Cell(-13, 4), Cell(-12, 4), Cell(-11, 4)}
    assert set(staircase.free_cells()) == expected
    assert len(components(expected)) == 1


def test_reversal(staircase):
    walk = switch_traversal(staircase)
    rwalk = reversal(walk)
    assert rwalk.segments[0].cells == tuple(reversed(SEGMENTS[-1]))
    assert [segment.side for segment in rwalk.segments] == SIDES[::-1]
    assert rwalk.segments[0].direction == Direction.EAST
    assert rwalk.orientation == WalkOrientation.RIGHT
    assert rwalk.cells() == list(reversed(STAIRCASE_WALK))
    assert rwalk.break_points == walk.break_points
    assert rwalk.memory == walk.memory


def test_do_switch_costs_four_steps():
    world = World(line(3, y=0) + [Cell(1, 1)], Cell(0, 0))
    world.step(Direction.EAST)
    world.face(Direction.EAST)
    steps = world.steps
    point = do_switch(world, FreeSide.RIGHT)
    assert point == BreakPoint(Cell(1, 0), Cell(1, 1), Cell(1, -1))
    assert world.steps - steps == 4
    assert world.position == Cell(1, 0)
    assert world.is_full(Cell(1, -1))
    assert not world.is_full(Cell(1, 1))

    # walking back, the same side is free and the brick goes home
    world.face(Direction.WEST)
    point = do_switch(world, FreeSide.RIGHT, restore=True)
    assert point == BreakPoint(Cell(1, 0), Cell(1, -1), Cell(1, 1))
    assert world.is_full(Cell(1, 1))
    assert not world.is_full(Cell(1, -1))
    assert world.steps - steps == 8
    assert len(notes(world, 'unbreak')) == 1


def test_restore_switch_ignores_the_cell_behind():
    world = World([Cell(0, 0), Cell(1, 0), Cell(1, 1)], Cell(1, 0))
    world.face(Direction.WEST)
    with pytest.raises(NotABreakPoint):
        do_switch(world, FreeSide.LEFT)
    do_switch(world, FreeSide.LEFT, restore=True)
    assert world.is_full(Cell(1, -1))
    assert not world.is_full(Cell(1, 1))


def test_do_switch_heavy_places_first():
    world = World(line(4) + [Cell(1, 1)], Cell(3, 0))
    world.pick_step(Direction.WEST)
    world.step(Direction.WEST)
    world.face(Direction.EAST)
    point = do_switch(world, FreeSide.RIGHT)
    assert point.source == Cell(1, 1)
    assert world.heavy
    assert world.is_full(Cell(1, -1))
    assert not world.is_full(Cell(1, 1))
    assert world.bricks() == 5


def test_not_a_break_point():
    world = World(line(3) + [Cell(1, 1)], Cell(1, 0))
    world.face(Direction.EAST)
    with pytest.raises(NotABreakPoint):
        do_switch(world, FreeSide.BOTH)
    with pytest.raises(NotABreakPoint):
        do_switch(world, FreeSide.LEFT)
    world.walk_to(Cell(0, 0))
    with pytest.raises(NotABreakPoint):
        do_switch(world, FreeSide.RIGHT)


def test_traverse_segment_escape():
    world = World(line(2), Cell(0, 0))
    with pytest.raises(WalkEscaped):
        traverse_segment(world, FreeSide.BOTH)


def test_line_walk_ends_at_a_leaf():
    world = World(line(3), Cell(0, 0))
    world.face(Direction.EAST)
    walk = switch_traversal(world)
    assert len(walk.segments) == 1
    assert walk.segments[0].terminal
    assert not walk.is_trivial
    assert world.position == Cell(2, 0)
    with pytest.raises(LeafShifting):
        shifting(world, walk)


def test_single_cell_walk():
    world = World([Cell(4, 4)], Cell(4, 4))
    walk = switch_traversal(world)
    assert walk.is_trivial
    assert walk.orientation == WalkOrientation.TRIVIAL
    assert walk.cells() == [Cell(4, 4)]
    assert world.steps == 0


def test_marker_stop_rule():
    world = World([Cell(0, y) for y in range(8)], Cell(0, 7))
    world.face(Direction.SOUTH)
    world.set_marker(Cell(0, -2))
    segment = traverse_segment(
        world, FreeSide.BOTH, StopRule.MARKER, marker=Cell(0, -2))
    assert segment.last == Cell(0, 2)
    assert segment.terminal


def test_return_without_break_points():
    world = World([Cell(0, y) for y in range(6)], Cell(0, 0))
    walk = switch_traversal(world)
    assert world.position == Cell(0, 5)
    rwalk = reversal(walk)
    world.face(Direction.SOUTH)
    world.set_marker(Cell(0, -2))

    return_switch_traversal(world, rwalk, Cell(0, -2))
    assert world.position == Cell(0, 2)
    assert world.steps == 8
    assert notes(world, 'unbreak') == []


def test_return_stops_on_arrival():
    world = World([Cell(0, y) for y in range(6)], Cell(0, 0))
    rwalk = reversal(switch_traversal(world))
    world.face(Direction.SOUTH)
    world.set_marker(Cell(0, -1))
    world.walk_to(Cell(0, 3))
    steps = world.steps
    return_switch_traversal(world, rwalk, Cell(0, -1))
    assert world.position == Cell(0, 3)
    assert world.steps == steps

    # without the arrival check the robot walks on
    return_switch_traversal(world, rwalk, Cell(0, -1), arrived=False)
    assert world.position == Cell(0, 2)


def test_return_marker_not_found():
    world = World([Cell(0, y) for y in range(6)], Cell(0, 0))
    rwalk = reversal(switch_traversal(world))
    world.face(Direction.SOUTH)
    world.set_marker(Cell(0, -20))
    with pytest.raises(MarkerNotFound):
        return_switch_traversal(world, rwalk, Cell(0, -20))
    assert world.position == Cell(0, 0)
    world.walk_to(Cell(3, 3))
    world.set_marker(Cell(0, -2))
    with pytest.raises(MarkerNotFound):
        return_switch_traversal(world, rwalk, Cell(0, -2))
