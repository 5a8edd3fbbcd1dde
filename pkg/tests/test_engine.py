import os

import pytest

from nestbuilder.engine import LEGAL_MOVES, Side, Status, Weight, World, act_move, bring, direction_away, observe, place, route, turn
from nestbuilder.errors import EmptySource, HeavyRobot, IllegalAction, InvalidTarget, LightRobot, MissingLedger, NoAwayDirection, OccupiedTarget, OutOfReach, StartNotFull
from nestbuilder.grid import Cell, Direction, DiscLayout
from nestbuilder.trace import MOVE, NOTE, TURN

from . import line


@pytest.fixture
def world():
    return World(line(5), Cell(0, 0), sensing_cost=0)


def test_start_must_be_full():
    with pytest.raises(StartNotFull):
        World(line(3), Cell(0, 1))


def test_start_note(world):
    event = world.trace.events[0]
    assert event.kind == NOTE
    assert event.tag == 'start'
    assert event.payload['start'] == [0, 0]
    assert event.payload['field'] == [[x, 0] for x in range(5)]
    assert world.facing == Direction.NORTH
    assert world.weight == Weight.LIGHT


def test_legal_moves_table():
    assert LEGAL_MOVES[(Status.EMPTY, Weight.LIGHT)] == {
        (Status.EMPTY, Weight.LIGHT)
    }
    assert (Status.FULL, Weight.LIGHT) in LEGAL_MOVES[(Status.EMPTY,
                                                        Weight.HEAVY)]
    assert (Status.EMPTY, Weight.HEAVY) in LEGAL_MOVES[(Status.FULL,
                                                         Weight.LIGHT)]
    assert LEGAL_MOVES[(Status.FULL, Weight.HEAVY)] == {
        (Status.FULL, Weight.HEAVY)
    }


def test_step_pick_drop(world):
    world.step(Direction.EAST)
    assert world.position == Cell(1, 0)
    assert world.is_full(Cell(0, 0))

    world.pick_step(Direction.NORTH)
    assert world.position == Cell(1, 1)
    assert world.heavy
    assert not world.is_full(Cell(1, 0))
    assert world.bricks() == 5

    world.drop_step(Direction.SOUTH)
    assert world.is_full(Cell(1, 1))
    assert not world.heavy
    assert world.steps == 3
    assert world.bricks() == 5


def test_illegal_move_reports_index(world):
    world.step(Direction.NORTH)
    index = world.trace.count
    with pytest.raises(IllegalAction) as error:
        world.drop_step(Direction.SOUTH)
    assert error.value.index == index
    assert 'event %d' % index in str(error.value)
    assert world.position == Cell(0, 1)
    assert world.steps == 1

    with pytest.raises(IllegalAction):
        world.act_move(Direction.SOUTH, Status.FULL, Weight.HEAVY)


def test_move_events(world):
    world.pick_step(Direction.EAST)
    event = world.trace.events[-1]
    assert event.kind == MOVE
    assert event.at == Cell(0, 0)
    assert event.direction == Direction.EAST
    assert (event.leave, event.arrive) == ('e', 'h')


def test_turn_and_face(world):
    world.turn(Side.LEFT)
    assert world.facing == Direction.WEST
    assert world.trace.events[-1].kind == TURN
    world.face(Direction.EAST)
    assert world.facing == Direction.EAST
    assert [event.side for event in world.trace.events[-2:]] == [
        'left', 'left'
    ]
    world.face(Direction.SOUTH)
    assert world.facing == Direction.SOUTH
    assert world.trace.events[-1].side == 'right'
    assert world.steps == 0


def test_route_goes_vertical_first():
    assert route(Cell(0, 0), Cell(2, -1)) == [
        Direction.SOUTH, Direction.EAST, Direction.EAST
    ]
    assert route(Cell(1, 1), Cell(1, 1)) == []
    assert world_walk_length(Cell(0, 0), Cell(-3, 4)) == 7


def world_walk_length(source, target):
    world = World([source], source)
    return world.walk_to(target)


def test_bring_and_place_cost_twice_the_distance(world):
    world.bring(Cell(2, 0))
    assert world.steps == 4
    assert world.position == Cell(0, 0)
    assert world.heavy
    assert not world.is_full(Cell(2, 0))

    world.place(Cell(0, 3))
    assert world.steps == 10
    assert world.position == Cell(0, 0)
    assert not world.heavy
    assert world.is_full(Cell(0, 3))
    assert world.bricks() == 5


def test_bring_and_place_errors(world):
    with pytest.raises(InvalidTarget):
        world.bring(Cell(0, 0))
    with pytest.raises(EmptySource):
        world.bring(Cell(0, 1))
    with pytest.raises(LightRobot):
        world.place(Cell(0, 1))
    far = World(line(10), Cell(0, 0))
    with pytest.raises(OutOfReach):
        far.bring(Cell(9, 0))

    world.bring(Cell(1, 0))
    with pytest.raises(HeavyRobot):
        world.bring(Cell(2, 0))
    with pytest.raises(OccupiedTarget):
        world.place(Cell(3, 0))


def test_observe(world):
    view = world.observe()
    assert view.is_full((1, 0))
    assert view.neighbor_full(Direction.EAST)
    assert not view.neighbor_full(Direction.WEST)
    assert view.full_offsets() == [(x, 0) for x in range(5)]
    assert view.full_cells() == [Cell(x, 0) for x in range(5)]
    assert not view.marker_in_window
    with pytest.raises(OutOfReach):
        view.is_full((9, 0))

    world.set_marker(Cell(4, 0))
    assert world.observe().marker_in_window


def test_sensing_cost(mocker):
    mocker.patch.dict(os.environ, {'NESTBUILDER_SENSING_COST': '3'})
    world = World(line(2), Cell(0, 0))
    world.observe()
    world.observe()
    assert world.sensing_steps == 6
    assert world.steps == 0

    world = World(line(2), Cell(0, 0), sensing_cost=1)
    world.observe()
    assert world.sensing_steps == 1


def test_direction_away():
    world = World(line(3), Cell(2, 0))
    with pytest.raises(MissingLedger):
        world.direction_away()
    world.set_disc(DiscLayout(Cell(0, 0), 1))
    assert world.direction_away() == Direction.NORTH
    world.walk_to(Cell(0, 0))
    with pytest.raises(NoAwayDirection):
        world.direction_away()


def test_ledgers_are_noted(world):
    world.set_disc(DiscLayout(Cell(2, 0), 1))
    world.grow_disc()
    world.set_marker(Cell(0, 0))
    tags = [event.tag for event in world.trace.events if event.kind == NOTE]
    assert tags == ['start', 'disc', 'grow', 'marker']
    assert world.disc.size == 2
    assert sorted(world.free_cells()) == [Cell(1, 0), Cell(3, 0), Cell(4, 0)]
    assert world.has_free_cells()


def test_finish(world):
    world.pick_step(Direction.NORTH)
    world.finish()
    end = world.trace.events[-1]
    assert end.tag == 'end'
    assert end.payload == {
        'steps': 1,
        'bricks': 4,
        'position': [0, 1],
        'weight': 'h',
        'facing': 'N'
    }


def test_module_functions(world):
    assert observe(world).center == Cell(0, 0)
    assert act_move(world, Direction.EAST, Status.FULL, Weight.LIGHT) is world
    assert turn(world, Side.RIGHT) is world
    assert bring(world, Cell(2, 0)) is world
    assert place(world, Cell(1, 1)) is world
    world.set_disc(DiscLayout(Cell(3, 0), 1))
    assert direction_away(world) == Direction.NORTH
