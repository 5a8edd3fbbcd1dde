'''The robot world

A :class:`World` owns the field, the robot pose, the marker and rough-disc
ledgers, the step counters and the trace. Only :meth:`World.act_move` and
:meth:`World.turn` change the robot or the field; everything else in the
package is built from those two.

Moves and facing are independent: the robot may step in any direction,
turning only matters for the relative left/front/right of search walks.
'''
from enum import Enum
from logging import getLogger
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Tuple

from nestbuilder.errors import EmptySource, HeavyRobot, IllegalAction, InvalidTarget, LightRobot, MissingLedger, NoAwayDirection, OccupiedTarget, OutOfReach, StartNotFull
from nestbuilder.grid import DIRECTIONS, Cell, Direction, DiscLayout, is_special, manhattan, neighbor, order_key
from nestbuilder.trace import MOVE, NOTE, TURN, Trace, TraceEvent, cell_payload
from nestbuilder.utils import get_env_int

__all__ = [
    'SENSING_RADIUS',
    'DEFAULT_SENSING_COST',
    'Status',
    'Weight',
    'Side',
    'RobotPose',
    'WorldState',
    'Observation',
    'World',
    'LEGAL_MOVES',
    'route',
    'observe',
    'act_move',
    'turn',
    'bring',
    'place',
    'direction_away',
]

_logger = getLogger(__name__)

SENSING_RADIUS = 8
DEFAULT_SENSING_COST = 0


class Status(str, Enum):
    EMPTY = 'e'
    FULL = 'f'


class Weight(str, Enum):
    LIGHT = 'l'
    HEAVY = 'h'


class Side(str, Enum):
    LEFT = 'left'
    RIGHT = 'right'


# (status of the current cell, weight) -> allowed (leave, arrive)
LEGAL_MOVES: Dict[Tuple[Status, Weight], FrozenSet[Tuple[Status, Weight]]] = {
    (Status.EMPTY, Weight.LIGHT):
        frozenset({(Status.EMPTY, Weight.LIGHT)}),
    (Status.EMPTY, Weight.HEAVY):
        frozenset({(Status.EMPTY, Weight.HEAVY), (Status.FULL, Weight.LIGHT)}),
    (Status.FULL, Weight.LIGHT):
        frozenset({(Status.FULL, Weight.LIGHT), (Status.EMPTY, Weight.HEAVY)}),
    (Status.FULL, Weight.HEAVY):
        frozenset({(Status.FULL, Weight.HEAVY)}),
}


class RobotPose(NamedTuple):
    position: Cell
    facing: Direction
    weight: Weight

    @property
    def heavy(self) -> bool:
        return self.weight == Weight.HEAVY


class WorldState(NamedTuple):
    '''Everything replay has to reproduce'''
    full: FrozenSet[Cell]
    pose: RobotPose
    marker: Optional[Cell]
    disc: Optional[DiscLayout]


def route(source: Cell, target: Cell) -> List[Direction]:
    '''Shortest route from source to target, vertical leg first'''
    dx = target[0] - source[0]
    dy = target[1] - source[1]
    directions = []
    directions.extend(
        [Direction.NORTH if dy > 0 else Direction.SOUTH] * abs(dy))
    directions.extend([Direction.EAST if dx > 0 else Direction.WEST] * abs(dx))
    return directions


class Observation:
    '''What the robot sees from its cell: everything within SENSING_RADIUS

    The view reads the live field, so it is only valid until the next action.
    '''

    __slots__ = ('_world', 'center', 'marker_in_window', 'disc_in_window')

    def __init__(self, world: 'World'):
        self._world = world
        self.center = world.position
        marker = world.marker
        self.marker_in_window = (
            marker is not None and
            manhattan(marker, self.center) <= SENSING_RADIUS)
        disc = world.disc
        self.disc_in_window = (
            disc is not None and disc.within(self.center, SENSING_RADIUS))

    def _absolute(self, offset: Tuple[int, int]) -> Cell:
        if abs(offset[0]) + abs(offset[1]) > SENSING_RADIUS:
            raise OutOfReach('Offset outside the sensing window: %r' % (offset,))
        return Cell(self.center[0] + offset[0], self.center[1] + offset[1])

    def is_full(self, offset: Tuple[int, int]) -> bool:
        return self._absolute(offset) in self._world.full

    def is_full_cell(self, cell: Cell) -> bool:
        return self.is_full((cell[0] - self.center[0], cell[1] - self.center[1]))

    def neighbor_full(self, direction: Direction) -> bool:
        return self.is_full((direction.dx, direction.dy))

    def is_special(self, assume_full: Iterable[Cell] = ()) -> bool:
        assume_full = tuple(assume_full)
        for cell in assume_full:
            self._absolute((cell[0] - self.center[0], cell[1] - self.center[1]))
        return is_special(self._world.full, self.center, assume_full)

    def full_offsets(self) -> List[Tuple[int, int]]:
        result = []
        for dy in range(-SENSING_RADIUS, SENSING_RADIUS + 1):
            width = SENSING_RADIUS - abs(dy)
            for dx in range(-width, width + 1):
                if self.is_full((dx, dy)):
                    result.append((dx, dy))
        return result

    def full_cells(self) -> List[Cell]:
        return [self._absolute(offset) for offset in self.full_offsets()]


class World:
    '''Field, robot and ledgers of one run

    :param full: the initial full cells
    :param start: the robot's start cell, which must be full
    :param sensing_cost: charged to sensing_steps per observation, defaults to
        the NESTBUILDER_SENSING_COST environment variable
    :param trace: event recorder, a fresh in-memory one by default
    '''

    def __init__(
            self,
            full: Iterable[Cell],
            start: Cell,
            facing: Direction = Direction.NORTH,
            sensing_cost: Optional[int] = None,
            trace: Optional[Trace] = None):
        self.full = set(Cell(*cell) for cell in full)
        start = Cell(*start)
        if start not in self.full:
            raise StartNotFull('Robot must start on a full cell: %r' % (start,))
        if sensing_cost is None:
            sensing_cost = get_env_int(
                'NESTBUILDER_SENSING_COST', DEFAULT_SENSING_COST)
        self.sensing_cost = sensing_cost
        self.pose = RobotPose(start, facing, Weight.LIGHT)
        self.marker: Optional[Cell] = None
        self.disc: Optional[DiscLayout] = None
        self.steps = 0
        self.sensing_steps = 0
        self.trace = trace if trace is not None else Trace()
        self.note(
            'start', {
                'field': [
                    cell_payload(cell)
                    for cell in sorted(self.full, key=order_key)
                ],
                'start': cell_payload(start),
                'facing': facing.symbol,
            })

    @property
    def position(self) -> Cell:
        return self.pose.position

    @property
    def facing(self) -> Direction:
        return self.pose.facing

    @property
    def weight(self) -> Weight:
        return self.pose.weight

    @property
    def heavy(self) -> bool:
        return self.pose.weight == Weight.HEAVY

    def is_full(self, cell: Cell) -> bool:
        return cell in self.full

    def bricks(self) -> int:
        '''Bricks on the field plus the carried one, constant over a run'''
        return len(self.full) + (1 if self.heavy else 0)

    def free_cells(self) -> List[Cell]:
        '''Full cells outside the rough disc and the marker'''
        disc = self.disc
        return [
            cell for cell in self.full if cell != self.marker and
            (disc is None or cell not in disc)
        ]

    def has_free_cells(self) -> bool:
        disc_size = 0 if self.disc is None else self.disc.size
        marker = 0 if self.marker is None else 1
        return len(self.full) > disc_size + marker

    def state(self) -> WorldState:
        return WorldState(frozenset(self.full), self.pose, self.marker, self.disc)

    def _record(self, kind: str, **kwargs) -> None:
        trace = self.trace
        if trace.active:
            trace.append(
                TraceEvent(trace.count, kind, self.position, **kwargs))
        else:
            trace.skip()

    # atomic actions

    def act_move(self, direction: Direction, leave: Status,
                 arrive: Weight) -> None:
        position = self.position
        status = Status.FULL if position in self.full else Status.EMPTY
        leave, arrive = Status(leave), Weight(arrive)
        if (leave, arrive) not in LEGAL_MOVES[(status, self.weight)]:
            raise IllegalAction(
                '%s robot on %s cell %r cannot leave %s and arrive %s' % (
                    self.weight.name.lower(), status.name.lower(), position,
                    leave.value, arrive.value), self.trace.count)
        self._record(
            MOVE, direction=direction, leave=leave.value, arrive=arrive.value)
        if leave == Status.FULL:
            self.full.add(position)
        else:
            self.full.discard(position)
        self.pose = RobotPose(neighbor(position, direction), self.facing, arrive)
        self.steps += 1

    def turn(self, side: Side) -> None:
        side = Side(side)
        self._record(TURN, side=side.value)
        if side == Side.LEFT:
            facing = self.facing.left()
        else:
            facing = self.facing.right()
        self.pose = self.pose._replace(facing=facing)

    def note(self, tag: str, payload: Optional[dict] = None) -> None:
        self._record(NOTE, tag=tag, payload=payload or {})

    # ledgers

    def set_marker(self, cell: Optional[Cell]) -> None:
        self.marker = cell
        self.note('marker', {'cell': cell_payload(cell)})

    def set_disc(self, disc: Optional[DiscLayout]) -> None:
        self.disc = disc
        if disc is None:
            self.note('disc', {'center': None, 'size': 0})
        else:
            self.note(
                'disc', {
                    'center': cell_payload(disc.center),
                    'size': disc.size
                })

    def grow_disc(self) -> None:
        if self.disc is None:
            raise MissingLedger('No rough disc to grow')
        self.disc = self.disc.grown()
        self.note('grow', {'size': self.disc.size})

    def finish(self) -> None:
        self.note(
            'end', {
                'steps': self.steps,
                'bricks': len(self.full),
                'position': cell_payload(self.position),
                'weight': self.weight.value,
                'facing': self.facing.symbol,
            })
        self.trace.flush()

    # composite movement

    def step(self, direction: Direction) -> None:
        '''Move one cell, leaving the cell as it was'''
        status = Status.FULL if self.position in self.full else Status.EMPTY
        self.act_move(direction, status, self.weight)

    def pick_step(self, direction: Direction) -> None:
        '''Pick the brick of the current cell and move on'''
        self.act_move(direction, Status.EMPTY, Weight.HEAVY)

    def drop_step(self, direction: Direction) -> None:
        '''Drop the carried brick on the current cell and move on'''
        self.act_move(direction, Status.FULL, Weight.LIGHT)

    def walk_to(self, target: Cell) -> int:
        directions = route(self.position, target)
        for direction in directions:
            self.step(direction)
        return len(directions)

    def face(self, direction: Direction) -> None:
        difference = (direction - self.facing) & 3
        if difference == 1:
            self.turn(Side.RIGHT)
        elif difference == 3:
            self.turn(Side.LEFT)
        elif difference == 2:
            self.turn(Side.LEFT)
            self.turn(Side.LEFT)

    def _local_route(self, target: Cell) -> List[Direction]:
        if target == self.position:
            raise InvalidTarget('Target is the current cell: %r' % (target,))
        if manhattan(target, self.position) > SENSING_RADIUS:
            raise OutOfReach(
                'Target %r is farther than %d from %r' %
                (target, SENSING_RADIUS, self.position))
        return route(self.position, target)

    def bring(self, source: Cell) -> None:
        '''Fetch the brick at source and come back'''
        if self.heavy:
            raise HeavyRobot('Robot already carries a brick')
        if source not in self.full:
            raise EmptySource('No brick at %r' % (source,))
        outbound = self._local_route(source)
        for direction in outbound:
            self.step(direction)
        back = [direction.behind() for direction in reversed(outbound)]
        self.pick_step(back[0])
        for direction in back[1:]:
            self.step(direction)

    def place(self, target: Cell) -> None:
        '''Carry the brick to target, drop it there and come back'''
        if not self.heavy:
            raise LightRobot('Robot carries no brick')
        if target in self.full:
            raise OccupiedTarget('Cell is full: %r' % (target,))
        outbound = self._local_route(target)
        for direction in outbound:
            self.step(direction)
        back = [direction.behind() for direction in reversed(outbound)]
        self.drop_step(back[0])
        for direction in back[1:]:
            self.step(direction)

    # sensing

    def observe(self) -> Observation:
        self.sensing_steps += self.sensing_cost
        return Observation(self)

    def direction_away(self) -> Direction:
        '''First of N, E, S, W that strictly increases the distance to the disc'''
        disc = self.disc
        if disc is None:
            raise MissingLedger('No rough disc')
        current = disc.distance_to(self.position)
        if current == 0:
            raise NoAwayDirection(
                'Robot is on the rough disc at %r' % (self.position,))
        for direction in DIRECTIONS:
            if disc.distance_to(neighbor(self.position, direction)) > current:
                return direction
        raise NoAwayDirection(
            'No direction leads away from the disc at %r' % (self.position,))


def observe(world: World) -> Observation:
    return world.observe()


def act_move(world: World, direction: Direction, leave: Status,
             arrive: Weight) -> World:
    world.act_move(direction, leave, arrive)
    return world


def turn(world: World, side: Side) -> World:
    world.turn(side)
    return world


def bring(world: World, source: Cell) -> World:
    world.bring(source)
    return world


def place(world: World, target: Cell) -> World:
    world.place(target)
    return world


def direction_away(world: World) -> Direction:
    return world.direction_away()
