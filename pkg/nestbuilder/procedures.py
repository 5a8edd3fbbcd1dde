'''Nest construction

:func:`build_nest` grows a rough disc one brick at a time. Each round finds
a free brick with a search walk, brings it back to the marker, adds it to
the disc and sweeps the border so that free bricks keep their distance.
'''
import math
from logging import getLogger
from typing import List, NamedTuple, Optional, Tuple

from nestbuilder.engine import Observation, Side, World, route
from nestbuilder.errors import HeavyRobot, LightRobot, MissingLedger, NoFreeComponent, NoMarkerSite, NotConnected
from nestbuilder.grid import Cell, Direction, DiscLayout, disc_cells, is_connected, is_nest, manhattan, nearest, neighbor, order_key, span
from nestbuilder.monitors import LOST_DISTANCE, MARKER_DISC_DISTANCE, MARKER_FREE_DISTANCE, REQUIRED_GAP, InvariantReport, Monitor, monitors_enabled
from nestbuilder.trace import cell_payload
from nestbuilder.walks import FreeSide, SearchWalk, ShiftRecord, WalkMemory, c_prime_full, return_switch_traversal, reversal, shifting, switch_traversal

__all__ = [
    'SEED_DISTANCE',
    'SweepReport',
    'SiteChoice',
    'FindResult',
    'NestResult',
    'border_tour',
    'marker_site',
    'sweep',
    'find_next_brick',
    'return_to_marker',
    'extend_rough_disc',
    'build_nest',
]

_logger = getLogger(__name__)

# distance from the start cell to the first disc cell
SEED_DISTANCE = 2
# free bricks closer than this to the disc are carried away
CLEAR_DISTANCE = REQUIRED_GAP + 1
# reach of the robot from a border stop
STOP_REACH = 7


class SweepReport(NamedTuple):
    moved: int
    walk_lengths: Tuple[int, ...]
    marker_moved: bool
    marker: Optional[Cell]
    # where each carried brick was picked
    sources: Tuple[Cell, ...] = ()


class FindResult(NamedTuple):
    walk: SearchWalk
    shift: Optional[ShiftRecord]
    picked_leaf: bool
    start: Cell


class NestResult(NamedTuple):
    z: int
    s: int
    steps: int
    sensing_steps: int
    iterations: int
    center: Optional[Cell]
    reports: Tuple[InvariantReport, ...]
    violations: Tuple[str, ...]
    sweep_walks: Tuple[Tuple[int, ...], ...]
    nest_ok: bool


def _require_disc(world: World) -> DiscLayout:
    if world.disc is None:
        raise MissingLedger('No rough disc')
    return world.disc


def _angle(center: Cell, cell: Cell) -> float:
    angle = math.atan2(cell[1] - center[1], cell[0] - center[0])
    if angle < 0:
        angle += 2 * math.pi
    return angle


def border_tour(disc: DiscLayout, position: Cell) -> List[Cell]:
    '''Border cells counterclockwise around the center, starting at the one
    nearest to position'''
    center = disc.center
    cells = sorted(
        disc.border(),
        key=lambda cell:
        (_angle(center, cell), manhattan(center, cell), order_key(cell)))
    start = cells.index(nearest(cells, position))
    return cells[start:] + cells[:start]


def _carry_away(world: World, cell: Cell, stop: Cell) -> int:
    '''Move the brick at cell outwards to the first empty cell at distance
    at least CLEAR_DISTANCE from the disc, then come back to stop'''
    disc = world.disc
    world.walk_to(cell)
    direction = world.direction_away()
    world.pick_step(direction)
    length = 1
    while world.is_full(world.position) or disc.within(world.position,
                                                       CLEAR_DISTANCE - 1):
        world.step(direction)
        length += 1
    drop = world.position
    world.drop_step(route(drop, stop)[0])
    world.walk_to(stop)
    world.note(
        'sweep-walk', {
            'from': cell_payload(cell),
            'to': cell_payload(drop),
            'length': length,
        })
    return length


def _close_bricks(world: World, view: Observation, stop: Cell) -> List[Cell]:
    '''Free bricks in view within STOP_REACH of stop and too close to the
    disc'''
    disc, marker = world.disc, world.marker
    return [
        cell for cell in view.full_cells()
        if cell != marker and cell not in disc and
        manhattan(cell, stop) <= STOP_REACH and
        disc.within(cell, CLEAR_DISTANCE - 1)
    ]


def _smaller(current: Optional[Cell], cell: Cell) -> Cell:
    if current is None or order_key(cell) < order_key(current):
        return cell
    return current


class SiteChoice:
    '''≺-minimal marker sites seen so far on a lap around the disc

    From a border stop the robot sees every cell at distance 3 from the disc
    within 3 of the stop, together with all bricks within 4 of it. A site is
    exact when its nearest free brick is at distance 4, relaxed when that
    brick is at most 4 away. Only free bricks within LOST_DISTANCE of the
    disc count.
    '''

    def __init__(self):
        self.exact: Optional[Cell] = None
        self.relaxed: Optional[Cell] = None

    def update(self, world: World, view: Observation, stop: Cell) -> None:
        disc, marker = world.disc, world.marker
        free = [
            cell for cell in view.full_cells()
            if cell != marker and cell not in disc and
            disc.within(cell, LOST_DISTANCE)
        ]
        if not free:
            return
        for cell in disc_cells(stop, MARKER_DISC_DISTANCE):
            if view.is_full_cell(cell) and cell != marker:
                continue
            if disc.distance_to(cell) != MARKER_DISC_DISTANCE:
                continue
            closest = min(manhattan(cell, other) for other in free)
            if closest > MARKER_FREE_DISTANCE:
                continue
            if closest == MARKER_FREE_DISTANCE:
                self.exact = _smaller(self.exact, cell)
            self.relaxed = _smaller(self.relaxed, cell)

    def site(self, disc: DiscLayout) -> Cell:
        if self.exact is not None:
            return self.exact
        if self.relaxed is None:
            raise NoMarkerSite(
                'No cell at distance %d from %r within %d of a free brick' %
                (MARKER_DISC_DISTANCE, disc, MARKER_FREE_DISTANCE))
        _logger.warning(
            'no exact marker site around %r, relaxing to %r' %
            (disc, self.relaxed))
        return self.relaxed


def marker_site(world: World) -> Cell:
    '''Lap the disc border and return the ≺-minimal marker site in view

    The robot ends on the border cell it started the lap from.
    '''
    disc = _require_disc(world)
    choice = SiteChoice()
    tour = border_tour(disc, world.position)
    for stop in tour:
        world.walk_to(stop)
        choice.update(world, world.observe(), stop)
    world.walk_to(tour[0])
    return choice.site(disc)


def _move_marker(world: World, site: Cell) -> None:
    marker = world.marker
    world.walk_to(marker)
    world.pick_step(route(marker, site)[0])
    world.walk_to(site)
    world.drop_step(Direction.NORTH)
    world.step(Direction.SOUTH)
    world.set_marker(site)
    _logger.debug('marker moved from %r to %r' % (marker, site))


def sweep(world: World) -> SweepReport:
    '''Clear a gap around the disc and put the marker back in place

    The robot tours the border counterclockwise. At every stop it looks
    around and carries free bricks within STOP_REACH and closer than
    CLEAR_DISTANCE to the disc straight outwards, then notes the best marker
    site in view. Ends at the marker.
    '''
    disc = _require_disc(world)
    if world.heavy:
        raise HeavyRobot('Sweep needs an empty-handed robot')
    tour = border_tour(disc, world.position)
    lengths, sources = [], []
    choice = SiteChoice()
    for stop in tour:
        world.walk_to(stop)
        while True:
            view = world.observe()
            close = _close_bricks(world, view, stop)
            if not close:
                break
            cell = min(close, key=order_key)
            sources.append(cell)
            lengths.append(_carry_away(world, cell, stop))
        choice.update(world, view, stop)
    world.walk_to(tour[0])

    marker_moved = False
    if world.has_free_cells():
        site = choice.site(disc)
        if site != world.marker:
            _move_marker(world, site)
            marker_moved = True
    if world.marker is not None:
        world.walk_to(world.marker)
    _logger.debug(
        'sweep of %r moved %d bricks' % (disc, len(lengths)))
    return SweepReport(
        len(lengths), tuple(lengths), marker_moved, world.marker,
        tuple(sources))


def _full_neighbors(world: World, cell: Cell) -> List[Direction]:
    '''Directions of the full neighbours, ≺-smallest neighbour first'''
    directions = [
        direction for direction in Direction
        if world.is_full(neighbor(cell, direction))
    ]
    return sorted(
        directions, key=lambda direction: order_key(neighbor(cell, direction)))


def find_next_brick(world: World) -> FindResult:
    '''Walk to the nearest free brick in view and come out carrying a free
    brick, facing back along the walk'''
    if world.heavy:
        raise HeavyRobot('Robot already carries a brick')
    marker = world.marker
    if marker is None:
        raise MissingLedger('No marker')
    disc = _require_disc(world)
    free = [
        cell for cell in world.observe().full_cells()
        if cell != marker and cell not in disc
    ]
    if not free:
        raise NoFreeComponent(
            'No free brick in view of %r' % (world.position,))
    start = nearest(free, world.position)
    world.walk_to(start)
    directions = _full_neighbors(world, start)
    if directions:
        world.face(directions[0])
    walk = switch_traversal(world)

    shift = None
    picked_leaf = False
    if walk.is_trivial:
        world.pick_step(route(start, marker)[0])
    else:
        end = world.position
        if len(_full_neighbors(world, end)) == 1:
            world.face(world.facing.behind())
            world.pick_step(world.facing)
            picked_leaf = True
        else:
            shift = shifting(world, walk)
    _logger.debug(
        'found a brick from %r after %d walk cells' % (start, len(walk.cells())))
    return FindResult(walk, shift, picked_leaf, start)


def _skip_fake_switch(world: World, shift: ShiftRecord,
                      memory: WalkMemory) -> Tuple[FreeSide, bool]:
    '''Shifting emptied the whole last segment: turn onto the segment before
    it and step past its second cell, which looks like a break point

    Returns the side to look at next and whether the current cell still
    needs its checks.
    '''
    first = Side.LEFT if world.facing.left() == shift.side else Side.RIGHT
    world.turn(first)
    moves = 1 if memory.previous_short else 2
    for _ in range(moves):
        world.step(world.facing)
    world.note('skip', {'cells': moves})
    if memory.previous_short and memory.segments > 2:
        world.turn(Side.RIGHT if first == Side.LEFT else Side.LEFT)
        return memory.last_side, False
    return memory.last_side.flipped(), True


def return_to_marker(world: World, found: FindResult) -> World:
    '''Walk the search walk back, reconnecting what its switches cut off,
    and go to the marker'''
    if not world.heavy:
        raise LightRobot('Robot carries no brick')
    marker = world.marker
    if marker is None:
        raise MissingLedger('No marker')
    walk = found.walk
    if walk.is_trivial:
        world.walk_to(marker)
        return world

    memory = walk.memory
    side, arrived = None, True
    if found.shift is not None and memory.segments > 1 and c_prime_full(
            world, found.shift):
        side, arrived = _skip_fake_switch(world, found.shift, memory)
    return_switch_traversal(world, reversal(walk), marker, side, arrived)
    world.walk_to(marker)
    return world


def extend_rough_disc(world: World) -> SweepReport:
    '''Drop the carried brick on the next disc cell, then sweep'''
    if not world.heavy:
        raise LightRobot('Robot carries no brick')
    disc = _require_disc(world)
    marker = world.marker
    if marker is None:
        raise MissingLedger('No marker')
    cell = disc.next_cell()
    world.walk_to(cell)
    world.drop_step(route(cell, marker)[0])
    world.grow_disc()
    world.walk_to(marker)
    return sweep(world)


def _finish_disc(world: World) -> None:
    '''Use the marker brick as the last disc cell'''
    marker = world.marker
    cell = world.disc.next_cell()
    world.walk_to(marker)
    world.pick_step(route(marker, cell)[0])
    world.walk_to(cell)
    world.drop_step(Direction.NORTH)
    world.grow_disc()
    world.set_marker(None)


def build_nest(world: World, monitors: Optional[bool] = None) -> NestResult:
    '''Rearrange the field into a nest

    :param world: a fresh world, robot empty-handed on a full cell
    :param monitors: evaluate the invariant checkpoints, defaults to the
        NESTBUILDER_MONITORS environment variable
    '''
    if not is_connected(world.full):
        raise NotConnected('Field of %d cells is not connected' %
                           len(world.full))
    if world.heavy:
        raise HeavyRobot('Robot must start empty-handed')
    z = len(world.full)
    s = span(world.full)
    monitor = Monitor(world, monitors_enabled(monitors))
    sweep_walks = []

    if s <= SEED_DISTANCE:
        world.note('phase', {'name': 'done', 'reason': 'span'})
        world.finish()
        return NestResult(
            z, s, world.steps, world.sensing_steps, 0, None, (), (), (), True)

    world.note('phase', {'name': 'seed'})
    start = world.position
    world.set_marker(start)
    seed = min(
        (
            cell for cell in world.full
            if manhattan(cell, start) == SEED_DISTANCE),
        key=order_key)
    world.set_disc(DiscLayout(seed, 1))
    sweep_walks.append(sweep(world).walk_lengths)

    iterations = 0
    while world.has_free_cells():
        world.note('phase', {'name': 'round', 'index': iterations})
        monitor.loop_head()
        found = find_next_brick(world)
        monitor.after_find(found)
        return_to_marker(world, found)
        monitor.after_return()
        report = extend_rough_disc(world)
        monitor.after_sweep(report)
        sweep_walks.append(report.walk_lengths)
        iterations += 1

    world.note('phase', {'name': 'finish'})
    _finish_disc(world)
    world.finish()

    disc = world.disc
    nest_ok = is_nest(world.full) and set(world.full) == set(disc.cells)
    if not nest_ok:
        _logger.warning('field of %d cells is not a nest' % len(world.full))
    _logger.debug(
        'nest of %d cells after %d rounds and %d steps' %
        (z, iterations, world.steps))
    return NestResult(
        z, s, world.steps, world.sensing_steps, iterations, disc.center,
        tuple(monitor.reports), tuple(monitor.violations), tuple(sweep_walks),
        nest_ok)
