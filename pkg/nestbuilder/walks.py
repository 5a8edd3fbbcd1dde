'''Search walks, switches and shifting

A search walk alternates straight segments, turning at the first special cell
whose free side is full. While walking, bricks that would mislead the way
back (a full cell on the non-free side of an internal cell) are switched to
the free side. The way back is walked the same way, with the marker in place
of the terminal check, and its switches put the bricks back.
'''
from enum import Enum
from logging import getLogger
from typing import List, NamedTuple, Optional, Tuple

from nestbuilder.engine import Side, World
from nestbuilder.errors import LeafShifting, MarkerNotFound, NotABreakPoint, WalkEscaped
from nestbuilder.grid import DIRECTIONS, Cell, Direction, manhattan, neighbor
from nestbuilder.trace import cell_payload

__all__ = [
    'MARKER_RANGE',
    'FreeSide',
    'WalkOrientation',
    'StopRule',
    'Segment',
    'BreakPoint',
    'WalkMemory',
    'SearchWalk',
    'ShiftRecord',
    'traverse_segment',
    'do_switch',
    'switch_traversal',
    'shifting',
    'c_prime_full',
    'reversal',
    'return_switch_traversal',
]

_logger = getLogger(__name__)

MARKER_RANGE = 4


class FreeSide(str, Enum):
    LEFT = 'left'
    RIGHT = 'right'
    BOTH = 'both'

    def flipped(self) -> 'FreeSide':
        if self == FreeSide.LEFT:
            return FreeSide.RIGHT
        if self == FreeSide.RIGHT:
            return FreeSide.LEFT
        return self


class WalkOrientation(str, Enum):
    LEFT = 'left-oriented'
    RIGHT = 'right-oriented'
    TRIVIAL = 'trivial'


class StopRule(str, Enum):
    # front and free side empty
    TERMINAL = 'terminal'
    # within MARKER_RANGE of the marker
    MARKER = 'marker'


class Segment(NamedTuple):
    cells: Tuple[Cell, ...]
    side: FreeSide
    terminal: bool
    direction: Direction

    @property
    def first(self) -> Cell:
        return self.cells[0]

    @property
    def last(self) -> Cell:
        return self.cells[-1]

    @property
    def length(self) -> int:
        return len(self.cells)


class BreakPoint(NamedTuple):
    '''A switch: the brick at source was moved to target while at cell'''
    cell: Cell
    source: Cell
    target: Cell


class WalkMemory(NamedTuple):
    '''What the robot keeps about the segments just walked

    Lengths are only told apart as two cells or more, and the segment count
    stops at three.
    '''
    last_side: FreeSide
    last_short: bool
    previous_short: bool
    segments: int

    def after(self, segment: Segment) -> 'WalkMemory':
        return WalkMemory(
            segment.side, segment.length == 2, self.last_short,
            min(3, self.segments + 1))


NO_MEMORY = WalkMemory(FreeSide.BOTH, False, False, 0)


class SearchWalk(NamedTuple):
    segments: Tuple[Segment, ...]
    orientation: WalkOrientation
    break_points: Tuple[BreakPoint, ...]
    memory: WalkMemory = NO_MEMORY

    @property
    def is_trivial(self) -> bool:
        return len(self.segments) == 1 and self.segments[0].length == 1

    @property
    def last_cell(self) -> Cell:
        return self.segments[-1].last

    def cells(self) -> List[Cell]:
        '''Walk cells in order, junctions listed once'''
        result: List[Cell] = []
        for segment in self.segments:
            for cell in segment.cells:
                if not result or result[-1] != cell:
                    result.append(cell)
        return result


class ShiftRecord(NamedTuple):
    emptied: Tuple[Cell, ...]
    filled: Tuple[Cell, ...]
    end_cell: Cell
    carried: bool
    # direction from a walk cell to the cell filled next to it
    side: Direction


def _side_directions(facing: Direction,
                     free_side: FreeSide) -> Tuple[Direction, Direction]:
    '''(free, non-free) absolute directions of a one-sided segment'''
    if free_side == FreeSide.LEFT:
        return facing.left(), facing.right()
    return facing.right(), facing.left()


def _turn_for(side: FreeSide) -> Side:
    return Side.LEFT if side == FreeSide.LEFT else Side.RIGHT


def do_switch(world: World, free_side: FreeSide,
              restore: bool = False) -> BreakPoint:
    '''Move the brick from the non-free side to the free side of the robot

    :param restore: the switch is made on the way back; the cell behind may
        then have been emptied by shifting or by picking the last brick
    '''
    if free_side == FreeSide.BOTH:
        raise NotABreakPoint('The first segment has no break points')
    position, facing = world.position, world.facing
    behind_full = restore or world.is_full(neighbor(position, facing.behind()))
    if not world.is_full(neighbor(position, facing)) or not behind_full:
        raise NotABreakPoint('%r is not an internal cell' % (position,))
    free_direction, other_direction = _side_directions(facing, free_side)
    source = neighbor(position, other_direction)
    target = neighbor(position, free_direction)
    if not world.is_full(source) or world.is_full(target):
        raise NotABreakPoint(
            'No brick to switch at %r facing %s' % (position, facing.name))
    if world.heavy:
        world.place(target)
        world.bring(source)
    else:
        world.bring(source)
        world.place(target)
    point = BreakPoint(position, source, target)
    world.note(
        'unbreak' if restore else 'break', {
            'cell': cell_payload(position),
            'from': cell_payload(source),
            'to': cell_payload(target),
        })
    return point


def _arrive(
        world: World,
        free_side: FreeSide,
        stop_rule: StopRule,
        marker: Optional[Cell],
        break_points: Optional[List[BreakPoint]],
        restore: bool = False) -> Optional[bool]:
    '''Checks made on a cell the robot just reached

    True stops the walk, False ends the segment with a turn and None lets the
    robot go on. The cell behind counts as full.
    '''
    facing = world.facing
    view = world.observe()
    front = view.neighbor_full(facing)
    left = view.neighbor_full(facing.left())
    right = view.neighbor_full(facing.right())
    if free_side == FreeSide.BOTH:
        free_full, other_full = left or right, False
        free_empty = not left and not right
    elif free_side == FreeSide.LEFT:
        free_full, other_full = left, right
        free_empty = not left
    else:
        free_full, other_full = right, left
        free_empty = not right
    if stop_rule == StopRule.TERMINAL:
        stop = not front and free_empty
    else:
        stop = (
            marker is not None and view.marker_in_window and
            manhattan(world.position, marker) <= MARKER_RANGE)
    if stop:
        return True
    behind = neighbor(world.position, facing.behind())
    if free_full and view.is_special(assume_full=(behind,)):
        return False
    if other_full and break_points is not None:
        break_points.append(do_switch(world, free_side, restore))
    return None


def traverse_segment(
        world: World,
        free_side: FreeSide,
        stop_rule: StopRule = StopRule.TERMINAL,
        marker: Optional[Cell] = None,
        break_points: Optional[List[BreakPoint]] = None,
        restore: bool = False) -> Segment:
    '''Go straight until the segment ends

    The terminal check (or the marker check) runs before the turn check on
    every arrival. When break_points is a list, the robot switches at every
    break point and appends the records to it.
    '''
    facing = world.facing
    cells = [world.position]
    while True:
        ahead = neighbor(world.position, facing)
        if not world.is_full(ahead):
            raise WalkEscaped(
                'Empty cell %r ahead of %r' % (ahead, world.position))
        world.step(facing)
        cells.append(world.position)
        outcome = _arrive(
            world, free_side, stop_rule, marker, break_points, restore)
        if outcome is not None:
            return Segment(tuple(cells), free_side, outcome, facing)


def _turn_after(world: World, side: FreeSide) -> FreeSide:
    '''Turn at the end of a segment, returning the side of the next one'''
    if side == FreeSide.BOTH:
        left = world.is_full(neighbor(world.position, world.facing.left()))
        side = FreeSide.LEFT if left else FreeSide.RIGHT
    world.turn(_turn_for(side))
    return side.flipped()


def _note_segment(world: World, index: int, segment: Segment) -> None:
    world.note(
        'segment', {
            'index': index,
            'side': segment.side.value,
            'terminal': segment.terminal,
            'first': cell_payload(segment.first),
            'last': cell_payload(segment.last),
            'length': segment.length,
        })


def switch_traversal(world: World) -> SearchWalk:
    '''Build and walk the search walk from the robot's cell and facing

    Ends with the robot on the last cell of the walk.
    '''
    start = world.position
    if not any(world.is_full(neighbor(start, d)) for d in DIRECTIONS):
        segment = Segment((start,), FreeSide.BOTH, True, world.facing)
        _note_segment(world, 0, segment)
        return SearchWalk(
            (segment,), WalkOrientation.TRIVIAL, (), NO_MEMORY.after(segment))

    break_points: List[BreakPoint] = []
    first = traverse_segment(world, FreeSide.BOTH, break_points=break_points)
    segments = [first]
    memory = NO_MEMORY.after(first)
    _note_segment(world, 0, first)
    if first.terminal:
        return SearchWalk(
            tuple(segments), WalkOrientation.TRIVIAL, tuple(break_points),
            memory)

    side = _turn_after(world, FreeSide.BOTH)
    if side == FreeSide.RIGHT:
        orientation = WalkOrientation.LEFT
    else:
        orientation = WalkOrientation.RIGHT
    while True:
        segment = traverse_segment(world, side, break_points=break_points)
        _note_segment(world, len(segments), segment)
        segments.append(segment)
        memory = memory.after(segment)
        if segment.terminal:
            break
        side = _turn_after(world, side)
    _logger.debug(
        'search walk from %r: %d segments, %d break points, %s' %
        (start, len(segments), len(break_points), orientation.value))
    return SearchWalk(
        tuple(segments), orientation, tuple(break_points), memory)


def shifting(world: World, walk: SearchWalk) -> ShiftRecord:
    '''Relay bricks backwards along the last segment until a special cell

    A cell is tested as if the brick just picked behind the robot were
    still there. The robot ends on that special cell carrying a brick.
    '''
    position, facing = world.position, world.facing
    if position != walk.last_cell:
        raise LeafShifting('Robot is not at the end of the walk')
    sides = [
        direction for direction in (facing.left(), facing.right())
        if world.is_full(neighbor(position, direction))
    ]
    if not sides:
        raise LeafShifting('Robot is at a leaf %r, pick instead' % (position,))
    side = sides[0]
    back = facing.behind()
    first = walk.segments[-1].first
    world.face(back)
    emptied, filled = [], []
    while True:
        vacated = world.position
        world.pick_step(back)
        emptied.append(vacated)
        if world.observe().is_special(
                assume_full=(vacated,)) or world.position == first:
            break
        target = neighbor(world.position, side)
        world.place(target)
        filled.append(target)
    record = ShiftRecord(
        tuple(emptied), tuple(filled), world.position, world.heavy, side)
    world.note(
        'shift', {
            'emptied': len(emptied),
            'filled': [cell_payload(cell) for cell in filled],
            'end': cell_payload(record.end_cell),
        })
    return record


def c_prime_full(world: World, record: ShiftRecord) -> bool:
    '''Whether the neighbour of the shifting end cell on the filled side is
    full; it is exactly when shifting ran back to the first cell of the last
    segment'''
    return world.is_full(neighbor(record.end_cell, record.side))


def reversal(walk: SearchWalk) -> SearchWalk:
    '''The walk backwards

    A segment keeps its side: walking it backwards after its switches, the
    robot looks for its turn on the same side as on the way out.
    '''
    segments = tuple(
        Segment(
            tuple(reversed(segment.cells)), segment.side, segment.terminal,
            segment.direction.behind())
        for segment in reversed(walk.segments))
    if len(segments) == 1:
        orientation = WalkOrientation.TRIVIAL
    elif segments[0].side == FreeSide.LEFT:
        orientation = WalkOrientation.LEFT
    else:
        orientation = WalkOrientation.RIGHT
    return SearchWalk(segments, orientation, walk.break_points, walk.memory)


def return_switch_traversal(
        world: World,
        rwalk: SearchWalk,
        marker: Cell,
        side: Optional[FreeSide] = None,
        arrived: bool = True) -> World:
    '''Walk back along a reversed walk until the marker is within
    MARKER_RANGE, switching bricks back on the way

    The robot stands on rwalk facing along it. Only the side of the first
    segment is read from rwalk, or side when given; everything else comes
    from what the robot sees. With arrived, the current cell gets the checks
    of a cell just stepped on.
    '''
    if side is None:
        side = rwalk.segments[0].side
    restored: List[BreakPoint] = []
    segments = 0
    try:
        outcome = None
        if arrived:
            outcome = _arrive(
                world, side, StopRule.MARKER, marker, restored, restore=True)
            if outcome is False:
                side = _turn_after(world, side)
        while outcome is not True:
            segment = traverse_segment(
                world, side, StopRule.MARKER, marker, restored, restore=True)
            segments += 1
            if segment.terminal:
                break
            side = _turn_after(world, side)
    except WalkEscaped as error:
        raise MarkerNotFound(
            'Marker %r not in range when the walk ended: %s' % (marker, error))
    _logger.debug(
        'returned over %d segments to %r, %d switches back' %
        (segments, world.position, len(restored)))
    return world
