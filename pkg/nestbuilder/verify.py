'''Independent replay of traces

The replayer keeps its own field, position and load, and its own table of
legal moves, so a bug in the engine cannot hide behind itself.
'''
from logging import getLogger
from typing import List, NamedTuple, Optional, Set, Tuple

from nestbuilder.errors import TraceFormatError
from nestbuilder.engine import RobotPose, Weight, WorldState
from nestbuilder.grid import Cell, Direction, DiscLayout, is_nest
from nestbuilder.instances import InstanceSpec, load_instance
from nestbuilder.trace import MOVE, NOTE, TURN, TraceEvent, payload_cell, read_trace, trace_digest

__all__ = [
    'ALLOWED',
    'Violation',
    'VerifyReport',
    'ReplayState',
    'verify_events',
    'verify_files',
]

_logger = getLogger(__name__)

# (cell status, load) -> {(left status, load on arrival)}
ALLOWED = {
    ('e', 'l'): {('e', 'l')},
    ('e', 'h'): {('e', 'h'), ('f', 'l')},
    ('f', 'l'): {('f', 'l'), ('e', 'h')},
    ('f', 'h'): {('f', 'h')},
}


class Violation(NamedTuple):
    index: int
    message: str


class VerifyReport(NamedTuple):
    events: int
    steps: int
    bricks: int
    nest_ok: bool
    truncated: bool
    digest: str
    violations: Tuple[Violation, ...]

    @property
    def clean(self) -> bool:
        return not self.violations


class ReplayState:
    '''Field, robot and ledgers rebuilt from a trace's own events'''

    def __init__(self, start_event: TraceEvent):
        if start_event.kind != NOTE or start_event.tag != 'start':
            raise TraceFormatError('trace must begin with a start note', 1)
        payload = start_event.payload
        self.full: Set[Cell] = set(
            payload_cell(cell) for cell in payload['field'])
        self.position: Cell = payload_cell(payload['start'])
        self.facing = Direction.from_symbol(payload.get('facing', 'N'))
        self.load = 'l'
        self.marker: Optional[Cell] = None
        self.disc: Optional[DiscLayout] = None
        self.steps = 0
        self.bricks = len(self.full)
        self.ended: Optional[dict] = None

    @property
    def heavy(self) -> bool:
        return self.load == 'h'

    def apply(self, event: TraceEvent) -> List[str]:
        '''Replay one event, returning what is wrong with it'''
        problems = []
        if event.at != self.position:
            problems.append(
                'event at %r, robot at %r' % (event.at, self.position))
        if event.kind == MOVE:
            status = 'f' if self.position in self.full else 'e'
            allowed = ALLOWED[(status, self.load)]
            if (event.leave, event.arrive) not in allowed:
                problems.append(
                    'illegal move: %s robot on %s cell leaves %s, arrives %s' %
                    (self.load, status, event.leave, event.arrive))
            if event.leave == 'f':
                self.full.add(self.position)
            else:
                self.full.discard(self.position)
            self.load = event.arrive
            self.position = Cell(
                self.position[0] + event.direction.dx,
                self.position[1] + event.direction.dy)
            self.steps += 1
            bricks = len(self.full) + (1 if self.heavy else 0)
            if bricks != self.bricks:
                problems.append(
                    'brick count %d, expected %d' % (bricks, self.bricks))
                self.bricks = bricks
        elif event.kind == TURN:
            if event.side == 'left':
                self.facing = self.facing.left()
            elif event.side == 'right':
                self.facing = self.facing.right()
            else:
                problems.append('unknown turn side %r' % event.side)
        elif event.kind == NOTE:
            self._apply_note(event)
        else:
            problems.append('unknown event kind %r' % event.kind)
        return problems

    def _apply_note(self, event: TraceEvent) -> None:
        payload = event.payload
        if event.tag == 'marker':
            self.marker = payload_cell(payload.get('cell'))
        elif event.tag == 'disc':
            center = payload_cell(payload.get('center'))
            self.disc = None if center is None else DiscLayout(
                center, payload['size'])
        elif event.tag == 'grow' and self.disc is not None:
            self.disc = DiscLayout(self.disc.center, payload['size'])
        elif event.tag == 'end':
            self.ended = payload

    def end_problems(self) -> List[str]:
        '''Differences between the replayed state and the end note'''
        end = self.ended
        problems = []
        if end.get('steps') != self.steps:
            problems.append(
                'end note says %r steps, replay counted %d' %
                (end.get('steps'), self.steps))
        if end.get('bricks') != len(self.full):
            problems.append(
                'end note says %r bricks, replay has %d' %
                (end.get('bricks'), len(self.full)))
        if payload_cell(end.get('position')) != self.position:
            problems.append(
                'end note says robot at %r, replay has %r' %
                (end.get('position'), self.position))
        if end.get('weight') != self.load:
            problems.append(
                'end note says load %r, replay has %r' %
                (end.get('weight'), self.load))
        if 'facing' in end and end['facing'] != self.facing.symbol:
            problems.append(
                'end note says facing %r, replay has %r' %
                (end['facing'], self.facing.symbol))
        return problems

    def state(self) -> WorldState:
        pose = RobotPose(self.position, self.facing, Weight(self.load))
        return WorldState(frozenset(self.full), pose, self.marker, self.disc)

    def nest_ok(self) -> bool:
        if not is_nest(self.full):
            return False
        return self.disc is None or self.full == set(self.disc.cells)


def verify_events(spec: InstanceSpec,
                  events: List[TraceEvent]) -> VerifyReport:
    if not events:
        raise TraceFormatError('empty trace', 0)
    state = ReplayState(events[0])
    violations = []
    if state.full != set(spec.field.full) or state.position != spec.start:
        violations.append(
            Violation(0, 'start note does not match the instance'))
    for event in events[1:]:
        if state.ended is not None:
            violations.append(
                Violation(event.index, 'event after the end note'))
            break
        for message in state.apply(event):
            violations.append(Violation(event.index, message))

    truncated = state.ended is None
    if truncated:
        violations.append(
            Violation(
                len(events),
                'trace ends after %d events without an end note' %
                len(events)))
    else:
        for message in state.end_problems():
            violations.append(Violation(len(events) - 1, message))
    for violation in violations[:10]:
        _logger.warning('event %d: %s' % violation)
    return VerifyReport(
        len(events), state.steps, state.bricks, state.nest_ok(), truncated,
        trace_digest(events), tuple(violations))


def verify_files(instance_path: str, trace_path: str) -> VerifyReport:
    return verify_events(load_instance(instance_path), read_trace(trace_path))
