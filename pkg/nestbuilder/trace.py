'''Line-delimited JSON traces of robot actions

Every atomic action of the robot is one :class:`TraceEvent`. Serialized
records keep a fixed key order and compact separators, so the SHA-256 of the
lines identifies a run bit for bit.
'''
import hashlib
import json
from logging import getLogger
from typing import IO, Any, Dict, Iterable, List, NamedTuple, Optional

from megfile import smart_open

from nestbuilder.errors import TraceFormatError
from nestbuilder.grid import Cell, Direction

__all__ = [
    'MOVE',
    'TURN',
    'NOTE',
    'TraceEvent',
    'Trace',
    'read_trace',
    'write_trace',
    'trace_digest',
    'cell_payload',
    'payload_cell',
]

_logger = getLogger(__name__)

MOVE = 'move'
TURN = 'turn'
NOTE = 'note'


def cell_payload(cell: Optional[Cell]) -> Optional[List[int]]:
    if cell is None:
        return None
    return [cell[0], cell[1]]


def payload_cell(value: Optional[List[int]]) -> Optional[Cell]:
    if value is None:
        return None
    return Cell(int(value[0]), int(value[1]))


class TraceEvent(NamedTuple):
    index: int
    kind: str
    at: Cell
    direction: Optional[Direction] = None
    leave: Optional[str] = None
    arrive: Optional[str] = None
    side: Optional[str] = None
    tag: Optional[str] = None
    payload: Optional[Dict[str, Any]] = None

    def to_record(self) -> Dict[str, Any]:
        record: Dict[str, Any] = {
            'i': self.index,
            'kind': self.kind,
            'at': cell_payload(self.at),
        }
        if self.kind == MOVE:
            record['dir'] = self.direction.symbol
            record['leave'] = self.leave
            record['arrive'] = self.arrive
        elif self.kind == TURN:
            record['side'] = self.side
        else:
            record['tag'] = self.tag
            record['payload'] = self.payload if self.payload is not None else {}
        return record

    def to_line(self) -> str:
        return json.dumps(
            self.to_record(), separators=(',', ':'), ensure_ascii=True)

    @classmethod
    def from_record(cls, record: Dict[str, Any]) -> 'TraceEvent':
        kind = record['kind']
        at = payload_cell(record['at'])
        if kind == MOVE:
            return cls(
                record['i'],
                kind,
                at,
                direction=Direction.from_symbol(record['dir']),
                leave=record['leave'],
                arrive=record['arrive'])
        if kind == TURN:
            return cls(record['i'], kind, at, side=record['side'])
        if kind == NOTE:
            return cls(
                record['i'],
                kind,
                at,
                tag=record['tag'],
                payload=record.get('payload') or {})
        raise ValueError('Unknown event kind: %r' % kind)

    @classmethod
    def from_line(cls, line: str, lineno: int = 0) -> 'TraceEvent':
        try:
            return cls.from_record(json.loads(line))
        except (ValueError, KeyError, TypeError, IndexError) as error:
            raise TraceFormatError(str(error), lineno) from error


class Trace:
    '''Append-only event recorder

    :param keep: keep the events in memory (needed by replay and tests)
    :param writer: text stream receiving one JSON line per event
    :param digest: maintain the running SHA-256 of the serialized lines
    '''

    def __init__(
            self,
            keep: bool = True,
            writer: Optional[IO[str]] = None,
            digest: bool = True):
        self.keep = keep
        self.writer = writer
        self.events: List[TraceEvent] = []
        self.count = 0
        self._hash = hashlib.sha256() if digest else None

    @property
    def active(self) -> bool:
        '''Whether appended events are looked at at all'''
        return self.keep or self.writer is not None or self._hash is not None

    def append(self, event: TraceEvent) -> None:
        self.count += 1
        if self.keep:
            self.events.append(event)
        if self.writer is None and self._hash is None:
            return
        line = event.to_line()
        if self._hash is not None:
            self._hash.update(line.encode('ascii'))
            self._hash.update(b'\n')
        if self.writer is not None:
            self.writer.write(line)
            self.writer.write('\n')

    def skip(self) -> None:
        '''Count an event without building it'''
        self.count += 1

    def hexdigest(self) -> Optional[str]:
        if self._hash is None:
            return None
        return self._hash.hexdigest()

    def flush(self) -> None:
        if self.writer is not None:
            self.writer.flush()


def trace_digest(events: Iterable[TraceEvent]) -> str:
    digest = hashlib.sha256()
    for event in events:
        digest.update(event.to_line().encode('ascii'))
        digest.update(b'\n')
    return digest.hexdigest()


def read_trace(path: str) -> List[TraceEvent]:
    events = []
    with smart_open(path, 'r') as reader:
        for lineno, line in enumerate(reader, start=1):
            line = line.strip()
            if not line:
                continue
            event = TraceEvent.from_line(line, lineno)
            if event.index != len(events):
                raise TraceFormatError(
                    'expected event index %d, got %d' %
                    (len(events), event.index), lineno)
            events.append(event)
    _logger.debug('read %d events from %s' % (len(events), path))
    return events


def write_trace(events: Iterable[TraceEvent], path: str) -> None:
    with smart_open(path, 'w') as writer:
        for event in events:
            writer.write(event.to_line())
            writer.write('\n')
