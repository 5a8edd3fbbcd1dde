import io

import pytest

from nestbuilder.engine import World
from nestbuilder.errors import TraceFormatError
from nestbuilder.grid import Cell, Direction
from nestbuilder.trace import MOVE, NOTE, TURN, Trace, TraceEvent, read_trace, trace_digest, write_trace

from . import line


def test_line_format():
    move = TraceEvent(3, MOVE, Cell(1, -2), Direction.WEST, 'e', 'h')
    assert move.to_line(
    ) == '{"i":3,"kind":"move","at":[1,-2],"dir":"W","leave":"e","arrive":"h"}'
    turn = TraceEvent(4, TURN, Cell(0, 0), side='left')
    assert turn.to_line() == '{"i":4,"kind":"turn","at":[0,0],"side":"left"}'
    note = TraceEvent(5, NOTE, Cell(0, 0), tag='marker', payload={'cell': None})
    assert note.to_line(
    ) == '{"i":5,"kind":"note","at":[0,0],"tag":"marker","payload":{"cell":null}}'


def test_from_line():
    event = TraceEvent.from_line(
        '{"i":0,"kind":"move","at":[2,3],"dir":"S","leave":"f","arrive":"l"}')
    assert event == TraceEvent(0, MOVE, Cell(2, 3), Direction.SOUTH, 'f', 'l')

    with pytest.raises(TraceFormatError) as error:
        TraceEvent.from_line('{"i":0,"kind":"jump","at":[0,0]}', 7)
    assert error.value.line == 7
    with pytest.raises(TraceFormatError):
        TraceEvent.from_line('not json', 1)
    with pytest.raises(TraceFormatError):
        TraceEvent.from_line('{"i":0,"kind":"move","at":[0,0]}', 1)


def test_trace_writer_and_digest():
    writer = io.StringIO()
    trace = Trace(writer=writer)
    world = World(line(3), Cell(0, 0), trace=trace)
    world.pick_step(Direction.NORTH)
    world.turn('right')
    world.finish()

    lines = writer.getvalue().splitlines()
    assert len(lines) == trace.count == len(trace.events) == 4
    assert [TraceEvent.from_line(text) for text in lines] == trace.events
    assert trace.hexdigest() == trace_digest(trace.events)


def test_digest_is_deterministic():

    def run():
        world = World(line(4), Cell(1, 0))
        world.walk_to(Cell(3, 0))
        world.pick_step(Direction.NORTH)
        return world.trace.hexdigest()

    assert run() == run()
    other = World(line(4), Cell(0, 0)).trace.hexdigest()
    assert other != run()


def test_inactive_trace_only_counts():
    trace = Trace(keep=False, digest=False)
    assert not trace.active
    world = World(line(2), Cell(0, 0), trace=trace)
    world.step(Direction.EAST)
    assert trace.count == 2
    assert trace.events == []
    assert trace.hexdigest() is None


def test_read_and_write(tmpdir):
    world = World(line(3), Cell(0, 0))
    world.walk_to(Cell(2, 0))
    world.finish()
    path = str(tmpdir / 'run.jsonl')
    write_trace(world.trace.events, path)
    assert read_trace(path) == world.trace.events


def test_read_rejects_bad_index(tmpdir):
    path = str(tmpdir / 'bad.jsonl')
    with open(path, 'w') as f:
        f.write('{"i":0,"kind":"turn","at":[0,0],"side":"left"}\n')
        f.write('\n')
        f.write('{"i":2,"kind":"turn","at":[0,0],"side":"left"}\n')
    with pytest.raises(TraceFormatError) as error:
        read_trace(path)
    assert error.value.line == 3
