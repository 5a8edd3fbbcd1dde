import pickle

import pytest

from nestbuilder.errors import ControllerError, DisconnectedInput, IllegalAction, InstanceError, InstanceSyntaxError, NestError, NotConnected, TraceFormatError, UnknownFixture, full_error_message
from nestbuilder.fixtures import fixture


def test_illegal_action():
    error = IllegalAction('drop on a full cell', 12)
    assert str(error) == 'event 12: drop on a full cell'
    assert error.index == 12
    assert isinstance(error, ControllerError)
    assert str(IllegalAction('no index')) == 'no index'


def test_illegal_action_pickle():
    error = pickle.loads(pickle.dumps(IllegalAction('bad move', 3)))
    assert str(error) == 'event 3: bad move'
    assert error.message == 'bad move'
    assert error.index == 3


def test_instance_syntax_error_pickle():
    error = pickle.loads(pickle.dumps(InstanceSyntaxError('bad symbol', 2, 5)))
    assert str(error) == 'line 2, column 5: bad symbol'
    assert (error.line, error.column) == (2, 5)
    assert isinstance(error, ValueError)


def test_trace_format_error_pickle():
    error = pickle.loads(pickle.dumps(TraceFormatError('not json', 7)))
    assert str(error) == 'line 7: not json'
    assert error.line == 7


def test_unknown_fixture():
    with pytest.raises(UnknownFixture) as error:
        fixture('hexagon')
    # no KeyError style quoting
    assert str(error.value).startswith("Unknown fixture 'hexagon'")
    assert isinstance(error.value, KeyError)
    assert isinstance(error.value, InstanceError)


def test_error_hierarchy():
    assert DisconnectedInput is NotConnected
    assert issubclass(NotConnected, NestError)
    assert not issubclass(ControllerError, ValueError)


def test_full_error_message():
    assert full_error_message(NotConnected('2 components')) == \
        "NotConnected('2 components')"
