from logging import getLogger
from typing import Optional

__all__ = [
    'NestError',
    'GridError',
    'EmptyCellError',
    'EmptySetError',
    'NegativeValueError',
    'ControllerError',
    'IllegalAction',
    'HeavyRobot',
    'LightRobot',
    'EmptySource',
    'OccupiedTarget',
    'InvalidTarget',
    'OutOfReach',
    'NoAwayDirection',
    'WalkEscaped',
    'NotABreakPoint',
    'LeafShifting',
    'MarkerNotFound',
    'NoMarkerSite',
    'NoFreeComponent',
    'MissingLedger',
    'InstanceError',
    'InstanceSyntaxError',
    'NotConnected',
    'DisconnectedInput',
    'StartNotFull',
    'UnknownFixture',
    'InfeasibleParameters',
    'TraceError',
    'TraceFormatError',
    'full_error_message',
]

_logger = getLogger(__name__)


def full_error_message(error: Exception) -> str:
    return '%s(%r)' % (type(error).__name__, str(error))


class NestError(Exception):
    '''
    Base type for all nestbuilder errors, should NOT be constructed directly.
    When you try to do so, consider adding a new type of error.
    '''


class GridError(NestError, ValueError):
    '''Invalid argument to a pure geometry function'''


class EmptyCellError(GridError):
    pass


class EmptySetError(GridError):
    pass


class NegativeValueError(GridError):
    pass


class ControllerError(NestError):
    '''
    Raised when the robot controller is driven outside its preconditions.

    On a valid (connected) input none of these may ever surface from build_nest;
    when one does, the controller has a bug.
    '''


class IllegalAction(ControllerError):

    def __init__(self, message: str, index: Optional[int] = None):
        if index is None:
            super().__init__(message)
        else:
            super().__init__('event %d: %s' % (index, message))
        self.message = message
        self.index = index

    def __reduce__(self):
        return (self.__class__, (self.message, self.index))


class HeavyRobot(ControllerError):
    pass


class LightRobot(ControllerError):
    pass


class EmptySource(ControllerError):
    pass


class OccupiedTarget(ControllerError):
    pass


class InvalidTarget(ControllerError):
    pass


class OutOfReach(ControllerError):
    pass


class NoAwayDirection(ControllerError):
    pass


class WalkEscaped(ControllerError):
    pass


class NotABreakPoint(ControllerError):
    pass


class LeafShifting(ControllerError):
    pass


class MarkerNotFound(ControllerError):
    pass


class NoMarkerSite(ControllerError):
    pass


class NoFreeComponent(ControllerError):
    pass


class MissingLedger(ControllerError):
    pass


class InstanceError(NestError, ValueError):
    '''Bad instance text, parameters or fixture name'''


class InstanceSyntaxError(InstanceError):

    def __init__(self, message: str, line: int, column: int):
        super().__init__(
            'line %d, column %d: %s' % (line, column, message))
        self.message = message
        self.line = line
        self.column = column

    def __reduce__(self):
        return (self.__class__, (self.message, self.line, self.column))


class NotConnected(InstanceError):
    pass


DisconnectedInput = NotConnected


class StartNotFull(InstanceError):
    pass


class UnknownFixture(InstanceError, KeyError):

    def __str__(self):
        return Exception.__str__(self)


class InfeasibleParameters(InstanceError):
    pass


class TraceError(NestError, ValueError):
    '''Unreadable or inconsistent trace file'''


class TraceFormatError(TraceError):

    def __init__(self, message: str, line: int):
        super().__init__('line %d: %s' % (line, message))
        self.message = message
        self.line = line

    def __reduce__(self):
        return (self.__class__, (self.message, self.line))
