# -*- coding: utf-8 -*-

"""
errors collects the exceptions raised by the dp2_cluster engines.

Every engine error derives from Dp2Error so the command line can map
it to an exit code in one place.
"""


class Dp2Error(Exception):
    '''Base class of every engine error.'''


class NotDivisible(Dp2Error):
    '''Exact division left a remainder.'''


class ParseError(Dp2Error):
    '''
    Text could not be parsed.
    :param message:
    :param position: offset of the offending character
    '''

    def __init__(self, message: str, position: int = 0):
        super().__init__(f'{message} (at position {position})')
        self.position = position


class InvalidFixture(Dp2Error):
    '''A data fixture failed validation at load.'''


class GeometryError(Dp2Error):
    '''A traced contour does not close.'''


class ExtractionError(Dp2Error):
    '''The keep/remove rules could not be applied to a contour.'''


class OutOfRange(Dp2Error):
    '''A parameter is outside the domain of an operation.'''


class CapExceeded(Dp2Error):
    '''
    A graph has more perfect matchings than the configured cap.
    :param cap:
    :param count: the count reached, or the expected count when known up front
    '''

    def __init__(self, cap: int, count: int):
        super().__init__(f'matching count {count} exceeds cap {cap}')
        self.cap = cap
        self.count = count


class PreconditionViolated(Dp2Error):
    '''The inputs do not satisfy an operation's precondition.'''


class CaseFailure(Dp2Error):
    '''
    A case fixture cannot be realized on its graph.
    :param case: fixture id
    :param message:
    '''

    def __init__(self, case: str, message: str):
        super().__init__(f'case {case}: {message}')
        self.case = case
