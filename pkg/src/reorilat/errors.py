"""Exception hierarchy shared by every module."""

from __future__ import annotations


class ReorilatError(Exception):
    """Base class; the CLI turns any subclass into a one-line message."""


class GraphFormatError(ReorilatError):
    pass


class InvalidGraph(ReorilatError):
    pass


class SizeCapExceeded(ReorilatError):
    def __init__(self, predicted: int, cap: int) -> None:
        super().__init__(f"predicted {predicted} elements exceeds cap {cap}")
        self.predicted = predicted
        self.cap = cap


class NotALattice(ReorilatError):
    pass


class NotSemidistributive(ReorilatError):
    pass


class NotSkeletal(ReorilatError):
    pass


class NotACover(ReorilatError):
    pass


class NotJoinIrreducible(ReorilatError):
    pass


class NotAnInterval(ReorilatError):
    pass


class CrossingRopes(ReorilatError):
    pass


class InvalidIdeal(ReorilatError):
    pass


class NotPathful(ReorilatError):
    pass


class NotStronglyPathful(ReorilatError):
    pass


class OnWall(ReorilatError):
    pass


class NonGenericDirection(ReorilatError):
    pass


class RepresentationMismatch(ReorilatError):
    pass


class DegenerateConfiguration(ReorilatError):
    pass
