"""Exceptions raised by pyfreediv.

PreconditionError and its subclasses are structured refusals (exit status 2
on the command line). InvariantViolation marks a contradiction with a proven
statement and therefore a kernel bug (exit status 1).
"""


class FreeDivError(Exception):
    """Base class of all pyfreediv errors."""


class PreconditionError(FreeDivError, ValueError):
    """Input or hypothesis gate not satisfied."""


class ParseError(PreconditionError):
    """Polynomial text does not follow the grammar."""


class RingMismatchError(PreconditionError):
    """Operands live in different polynomial rings."""


class InexactDivisionError(PreconditionError):
    """Exact division requested but the remainder is nonzero."""


class HypothesisError(PreconditionError):
    """A theorem or proposition hypothesis fails for the given input.

    Args:
        message: Human readable explanation.
        hypothesis: Short tag of the violated hypothesis.
    """

    def __init__(self, message, hypothesis=None):
        super().__init__(message)
        self.hypothesis = hypothesis


class InvariantViolation(FreeDivError, RuntimeError):
    """An exact identity or theorem consequence failed."""


class RouteDisagreement(InvariantViolation):
    """Fitting and Rees linear-type routes returned different verdicts."""


class DegreeCapExceeded(FreeDivError):
    """A Groebner computation produced an element above the degree cap.

    Args:
        degree: Degree of the offending element.
        cap: Configured cap.
    """

    def __init__(self, degree, cap):
        super().__init__(f"Groebner element of degree {degree} exceeds the cap {cap}")
        self.degree = degree
        self.cap = cap
