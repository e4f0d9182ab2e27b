"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class O1TError(Exception):
    """Base class for all errors raised by o1tg."""


# -- embedded maps -----------------------------------------------------------

class InconsistentRotation(O1TError, ValueError):
    """Neighbour lists are not mutually consistent."""


class NonSimple(O1TError, ValueError):
    """A loop or a parallel edge was found where a simple graph is required."""


class DegenerateMap(O1TError, ValueError):
    """Too few vertices, or a vertex without incident edges."""


class CrossingEdgesPresent(O1TError, ValueError):
    """Face tracing was requested on a map carrying crossing edges."""


class Disconnected(O1TError, ValueError):
    pass


# -- quadrangulations --------------------------------------------------------

class NotQuadrangulation(O1TError, ValueError):
    pass


class AdjacentSplitNeighbors(O1TError, ValueError):
    """The two neighbours chosen for a vertex split are consecutive in the rotation."""


class ResultNonSimple(O1TError, ValueError):
    pass


class NotFourRegular(O1TError, ValueError):
    pass


# -- optimal 1-embeddings ----------------------------------------------------

class DiagonalCollision(O1TError, ValueError):
    """A face diagonal is a loop, a quadrangulation edge, or another face's diagonal."""


# -- topology ----------------------------------------------------------------

class InternalInvariant(O1TError, RuntimeError):
    pass


class NotClosed(O1TError, ValueError):
    pass


class NotSimpleCycle(O1TError, ValueError):
    pass


class NoDiskSide(O1TError, ValueError):
    pass


class AmbiguousDisk(O1TError, RuntimeError):
    pass


# -- search budgets ----------------------------------------------------------

class BudgetExceeded(O1TError, RuntimeError):
    """An enumeration would exceed its configured budget."""


class TooLarge(BudgetExceeded):
    pass


# -- matching ----------------------------------------------------------------

class OddOrder(O1TError, ValueError):
    pass


class OrderTooSmall(O1TError, ValueError):
    pass


# -- theorem checks / harness ------------------------------------------------

class TheoremViolation(O1TError, AssertionError):
    """Computed and predicted values disagree.

    This is never expected; if it is raised, either the implementation or a
    characterization is wrong, and the instance that triggered it is kept on
    the exception for inspection.
    """

    def __init__(self, message: str, *, instance: object = None, details: dict | None = None):
        super().__init__(message)
        self.instance = instance
        self.details = details or {}


class ParseError(O1TError, ValueError):
    pass


class EmptyCorpus(O1TError, ValueError):
    pass
