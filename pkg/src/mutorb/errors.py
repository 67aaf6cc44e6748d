"""Exception types raised across the package.

Every domain error derives from :class:`MutorbError` so the command line
front end can map them to exit code 1 without catching programming errors.
"""

from __future__ import annotations


class MutorbError(Exception):
    """Base class for all domain errors."""


class InvalidMatrix(MutorbError, ValueError):
    """Matrix violates the sign condition or has the wrong shape."""


class NotSymmetrizable(MutorbError, ValueError):
    """No positive diagonal D makes B*D skew-symmetric."""


class NotRealizable(MutorbError, ValueError):
    """A (weighted) diagram has no integer matrix realization."""


class NonRealizable(NotRealizable):
    """Diagram mutation produced a non-integer weight."""


class InvalidMatching(MutorbError, ValueError):
    """Outlet matching pairs outlets of one block or reuses a vertex."""


class SearchBudgetExceeded(MutorbError, RuntimeError):
    """A backtracking search ran past its node budget."""


class NonOrientableGluing(MutorbError, ValueError):
    """Elementary pieces cannot be glued consistently."""


class UntriangulatedInput(MutorbError, ValueError):
    """Triangle data does not describe a triangulation."""


class NotFlippable(MutorbError, ValueError):
    """The arc is the inner edge of a self-folded triangle."""


class BoundaryArc(MutorbError, ValueError):
    """Boundary segments cannot be flipped."""


class NonLaurentDivision(MutorbError, ArithmeticError):
    """An exchange relation did not divide exactly."""


class ShapeMismatch(MutorbError, ValueError):
    """Operands have incompatible shapes."""


class NonCommutingBlock(MutorbError, ValueError):
    """An index block of a partition contains an internal edge."""


class NotApplicable(MutorbError, ValueError):
    """The requested construction does not apply to this input."""


class ExcludedFamily(MutorbError, ValueError):
    """Closed sphere with a single weight 1/2 orbifold point."""


class WrongNormalForm(MutorbError, ValueError):
    """Irregular blocks are not arranged as the construction requires."""


class NotSDecomposable(MutorbError, ValueError):
    """No block decomposition exists."""


class ClassEnumerationExceeded(MutorbError, RuntimeError):
    """Mutation class enumeration hit its cap."""
