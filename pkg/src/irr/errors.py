"""Exception hierarchy.

Every error raised by this package derives from IrrError, so callers can
catch one type at the boundary. Input problems (bad datasets, mismatched
ground sets, infeasible weights) and resource problems (ground set beyond
the enumeration cap) are kept distinct because the CLI maps them to
different exit codes.
"""


class IrrError(Exception):
    """Base class for all package errors."""


class DatasetError(IrrError):
    """A dataset file or in-memory payload failed validation."""


class GroundMismatch(IrrError):
    """Two objects were combined that live over different ground sets."""


class NotASubset(IrrError):
    """A menu argument was required to be a subset of another and is not."""


class EmptyBaseMenu(IrrError):
    """A localization was requested at the empty menu."""


class NotRationalizable(IrrError):
    """An operation requiring rationalizable input received one that is not."""


class GroundSetTooLarge(IrrError):
    """The ground set exceeds the enumeration cap (see IRR_MAX_N)."""


class PreconditionViolated(IrrError):
    """A relation-shaped precondition (asymmetry, acyclicity, ...) failed."""


class InfeasibleWeightingMap(IrrError):
    """A weighting map violates range, monotonicity, or the average property."""


class ItemNotInMenu(IrrError):
    """An (item, menu) query where the item does not belong to the menu."""


class NotADistribution(IrrError):
    """Probability weights that are negative or do not sum to one."""


class NotABijection(IrrError):
    """A permutation argument that is not a bijection on the ground set."""
