"""Exception types raised across the package."""


class CliffordError(Exception):
    """Base class for all package errors."""


class ShapeMismatchError(CliffordError, ValueError):
    pass


class ZeroMatrixError(CliffordError, ValueError):
    pass


class NotSPDError(CliffordError, ValueError):
    pass


class IndexOutOfRangeError(CliffordError, IndexError):
    pass


class InvalidClassSignError(CliffordError, ValueError):
    pass


class RelationError(CliffordError):
    """Generators violate the Clifford relations."""


class RankError(RelationError):
    """An eigenspace had the wrong dimension while splitting a generator pair."""


class RankMismatchError(RelationError):
    """The common fixed space of an abelian plan has the wrong dimension."""


class NotOrthonormalError(RelationError):
    pass


class UnsupportedCError(CliffordError, ValueError):
    pass


class ReducibleError(CliffordError):
    """Representation dimension differs from the irreducible dimension."""


DimensionMismatchError = ReducibleError


class NotInCommutantError(CliffordError):
    pass
