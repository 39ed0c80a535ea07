"""Exception types shared across the package."""


class InvalidMatrix(ValueError):
    """The Coxeter matrix is malformed (not symmetric, bad diagonal, ...)."""


class InfiniteOrTooLarge(RuntimeError):
    """Group enumeration exceeded the element cap (infinite or too big)."""


class MixedGroups(ValueError):
    """Operands belong to different Coxeter groups."""


class NotInDJ(ValueError):
    """Element is not a minimal coset representative."""


class NotInDJbar(ValueError):
    """Element is not a maximal coset representative."""


class NotInEJ(ValueError):
    """Element does not have right descent set exactly J."""


class NotInCosetSet(ValueError):
    """Element is in neither the minimal nor the maximal representative set."""


class RecursionStuck(RuntimeError):
    """No admissible pivot generator exists for the relative recursion."""


class QuotientDropError(ArithmeticError):
    """A term dropped by a quotient-module recursion failed ideal membership."""


class NotCellClosed(ValueError):
    """The element set is not a union of left cells."""


class TooLarge(ValueError):
    """The group is too large for an exact whole-algebra computation."""


class SizeMismatch(ValueError):
    """Partitions of different integers were compared."""


class NotRowStandard(ValueError):
    """Tableau rows are not strictly increasing."""
