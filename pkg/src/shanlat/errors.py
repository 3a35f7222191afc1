"""Exception types shared across the package."""


class ShanlatError(Exception):
    """Base class for all package errors."""


class NotAPartialOrder(ShanlatError):
    """The cover relation contains a cycle."""


class NotALattice(ShanlatError):
    """Some pair of elements lacks a unique meet or join."""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class NoBoundedElements(ShanlatError):
    """No unique top or bottom element."""


class UnknownName(ShanlatError):
    """Catalog name not recognized."""


class BadParams(ShanlatError):
    """Catalog parameters out of range."""


class NotClosed(ShanlatError):
    """Dependency relation violates an Armstrong axiom."""

    def __init__(self, message, axiom=None, witness=None):
        super().__init__(message)
        self.axiom = axiom
        self.witness = witness


class NotPolymatroid(ShanlatError):
    """Value vector fails the polymatroid definition."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class DimensionTooLarge(ShanlatError):
    """Brute-force ray oracle guard tripped."""


class ArityMismatch(ShanlatError):
    """Inequality template given the wrong number of elements."""


class BudgetExceeded(ShanlatError):
    """A configured search or scan budget was exceeded."""


class ShapeMismatch(ShanlatError):
    """Lattice shape does not fit the requested realization scheme."""


class InvalidAssignment(ShanlatError):
    """Subgroup assignment violates order reversal or the intersection law."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotAProbability(ShanlatError):
    """Weights are not a probability distribution."""


class JoinInconsistent(ShanlatError):
    """Variable at a join is coarser than the pair it must determine."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class SizeTooLarge(ShanlatError):
    """Lattice enumeration guard tripped."""


class ParseError(ShanlatError):
    """Malformed .lat, dependency, or ray file."""
