"""Exception types shared across the toolkit."""


class KrullkitError(Exception):
    """Base class for all toolkit errors."""


class MalformedSegment(KrullkitError):
    """Index segment violates the closure invariant for its convention."""


class ZeroElement(KrullkitError):
    """Operation requires a nonzero group element."""


class TooLarge(KrullkitError):
    """Input exceeds the exhaustive-search bound."""


class IncompatibleCuts(KrullkitError):
    """Cuts belong to different prepared chains."""


class EmptySubset(KrullkitError):
    """Subset comparison requires nonempty operands."""


class UnsupportedCarrier(KrullkitError):
    """Symbolic carrier outside the finitely-described fragment."""


class InconsistentTable(KrullkitError):
    """Continuum-function table violates 2^k >= k+ or monotonicity."""


class FiniteCardinalError(KrullkitError):
    """Operation is defined only for infinite cardinals."""


class UnsupportedDescriptor(KrullkitError):
    """Ring descriptor outside the construction catalog."""
