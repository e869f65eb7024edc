"""Exception hierarchy shared by all modules."""


class ReflexError(Exception):
    """Base class for every error raised by this package."""


class SingularMatrix(ReflexError, ValueError):
    pass


class NotSymmetric(ReflexError, ValueError):
    pass


class OddDiagonal(ReflexError, ValueError):
    """Gram matrix has an odd diagonal entry, so the lattice is not even."""


class NotInDual(ReflexError, ValueError):
    """Vector does not pair integrally with the lattice."""


class MixedGroups(ReflexError, ValueError):
    pass


class MixedLattices(ReflexError, ValueError):
    pass


class NormMismatch(ReflexError, ValueError):
    pass


class NotIsometry(ReflexError, ValueError):
    pass


class NotNegationClosed(ReflexError, ValueError):
    pass


class InvalidPartition(ReflexError, ValueError):
    pass


class TooLarge(ReflexError, ValueError):
    pass


class ParseError(ReflexError, ValueError):
    """Dataset file is malformed; the message names the offending field."""


class ValidationError(ReflexError, ValueError):
    """Dataset parsed but a candidate violates an invariant."""
