"""Exception hierarchy shared by every hopflab module."""


class HopfLabError(Exception):
    """Base class for all library errors."""


class AmbientMismatch(HopfLabError, ValueError):
    """Two subspaces (or a vector and a subspace) live in different spaces."""


class NotAnIdeal(HopfLabError, ValueError):
    pass


class NotCommutative(HopfLabError, ValueError):
    pass


class PreconditionError(HopfLabError, ValueError):
    pass


class UnsupportedClass(HopfLabError):
    """The input lies outside the regimes where a computation is provably exact."""


class ConstraintViolation(HopfLabError, ValueError):
    pass


class IncompleteGroupLikes(UnsupportedClass):
    pass


class InvalidInput(HopfLabError, ValueError):
    """Malformed document or table (maps to CLI exit code 2)."""


class AxiomFailure(HopfLabError):
    """A built structure failed verification; ``report`` holds the witnesses."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
