"""Exception hierarchy shared by all modules."""


class ParaboseError(Exception):
    """Base class for every error raised by this package."""


class InvalidParameters(ParaboseError, ValueError):
    pass


class IndexOutOfRange(ParaboseError, IndexError):
    pass


class TruncationTooSmall(ParaboseError, ValueError):
    pass


class OutOfSupportedRange(ParaboseError, ValueError):
    pass


class NotGuaranteedConvergence(ParaboseError, ArithmeticError):
    """Raised when a series is outside the proven convergence region and the
    caller did not opt into best-effort evaluation."""


class QuadratureDidNotConverge(ParaboseError, ArithmeticError):
    pass
