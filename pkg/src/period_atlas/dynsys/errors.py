class DynsysError(RuntimeError):
    """Base class for failures of the numerical engines."""


class DomainError(DynsysError, ValueError):
    pass


class ConvergenceFailure(DynsysError):
    pass


class PoleError(DynsysError, ValueError):
    pass


class NotNormalized(DynsysError, ValueError):
    pass


class ZeroCoefficient(DynsysError, ValueError):
    pass


class EscapedAnnulus(DynsysError):
    pass


class MaxTimeExceeded(DynsysError):
    pass


class NoBracket(DynsysError):
    pass
