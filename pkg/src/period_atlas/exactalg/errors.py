class ExactAlgebraError(ArithmeticError):
    """Base class for failures of exact polynomial algorithms."""


class NotDivisible(ExactAlgebraError):
    pass


class EndpointRoot(ExactAlgebraError):
    """The polynomial vanishes at an interval endpoint."""

    def __init__(self, point):
        super().__init__(f"polynomial vanishes at endpoint {point}")
        self.point = point


class ZeroInput(ExactAlgebraError):
    pass
