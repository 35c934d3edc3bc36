class QDeflateError(Exception):
    """Base class for errors raised by qdeflate."""


class IsotropyError(QDeflateError):
    """Two generators have a nonzero symplectic product."""

    def __init__(self, i: int, j: int, value: int):
        self.pair = (i, j)
        self.value = value
        super().__init__(f"rows {i} and {j} are not symplectically orthogonal (product {value})")


class DimensionError(QDeflateError):
    """The F_p-dimension of a stabilizer is not a multiple of r."""


class BudgetExceeded(QDeflateError):
    def __init__(self, required: int, budget: int, what: str = "enumeration"):
        self.required = required
        self.budget = budget
        super().__init__(f"{what} needs {required} elements, budget is {budget}")


class UndefinedDistance(QDeflateError):
    """Minimum distance asked for a code with k = 0."""
