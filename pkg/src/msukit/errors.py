"""Exception hierarchy shared by every msukit module."""


class MSUError(Exception):
    """Base class for all library errors."""


class ValidationError(MSUError, ValueError):
    """Invalid argument, configuration or column selection."""


class EmptyInputError(ValidationError):
    def __init__(self, msg="empty input"):
        super().__init__(msg)


class SelectionError(ValidationError):
    def __init__(self, msg="bad selection"):
        super().__init__(msg)


class TooFewVariablesError(ValidationError):
    def __init__(self, msg="need at least two variables"):
        super().__init__(msg)


class CardinalityOverflowError(MSUError, OverflowError):
    def __init__(self, msg="cardinality overflow"):
        super().__init__(msg)


class ConsistencyError(MSUError, ArithmeticError):
    """A measure left its mathematical range by more than rounding slack."""


class DataError(MSUError):
    """Malformed input file (ragged rows, unknown column, bad cell)."""


class NotConvergedError(MSUError):
    """The stop rule exhausted its schedule without triggering.

    The evaluated trace is kept on the exception so callers can still
    report it.
    """

    def __init__(self, trace, threshold):
        self.trace = list(trace)
        self.threshold = threshold
        super().__init__(
            f"not converged: no step of {len(self.trace)} changed by less than {threshold}"
        )
