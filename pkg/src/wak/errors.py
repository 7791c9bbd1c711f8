"""Exception types shared across the package."""


class WakError(Exception):
    """Base class for domain errors (CLI exit status 1)."""


class ParseError(WakError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{where}: {message}"
        super().__init__(message)


class IllegalMoveError(WakError, ValueError):
    pass


class PreconditionError(WakError, ValueError):
    pass


class BudgetExhausted(WakError):
    """Raised when a search expands more positions than its budget allows."""

    def __init__(self, budget):
        self.budget = budget
        super().__init__(f"search budget exhausted after {budget} expanded positions")


class CertificateTooLarge(WakError):
    pass


class NoPeriodFound(WakError):
    pass
