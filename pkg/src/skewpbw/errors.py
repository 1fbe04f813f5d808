"""Exception types shared across the package."""


class RingMismatchError(ValueError):
    """Values from incompatible coefficient rings were combined."""


class NotDivisibleError(ArithmeticError):
    """Exact polynomial division left a nonzero remainder."""


class NotInvertibleError(ArithmeticError):
    """Inversion was requested for a coefficient that is not a unit."""


class ParseError(ValueError):
    """Syntax or typing error in textual input, with source position."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.reason = message
        self.line = line
        self.col = col


class SpecValidationError(ValueError):
    """An algebra definition failed its validation report."""

    def __init__(self, report):
        detail = "; ".join(f"{issue.code}: {issue.message}" for issue in report.issues)
        super().__init__(f"algebra definition rejected: {detail}")
        self.report = report


class ContractError(ValueError):
    """A documented precondition does not hold (e.g. non-commuting inputs)."""


class CapExhaustedError(RuntimeError):
    """The annihilator search exhausted its degree cap without finding a relation."""

    def __init__(self, message: str, s_max: int, t_bound: int):
        super().__init__(message)
        self.s_max = s_max
        self.t_bound = t_bound
