"""Exception types shared by the parsers, solvers and encoders."""


class ProgramSyntaxError(ValueError):
    """Raised when program (or DIMACS) text does not match the grammar."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class ReservedNameError(ValueError):
    """An atom name collides with a prefix reserved for encoder output."""


class CapExceeded(RuntimeError):
    """A brute-force routine was asked to search a space above its cap."""
