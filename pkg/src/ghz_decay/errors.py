"""Exception hierarchy shared by the library and the CLI.

Each category carries the process exit code the CLI reports for it.
"""


class GhzDecayError(Exception):
    exit_code = 1


class DomainError(GhzDecayError, ValueError):
    """An argument lies outside the domain of an operation."""

    exit_code = 2


class ValidationError(DomainError):
    """A constructed object violates one of its invariants."""


class ConfigError(GhzDecayError):
    """Malformed or inconsistent experiment configuration."""

    exit_code = 2

    def __init__(self, message, key=None, line=None):
        self.key = key
        self.line = line
        where = []
        if key is not None:
            where.append(f"key '{key}'")
        if line is not None:
            where.append(f"line {line}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)


class NumericalError(GhzDecayError, ArithmeticError):
    """A numerical routine failed (e.g. eigensolver did not converge)."""

    exit_code = 3


class UndefinedNormalization(NumericalError):
    """Initial negativity is below the floor, so a ratio is meaningless."""


class ResourceError(GhzDecayError, MemoryError):
    exit_code = 4
