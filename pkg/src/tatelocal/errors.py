"""Exception hierarchy shared by all modules.

Every error raised on purpose by the package derives from ``TateLocalError``
so the command line can map it to a domain-error exit code.
"""

from __future__ import annotations


class TateLocalError(Exception):
    """Base class for domain errors."""


class PoleError(TateLocalError, ZeroDivisionError):
    pass


class UnsupportedOrderError(TateLocalError, ValueError):
    pass


class ConvergenceError(TateLocalError, ArithmeticError):
    pass


class OutOfStripError(TateLocalError, ValueError):
    pass


class ZeroArgumentError(TateLocalError, ValueError):
    pass


class InconsistentConductorError(TateLocalError, ValueError):
    pass


class SupportAtZeroError(TateLocalError, ValueError):
    pass


class UnramifiedInputError(TateLocalError, ValueError):
    pass


class NotCanonicalError(TateLocalError, ValueError):
    pass


class NonCompactError(TateLocalError, ValueError):
    pass


class DecayAssumptionError(TateLocalError, ValueError):
    pass


class InvalidOmegaError(TateLocalError, ValueError):
    pass


class NotRepresentableError(TateLocalError, ValueError):
    pass


class SizeLimitError(TateLocalError, ValueError):
    pass


class ZeroTableError(TateLocalError, ValueError):
    """Malformed zero table; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None) -> None:
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class SupportTooWideError(TateLocalError, ValueError):
    pass


class NonUnitModulusError(TateLocalError, ValueError):
    pass
