"""Exception taxonomy shared by all modules.

The CLI maps these onto process exit codes: FormatError -> 2,
DomainError -> 3, ConvergenceError -> 4.
"""


class UncrelError(Exception):
    """Base class for all library errors."""


class FormatError(UncrelError):
    """Malformed input data (tables, files, CLI specs)."""


class DomainError(UncrelError):
    """Parameter outside the validity window of a formula or bound."""


class DivergenceError(DomainError):
    """An integral does not converge for the requested order."""


class BracketError(DomainError):
    """Root or minimum bracketing failed (no sign change / no interior minimum)."""


class ConvergenceError(UncrelError):
    """An iterative numerical procedure exhausted its budget."""


class NonFiniteError(ConvergenceError):
    """An integrand returned NaN or infinity at an interior point."""
