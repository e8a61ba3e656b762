"""Exception hierarchy shared across the package."""


class EntbathError(Exception):
    """Base class for all package errors."""


class ConfigError(EntbathError):
    """Invalid or unparsable scenario configuration."""


class SolverError(EntbathError):
    """A propagation failed or produced unusable output."""


class VariationalBreakdown(SolverError):
    """Norm drift of the variational state exceeded the hard bound."""


class DegenerateStateError(SolverError):
    """Composed density matrix trace collapsed below tolerance."""


class DimensionOverflowError(EntbathError):
    """Truncated Fock space would exceed the memory guard."""
