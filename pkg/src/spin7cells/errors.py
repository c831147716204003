class DomainError(ValueError):
    """Parameters outside the closed disc (or wrong shape) for a map."""


class BoundaryError(ValueError):
    """Target sits on a chart's excluded basepoint."""


class NumericError(RuntimeError):
    """Iterative inversion did not converge from any start."""


class InconsistencyError(RuntimeError):
    """Factorization left a residue that is not the identity."""


class ConfigurationError(RuntimeError):
    """Shipped data or derived tables are inconsistent."""


class LedgerError(ValueError):
    """Illegal cancellation or residual mismatch in a rank ledger."""
