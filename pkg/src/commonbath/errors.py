"""Exception and warning types shared across the package."""


class ValidationError(ValueError):
    """Raised when parameters, configs or state matrices violate their contracts."""


class NonXStateError(ValidationError):
    """Raised when a density matrix lacks the X structure a fast path assumes."""


class SolverError(RuntimeError):
    """Raised when a numerical solve fails (non-unique kernel, positivity,
    trace drift, numerical-consistency checks)."""


class SecularApproximationWarning(UserWarning):
    """Emitted when level splittings are not large compared to the coupling
    rates, so the secular master equation is of doubtful validity."""
