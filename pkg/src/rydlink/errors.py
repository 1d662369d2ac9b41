"""Exception types shared across the package."""


class RydlinkError(Exception):
    """Base class for all errors raised by this package."""


class LayoutError(RydlinkError):
    """Dimension bookkeeping violated: bad fock_dim, shape or basis index."""


class StateError(RydlinkError):
    """A state failed validation (normalization, Hermiticity, trace or positivity)."""


class ParameterError(RydlinkError):
    """Physical parameters are out of range or mutually inconsistent."""


class TransferTimeError(ParameterError):
    """No real transfer time exists for the requested couplings."""


class ConfigError(RydlinkError):
    """A run configuration is invalid (unknown key, bad value, missing entry)."""


class IntegrationError(RydlinkError):
    """The ODE integrator failed to reach the end of a span.

    Parameters
    ----------
    message : str
        Human-readable description.
    last_time : float or None
        Last time the integrator reached before giving up, in us.
    """

    def __init__(self, message, last_time=None):
        super().__init__(message)
        self.last_time = last_time
