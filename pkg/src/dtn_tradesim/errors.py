"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """Raised for out-of-range, malformed, or unknown configuration input."""


class SimulationFault(RuntimeError):
    """Raised when a simulation violates an internal safety bound."""
