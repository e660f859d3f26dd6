"""Exception types shared across the package."""


class GraphConstructionError(ValueError):
    """Raised when a topology cannot be built (e.g. no connected sample found)."""


class NumericError(RuntimeError):
    """Raised when an iterative numerical routine fails to converge."""


class EstimateUnavailableError(ValueError):
    """Raised when an arm-mean estimate is requested before any mass has arrived."""


class ConfigError(ValueError):
    """Raised for invalid or unreadable experiment configuration."""
