"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """Raised when parameters or configuration are structurally invalid."""


class GenericityError(RuntimeError):
    """Raised when resampling fails to produce a numerically generic point."""
