"""Exception hierarchy shared by the library and the CLI."""


class MotifMomentsError(Exception):
    """Base class for all errors raised by this package."""


class EdgeListError(MotifMomentsError, ValueError):
    """Malformed edge-list input."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ParameterError(MotifMomentsError, ValueError):
    """A numeric parameter is outside its supported range."""


class SizeError(ParameterError):
    """Graph too large for exhaustive canonical labeling."""


class ConfigurationError(MotifMomentsError):
    """A coefficient or detector table does not cover the requested order."""


class CapabilityError(MotifMomentsError):
    """Requested moment order is beyond what a method can deliver."""

    def __init__(self, message, k=None, k_max=None):
        self.k = k
        self.k_max = k_max
        super().__init__(message)

    @classmethod
    def for_radius(cls, k, r):
        k_max = 2 * r + 1
        return cls(
            f"moment order k={k} needs a larger radius: r={r} supports k <= {k_max}",
            k=k,
            k_max=k_max,
        )


class ConnectivityError(MotifMomentsError):
    """Operation requires a connected graph."""
