"""Exception types shared across the package."""

from __future__ import annotations


class VortexError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(VortexError):
    """A point lies outside the domain, or domain parameters are invalid."""


class CollarError(VortexError):
    """A boundary-collar operation was requested outside the collar."""


class AmbiguousProjectionError(VortexError):
    """Nearest boundary point is not unique beyond the collar.

    Carries both candidate feet so the caller can inspect the tie.
    """

    def __init__(self, feet, message="nearest boundary point is ambiguous"):
        super().__init__(f"{message}: candidates {feet}")
        self.feet = tuple(feet)


class ChartError(VortexError):
    """Line-chart parameters are not strictly increasing."""


class ConfigurationError(VortexError):
    """A vortex configuration has coincident or out-of-domain points."""


class SingularityError(VortexError):
    """Evaluation requested at a kernel singularity (coincident points)."""


class CapacityError(VortexError):
    """Input size exceeds the documented enumeration capacity."""


class ConvergenceError(VortexError):
    """An iterative solve (Newton inverse or polish) failed to converge."""

    def __init__(self, message, last_iterate=None):
        super().__init__(message)
        self.last_iterate = last_iterate


class SamplingError(VortexError):
    """Rejection sampler could not place points."""


class FlowTerminatedError(VortexError):
    """Gradient flow stopped without converging; carries the trace."""

    def __init__(self, termination, trace=None):
        super().__init__(f"gradient flow terminated with {termination!r}")
        self.termination = termination
        self.trace = trace


class UnsupportedDomainError(VortexError):
    """Operation is only defined for a different domain variant."""


class ConfigError(VortexError):
    """Run configuration is malformed or inconsistent."""
