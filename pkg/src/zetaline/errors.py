"""Shared exception types."""


class ZetalineError(Exception):
    """Base class for package errors."""


class PoleError(ZetalineError):
    """Evaluation requested at a pole."""


class ConvergenceError(ZetalineError):
    """Requested accuracy is unreachable with the given parameters."""


class PathError(ZetalineError):
    """Integration path passes too close to a pole of the integrand."""


class PrecisionError(ZetalineError):
    """Truncated evaluation cannot be trusted at the requested point."""
