"""Shared exception types."""


class VerificationError(RuntimeError):
    """An internal cross-check that must hold failed; never silently ignored."""


class ConfigurationError(ValueError):
    """Invalid parameters (ambient gates, parity, or range violations)."""


class ForbiddenAlpha(ValueError):
    """A series index alpha landed in the excluded set {0, -1, -2, ...}."""


class DegenerateProjection(ValueError):
    """Harmonic projection denominator vanished with a nonzero Laplacian."""


class ClosedFormInapplicable(ValueError):
    """A closed-form action would divide by zero; use the generic action."""
