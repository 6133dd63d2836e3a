"""
Engine Errors

Every domain error is a ValueError, so the API layer reports them as
400 responses and the CLI as usage/configuration failures.
"""


class ConfigurationError(ValueError):
    """Inconsistent degree, counts or condition configuration."""


class DegenerateConfigurationError(ValueError):
    """Conditions are not in general position (singular system, zero length, overlapping rays)."""


class RetryBudgetExhausted(DegenerateConfigurationError):
    """No generic configuration was found within the retry budget."""

    def __init__(self, message: str, attempts: int, last_diagnostic: str = ""):
        super().__init__(f"{message} after {attempts} attempts: {last_diagnostic}".rstrip(": "))
        self.attempts = attempts
        self.last_diagnostic = last_diagnostic


class OrientationError(ValueError):
    """A curve cannot be naturally oriented."""


class NotLaurentError(ValueError):
    """A multiplicity that must be a (y-)Laurent polynomial is not one."""


class DegenerateBracketError(ValueError):
    """A bracket was evaluated at a degenerate argument."""


class UnsupportedFeatureError(ValueError):
    """The request needs a feature this engine does not implement."""


class NotWelschingerError(ValueError):
    """A curve has a vertex that is not allowed in a Welschinger curve."""
