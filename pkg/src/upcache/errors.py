class ConfigError(ValueError):
    """Invalid simulation configuration or request (CLI maps this to exit 2)."""


class InvariantViolation(RuntimeError):
    """A simulator-internal invariant broke; the episode must be aborted."""
