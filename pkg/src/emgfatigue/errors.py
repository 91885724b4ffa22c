"""Exception types shared across the toolkit."""


class EmgFatigueError(Exception):
    """Base class for all toolkit errors."""


class ConfigError(EmgFatigueError):
    """Invalid configuration values (band edges, window plans, generator specs)."""


class FilterDesignError(EmgFatigueError):
    """A filter design produced unstable or otherwise unusable coefficients."""


class UsageError(EmgFatigueError):
    """An operation was called with mismatched or inconsistent inputs."""


class DataError(EmgFatigueError):
    """Malformed input data (bad CSV rows, missing columns, invalid labels)."""
