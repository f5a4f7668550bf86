"""Exception types shared across the toolkit."""


class DomainError(ValueError):
    """An input is outside the physical domain of an operation."""


class ConfigError(ValueError):
    """A constants config document is malformed."""


class ConsistencyError(RuntimeError):
    """Two algebraically equivalent evaluation routes disagreed.

    This signals an implementation bug, never valid-input behaviour.
    """
