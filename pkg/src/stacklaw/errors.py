"""Exception hierarchy shared by every stacklaw module."""


class StacklawError(Exception):
    """Base class for all errors raised by stacklaw."""


class DomainError(StacklawError, ValueError):
    """An argument lies outside the domain of a model."""


class SaturationError(DomainError):
    """The bus is at or beyond full utilization (rho >= 1)."""


class GeometryError(DomainError):
    """A physical layout cannot exist, e.g. TSVs needing more than the whole layer."""


class UndefinedIndexError(DomainError):
    """A ratio metric has no value for the given input (e.g. zero total power)."""


class ConfigError(StacklawError):
    """A configuration is inconsistent or refers to unknown names.

    ``path`` is a dotted field path (``cache[0].line_size``) when one applies.
    """

    kind = "config"

    def __init__(self, message, path=None, problems=None):
        self.path = path
        self.reason = message
        self.problems = list(problems) if problems else [(path, message)]
        super().__init__("; ".join(f"{p}: {r}" if p else r for p, r in self.problems))


class ConfigParseError(ConfigError):
    kind = "parse"


class SchemaViolation(ConfigError):
    kind = "schema"


class InvariantViolation(ConfigError):
    kind = "invariant"


class SweepTooLarge(ConfigError):
    """The sweep cross product exceeds the configured point cap."""

    def __init__(self, count, cap):
        self.count = count
        self.cap = cap
        super().__init__(f"sweep has {count} points, above the cap of {cap}", path="sweep")
