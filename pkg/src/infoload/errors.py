"""Exception types shared across the package."""


class ParameterError(ValueError):
    """A curve or trader parameter is outside its admissible domain."""


class ConfigError(ValueError):
    """A configuration value violates the schema or a model invariant.

    Carries the dotted path of the offending field so CLI errors can name it.
    """

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field
        self.message = message


class NumericRangeError(ArithmeticError):
    """A numeric routine left the representable range (e.g. bracket overflow)."""


class PreconditionError(ValueError):
    """A caller violated an operation's stated precondition."""
