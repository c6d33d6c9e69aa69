"""Exception hierarchy shared by all polylat modules."""


class PolylatError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(PolylatError):
    """Matrix/vector shapes do not fit the requested operation."""


class GeometryError(PolylatError):
    """Invalid geometric input (zero rows, negative homogenizing entry, ...)."""


class EmptyPolytopeError(GeometryError):
    """The inequality system has an empty feasible set (flag EMPTY)."""


class NotPointedError(GeometryError):
    """The cone contains a line; the requested computation needs a pointed cone."""


class NotFullDimensionalError(GeometryError):
    """Operation defined only for full-dimensional polytopes."""


class NotLatticeError(GeometryError):
    """Operation defined only for polytopes with integral vertices."""


class InternalConsistencyError(PolylatError):
    """A mathematically impossible intermediate value was produced upstream."""


class UnknownPropertyError(PolylatError):
    """Property name is not part of the registered vocabulary."""


class RegistrationError(PolylatError):
    """Malformed rule/class/property registration."""


class UnsatisfiableRequestError(PolylatError):
    """No rule chain can produce the requested properties."""

    def __init__(self, missing):
        self.missing = tuple(missing)
        super().__init__(
            "no rule chain produces: " + ", ".join(self.missing)
        )


class CastRefusedError(PolylatError):
    """A subclass precondition evaluated to the wrong value."""

    def __init__(self, class_name, condition, value):
        self.class_name = class_name
        self.condition = condition
        self.value = value
        super().__init__(
            f"cannot cast to {class_name}: precondition {condition} is "
            f"{'1' if value else '0'}"
        )


class RuleBodyError(PolylatError):
    """A rule body raised; carries the rule id."""

    def __init__(self, rule_id, cause):
        self.rule_id = rule_id
        self.cause = cause
        super().__init__(f"rule [{rule_id}] failed: {cause}")


class BudgetExceededError(PolylatError):
    """A bounded search exhausted its node budget before reaching an answer."""


class ShellError(PolylatError):
    """Parse or runtime error in the interactive shell / script runner."""

    def __init__(self, message, line=None):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}" if line else message)


class ObjectFileError(PolylatError):
    """Malformed object file; names the offending section."""

    def __init__(self, section, message):
        self.section = section
        super().__init__(f"section {section}: {message}")
