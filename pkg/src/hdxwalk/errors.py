"""Exception types shared across the package."""


class HdxError(Exception):
    """Base class for all errors raised by this package."""


class InvalidFaceError(HdxError):
    """A face is malformed: repeated vertex, negative id, or wrong arity."""


class DuplicateFaceError(HdxError):
    """The same face was supplied more than once."""


class ParameterError(HdxError):
    """An argument is outside its documented range or malformed."""


class DimensionMismatchError(HdxError):
    """Chains of different face dimensions were combined or compared."""


class CapacityError(HdxError):
    """An exhaustive enumeration exceeds its configured threshold."""


class RegularityError(HdxError):
    """An operation that requires a regular graph or complex got an irregular one."""


class DomainError(HdxError):
    """A numeric argument lies outside the domain where the formula is defined."""


class DegenerateComplexError(HdxError):
    """Every subset at some dimension is a cocycle, so expansion ratios are undefined."""


class UndefinedTransitionError(HdxError):
    """A walk reached a vertex or edge with no neighbors to step to."""
