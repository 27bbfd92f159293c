"""Exception hierarchy shared by every module of the package."""


class BoxLogicError(Exception):
    """Base class for all errors raised by boxlogic."""


class InputError(BoxLogicError, ValueError):
    """An argument is malformed or is not a member of the structure it refers to."""


class PreconditionError(InputError):
    """Arguments are well formed but violate an operation precondition."""


class ResourceError(BoxLogicError, RuntimeError):
    """A computation would exceed the configured element budget."""


class InvariantError(BoxLogicError, RuntimeError):
    """An internal invariant was violated. This indicates a bug, not bad input."""


class StateError(InputError):
    """A probability table is not a valid state."""


class NormalizationError(StateError):
    pass


class SignalingError(StateError):
    pass


class SpecError(InputError):
    """A spec or behavior file could not be parsed or validated."""
