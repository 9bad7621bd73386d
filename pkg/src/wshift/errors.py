"""Exception types raised by the library.

Everything derives from :class:`WShiftError` so callers (the CLI in
particular) can separate operational failures from mathematical verdicts.
"""


class WShiftError(ValueError):
    """Base class for all library errors."""


class IndeterminateSignError(WShiftError):
    pass


class NoBracketError(WShiftError):
    pass


class SequenceError(WShiftError):
    """Malformed or invalid weight sequence."""


class PositiveConeError(SequenceError):
    def __init__(self, n):
        super().__init__(f"sequence leaves positive cone at {n}")
        self.n = n


class DegenerateError(WShiftError):
    pass


class NotIntegrableError(WShiftError):
    pass


class InvalidRecursionError(WShiftError):
    pass


class PreconditionError(WShiftError):
    pass


class WitnessNotFoundError(WShiftError):
    pass
