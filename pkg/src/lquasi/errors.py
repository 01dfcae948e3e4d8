"""Exception hierarchy shared by every module."""


class LQError(Exception):
    """Base class for all library errors."""


class InputError(LQError, ValueError):
    """Malformed input: tables, partitions, terms, files."""


class ShapeError(InputError):
    pass


class NotLeftQuasigroup(InputError):
    def __init__(self, row, message=None):
        self.row = row
        super().__init__(message or f"row {row} is not a permutation")


class NotCongruence(InputError):
    def __init__(self, witness=None, message=None):
        self.witness = witness
        super().__init__(message or f"partition is not a congruence (witness {witness})")


class TermSyntaxError(InputError):
    def __init__(self, message, position):
        self.position = position
        super().__init__(f"{message} at position {position}")


class UnboundVariable(InputError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"variable {name!r} has no value")


class NotSubgroup(InputError):
    pass


class NotAutomorphism(InputError):
    pass


class HNotFixed(InputError):
    pass


class TooSmall(InputError):
    pass


class HypothesisNotMet(LQError):
    """An operation was called outside the hypotheses it is valid under."""


class VerificationFailed(LQError):
    """A constructed object failed its own post-construction check."""


class ResourceCapError(LQError):
    """A configured size cap was exceeded; the result would be unreliable."""


class TooLarge(ResourceCapError):
    pass


class GroupTooLarge(ResourceCapError):
    def __init__(self, cap):
        self.cap = cap
        super().__init__(f"group has more than {cap} elements")


class FreeAlgebraTooLarge(ResourceCapError):
    def __init__(self, cap):
        self.cap = cap
        super().__init__(f"free algebra has more than {cap} elements")
