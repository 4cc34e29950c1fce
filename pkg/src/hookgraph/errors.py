"""Exception hierarchy shared by the library and the command line."""


class HookgraphError(Exception):
    exit_code = 4


class ParseError(HookgraphError, ValueError):
    """Malformed input string or job description."""

    exit_code = 2


class CartanError(ParseError):
    """Unknown or invalid (series, rank) pair."""


class PreconditionError(HookgraphError, ValueError):
    """A mathematical hypothesis of an operation does not hold."""

    exit_code = 3


class AdmissibilityError(PreconditionError):
    def __init__(self, x, msg):
        super().__init__(msg)
        self.element = x


class PoleError(PreconditionError, ZeroDivisionError):
    pass


class InvariantError(HookgraphError, AssertionError):
    """An internal cross-check failed.  Always a bug."""

    exit_code = 4
