"""Exception types shared across the package."""


class TowndexError(Exception):
    """Base class for all towndex errors."""


class FormatError(TowndexError):
    """A source file is structurally unusable (bad header, duplicate page keys)."""


class NotFoundError(TowndexError):
    """A referenced entity, record, or route target does not exist."""


class ArgumentError(TowndexError):
    """A caller-supplied argument is out of the operation's domain."""


class TransitionError(TowndexError):
    """A process status change is not in the legal transition set."""

    def __init__(self, current: str, requested: str):
        super().__init__(f"illegal transition: {current} -> {requested}")
        self.current = current
        self.requested = requested


class UndefinedResultError(TowndexError):
    """The requested statistic has no defined value for this input."""
