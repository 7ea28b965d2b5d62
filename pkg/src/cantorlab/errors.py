"""Exception hierarchy shared by all modules."""


class CantorlabError(Exception):
    """Base class for errors raised by this package."""


class PreconditionError(CantorlabError):
    """A construction hypothesis does not hold (exit status 2 in the CLI)."""


class BudgetExceeded(CantorlabError):
    """A fuel / depth / search budget ran out (exit status 3 in the CLI).

    Carries a ``report`` dict describing how far the computation got.
    """

    def __init__(self, message, **report):
        super().__init__(message)
        self.report = dict(report)


class SchemaError(CantorlabError):
    """Malformed JSON input or a descriptor violating the wire schema."""
