"""Exception hierarchy shared by every module."""


class LawvereError(Exception):
    """Base class for all errors raised by this package."""


class CompositionMismatch(LawvereError):
    """Two arrows were composed whose endpoints do not line up."""


class PullbackMismatch(LawvereError):
    """A pullback was requested for maps with different codomains."""


class BudgetExceeded(LawvereError):
    """An enumeration would exceed its configured candidate budget."""


class ContextError(LawvereError):
    """A term mentions a variable outside its context."""


class NoNormalizer(LawvereError):
    """The presentation has no registered normal-form procedure."""


class ConfigurationError(LawvereError):
    """Inputs are inconsistent (name clashes, unknown semirings, ...)."""


class StructureError(LawvereError):
    """An algebraic structure fails one of its axioms.

    ``witness`` carries the offending elements so callers can report them.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
