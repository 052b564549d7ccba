"""Exception hierarchy shared by all modules."""


class IndresError(Exception):
    """Base class for all errors raised by this package."""


class StructureError(IndresError):
    """Operands live in different parent structures or have wrong shapes."""


class CapabilityError(IndresError):
    """An operation needs an enumeration the structure cannot provide."""


class ClosureError(IndresError):
    """A finite element set is not closed under the requested action."""

    def __init__(self, message, escaping=()):
        super().__init__(message)
        self.escaping = list(escaping)


class BasisError(IndresError):
    """A generator cannot be written in the target basis."""


class ConditionError(IndresError):
    """Cover conditions failed; carries the offending report."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class UnsupportedError(IndresError):
    """The requested construction is outside what this package handles."""


class ValidationError(IndresError):
    """User input does not match the expected schema or invariants."""
