"""Exception types shared across the toolkit."""


class LtldepError(Exception):
    """Base class for all toolkit errors."""


class SpecSyntaxError(LtldepError):
    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class ManagerMismatchError(LtldepError):
    pass


class UnknownVariableError(LtldepError):
    pass


class DuplicateVariableError(LtldepError):
    pass


class ResourceBudgetError(LtldepError):
    """A configurable state/alphabet cap was exceeded."""


class HoaFormatError(LtldepError):
    pass


class AlphabetMismatchError(LtldepError):
    pass


class DependencyInvariantError(LtldepError):
    """A set claimed dependent admitted two distinct output values."""


class UnrealizableError(LtldepError):
    """Strategy extraction requested for an unrealizable specification."""


class ControllerIncompleteError(LtldepError):
    """The controller produced no output (dead latch state) on a live run."""
