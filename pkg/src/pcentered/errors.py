"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes: InputError -> 2, ResourceError -> 3.
InvariantError signals a bug (or an input that silently violated a
structural precondition) and is never expected in normal operation.
"""


class PCenteredError(Exception):
    pass


class InputError(PCenteredError, ValueError):
    """Malformed or inconsistent input (bad file, failed precondition)."""


class ResourceError(PCenteredError):
    """A size cap, time budget or iteration cap was exhausted."""

    def __init__(self, message, **details):
        super().__init__(message)
        self.details = details


class InvariantError(PCenteredError, AssertionError):
    """An internal structural claim did not hold."""
