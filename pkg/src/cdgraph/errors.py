"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: input errors -> 2, hypothesis
violations -> 3, resource caps -> 4, internal failures -> 5.
"""


class CdGraphError(Exception):
    pass


class InputError(CdGraphError, ValueError):
    """Malformed or out-of-contract input."""


class DomainError(CdGraphError, ValueError):
    """The operation is undefined for this (valid) input."""


class CapExceeded(CdGraphError, RuntimeError):
    """A configured resource cap would be exceeded."""

    def __init__(self, cap: str, limit: int, needed: int | None = None):
        self.cap = cap
        self.limit = limit
        self.needed = needed
        msg = f"{cap} cap of {limit} exceeded"
        if needed is not None:
            msg += f" (needs {needed})"
        super().__init__(msg)


class HypothesisError(CdGraphError):
    """A theorem's hypothesis does not hold for the given group."""

    def __init__(self, message: str, shape: str | None = None):
        self.shape = shape
        super().__init__(message)


class InternalError(CdGraphError, AssertionError):
    """Something that cannot happen mathematically did happen."""
