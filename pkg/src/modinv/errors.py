"""Exception types shared across the package."""

from __future__ import annotations


class ModinvError(Exception):
    """Base class for all errors raised by modinv."""


class UsageError(ModinvError, ValueError):
    """Invalid arguments: out-of-range parameters, mismatched contexts, bad shapes."""


class FieldConstructionError(ModinvError, ValueError):
    """The requested modulus does not define a field."""

    def __init__(self, message: str, factor: int | None = None):
        super().__init__(message)
        self.factor = factor


class PreconditionError(ModinvError, ValueError):
    """An input violates a documented precondition (e.g. a non-invariant generator)."""


class IntegrityError(ModinvError, RuntimeError):
    """Two independent computations that must agree did not.

    Carries both sides so the mismatch can be reported rather than patched.
    """

    def __init__(self, message: str, expected=None, found=None):
        super().__init__(message)
        self.expected = expected
        self.found = found
