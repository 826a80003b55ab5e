"""Structured errors with stable machine-readable codes.

Every failure the engine can signal carries a short code meant for
machine consumption (CLI exit mapping, HTTP error bodies) next to the
human-readable message. Codes are stable API.
"""
from __future__ import annotations


class DivlatError(Exception):
    """Base class; .code is a stable machine-readable identifier."""

    code = "E_INTERNAL"

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def __str__(self) -> str:
        return self.message


class InputError(DivlatError):
    """Caller-supplied data is malformed or violates a precondition."""

    code = "E_INPUT"


class LatticeError(InputError):
    code = "E_LATTICE"


class LatticeMismatchError(InputError):
    code = "E_MISMATCH"


class ParseError(InputError):
    code = "E_PARSE"

    def __init__(self, message: str, position: int | None = None, **details):
        if position is not None:
            details["position"] = position
        super().__init__(message, **details)
        self.position = position


class PreconditionError(InputError):
    code = "E_PRECONDITION"


class MissingDataError(InputError):
    code = "E_MISSING"


class UnsupportedError(InputError):
    code = "E_UNSUPPORTED"


class BudgetError(DivlatError):
    """An enumeration would exceed the configured work budget."""

    code = "E_BUDGET"

    def __init__(self, message: str, required: int, allowed: int, **details):
        super().__init__(message, required=required, allowed=allowed, **details)
        self.required = required
        self.allowed = allowed


class ModelError(DivlatError):
    """The input model is internally inconsistent (detected mid-computation)."""

    code = "E_MODEL"
