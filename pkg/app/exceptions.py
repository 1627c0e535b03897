"""Shared exception hierarchy and CLI exit codes."""
from typing import Any, Optional


class LatticeToolError(Exception):
    """Base exception for the toolkit."""

    pass


class InputError(LatticeToolError):
    """Malformed user input (bad vertex data, wrong shape, wrong dimension)."""

    pass


class VerificationFailure(LatticeToolError):
    """A golden value or verification verdict did not match."""

    pass


class FalsificationError(VerificationFailure):
    """A theorem-level equivalence failed on a concrete polytope."""

    def __init__(self, message: str, witness: Optional[dict[str, Any]] = None):
        super().__init__(message)
        self.witness = witness or {}


class InternalConsistencyError(LatticeToolError):
    """A self-audit or certificate failed; indicates a bug, never bad input."""

    pass


EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3


def exit_code_for(exc: BaseException) -> int:
    """Map an exception to the CLI exit code."""
    if isinstance(exc, VerificationFailure):
        return EXIT_VERIFICATION
    if isinstance(exc, InputError):
        return EXIT_INPUT
    if isinstance(exc, InternalConsistencyError):
        return EXIT_INTERNAL
    return EXIT_INTERNAL
