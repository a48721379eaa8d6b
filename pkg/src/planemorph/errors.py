"""Exception types shared across the package."""

from __future__ import annotations


class PlanemorphError(Exception):
    """Base class for all package errors."""


class DegenerateInputError(PlanemorphError):
    """Input is degenerate (repeated points, zero direction, ...)."""


class EmbeddingMismatchError(PlanemorphError):
    """Two drawings do not share the same plane graph / embedding."""


class ContractNotSafeError(PlanemorphError):
    """Requested contraction violates the contractibility precondition."""


class AuditRequiresVerifiedMorphError(PlanemorphError):
    """Rotation audits are only sound on morphs whose steps are verified."""


class ParseError(PlanemorphError):
    """A drawing or trace file could not be parsed."""


class InternalInvariantViolation(PlanemorphError):
    """A property guaranteed by the underlying theory failed at runtime.

    Carries an optional payload of offending objects so callers (notably the
    CLI) can dump the instance for later analysis.
    """

    def __init__(self, message: str, payload: object = None):
        super().__init__(message)
        self.payload = payload
