"""Exception hierarchy for domain failures (as opposed to usage errors)."""

from __future__ import annotations


class DcnError(Exception):
    """Base class for every domain error raised by this package."""


class SingularDcn(DcnError):
    """The primal part is (numerically) zero, so there is no inverse."""


class DegenerateBlend(DcnError):
    """The weighted sum in a blend has vanishing norm.

    Carries ``vertex`` when the blend was evaluated per mesh vertex.
    """

    def __init__(self, message: str, vertex: int | None = None):
        super().__init__(message)
        self.vertex = vertex


class LogSingular(DcnError):
    """No principal logarithm: a half-turn composed with a translation."""


class NotRigid(DcnError):
    """A matrix claimed to be rigid fails the orthogonality/determinant check."""
