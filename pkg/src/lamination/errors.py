"""Exception hierarchy.

Every error raised by the library derives from :class:`LaminationError`.
The pipeline tags errors with the name of the stage that raised them
(``err.stage``) before re-raising, so callers can report where a run stopped.
"""

from __future__ import annotations


class LaminationError(Exception):
    """Base class. ``stage`` is filled in by the pipeline."""

    stage: str | None = None

    def to_dict(self) -> dict:
        return {
            "error": type(self).__name__,
            "stage": self.stage,
            "message": str(self),
        }


# bratteli
class InvalidDiagram(LaminationError, ValueError):
    pass


class IndexBeyondFiniteDiagram(LaminationError, IndexError):
    pass


class NotUnimodular(LaminationError):
    pass


class NotErgodic(LaminationError):
    pass


class NoConvergence(LaminationError):
    pass


# surface
class InvalidSingularityData(LaminationError, ValueError):
    pass


class NonIntegerCycleLength(LaminationError, ValueError):
    pass


class IrreducibilityFailure(LaminationError):
    pass


# iet
class InvalidIET(LaminationError, ValueError):
    pass


class OutOfDomain(LaminationError, ValueError):
    pass


class OrbitHitsDiscontinuity(LaminationError):
    def __init__(self, message: str, iterate: int | None = None):
        super().__init__(message)
        self.iterate = iterate


class TieBreakUndefined(LaminationError):
    def __init__(self, message: str, step: int | None = None):
        super().__init__(message)
        self.step = step


class NotContracted(LaminationError):
    pass


# coding
class ThetaOnBoundary(LaminationError):
    def __init__(self, message: str, level: int | None = None):
        super().__init__(message)
        self.level = level


class OrderingUnavailable(LaminationError):
    def __init__(self, message: str, level: int | None = None):
        super().__init__(message)
        self.level = level


class WordTooShort(LaminationError, ValueError):
    pass


# pipeline
class RankMismatch(LaminationError):
    pass


class InvalidConfig(LaminationError, ValueError):
    pass


class SchemaError(LaminationError, ValueError):
    """Input document does not match its JSON schema."""
