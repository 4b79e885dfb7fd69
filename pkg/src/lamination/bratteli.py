"""Bratteli diagrams given by their incidence matrices.

A diagram is an eventually periodic sequence ``M_1, M_2, ...`` of square
nonnegative integer matrices of a fixed rank: a finite ``prefix`` followed by
an optional ``period`` repeated forever.
"""

from __future__ import annotations

import enum
import hashlib
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import IndexBeyondFiniteDiagram, InvalidDiagram, NoConvergence, NotErgodic
from .matrices import (
    Matrix,
    as_matrix,
    bool_matmul,
    column,
    determinant,
    hilbert_distance,
    identity,
    is_positive,
    is_primitive,
    matmul,
    matvec,
    pattern,
)

DEFAULT_DEPTH = 256
DEFAULT_TOL = 1e-12

# pattern-cycle search gives up after this many levels
_PATTERN_SEARCH_LIMIT = 4096


@dataclass(frozen=True)
class BratteliDiagram:
    rank: int
    prefix: tuple[Matrix, ...] = ()
    period: tuple[Matrix, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(as_matrix(m) for m in self.prefix))
        if self.period is not None:
            object.__setattr__(self, "period", tuple(as_matrix(m) for m in self.period))
            if not self.period:
                raise InvalidDiagram("period must be nonempty when given")
        if not isinstance(self.rank, int) or self.rank < 2:
            raise InvalidDiagram(f"rank must be an integer >= 2, got {self.rank!r}")
        if not self.prefix and not self.period:
            raise InvalidDiagram("diagram needs at least one matrix")
        for n, m in enumerate(self.prefix + (self.period or ()), start=1):
            if len(m) != self.rank or any(len(row) != self.rank for row in m):
                raise InvalidDiagram(f"matrix {n} is not {self.rank}x{self.rank}")
            if any(v < 0 for row in m for v in row):
                raise InvalidDiagram(f"matrix {n} has a negative entry")

    @classmethod
    def stationary(cls, matrix: Sequence[Sequence[int]]) -> "BratteliDiagram":
        m = as_matrix(matrix)
        return cls(rank=len(m), period=(m,))

    @classmethod
    def from_dict(cls, data: dict) -> "BratteliDiagram":
        return cls(
            rank=data["rank"],
            prefix=tuple(data.get("prefix", ())),
            period=tuple(data["period"]) if data.get("period") is not None else None,
        )

    def to_dict(self) -> dict:
        out = {"rank": self.rank, "prefix": [[list(r) for r in m] for m in self.prefix]}
        if self.period is not None:
            out["period"] = [[list(r) for r in m] for m in self.period]
        return out

    def digest(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    @property
    def is_finite(self) -> bool:
        return self.period is None

    def levels_available(self, depth: int) -> int:
        """Number of matrices usable up to ``depth``."""
        return depth if self.period is not None else min(depth, len(self.prefix))

    def matrix_at(self, n: int) -> Matrix:
        return matrix_at(self, n)


def matrix_at(diagram: BratteliDiagram, n: int) -> Matrix:
    """The ``n``-th incidence matrix, counting from 1."""
    if n < 1:
        raise ValueError(f"level must be >= 1, got {n}")
    k = len(diagram.prefix)
    if n <= k:
        return diagram.prefix[n - 1]
    if diagram.period is None:
        raise IndexBeyondFiniteDiagram(f"level {n} beyond finite diagram of length {k}")
    return diagram.period[(n - k - 1) % len(diagram.period)]


@dataclass(frozen=True)
class UnimodularLevel:
    level: int
    det: int

    @property
    def passed(self) -> bool:
        return abs(self.det) == 1


@dataclass(frozen=True)
class UnimodularReport:
    levels: tuple[UnimodularLevel, ...]

    @property
    def passed(self) -> bool:
        return all(lv.passed for lv in self.levels)

    @property
    def failures(self) -> tuple[UnimodularLevel, ...]:
        return tuple(lv for lv in self.levels if not lv.passed)


def check_unimodular(diagram: BratteliDiagram, depth: int = DEFAULT_DEPTH) -> UnimodularReport:
    """Determinant of every distinct level.

    For a periodic diagram the prefix and one period cover every level, so
    ``depth`` only limits finite diagrams.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if diagram.period is not None:
        count = len(diagram.prefix) + len(diagram.period)
    else:
        count = min(depth, len(diagram.prefix))
    return UnimodularReport(
        tuple(UnimodularLevel(n, determinant(matrix_at(diagram, n))) for n in range(1, count + 1))
    )


def partial_products(diagram: BratteliDiagram, n: int):
    """Yield ``M_1``, ``M_1 M_2``, ..., ``M_1 ... M_n``."""
    p = identity(diagram.rank)
    for k in range(1, n + 1):
        p = matmul(p, matrix_at(diagram, k))
        yield p


def partial_product(diagram: BratteliDiagram, n: int) -> Matrix:
    if n < 1:
        raise ValueError("n must be >= 1")
    for p in partial_products(diagram, n):
        pass
    return p


def period_product(diagram: BratteliDiagram) -> Matrix | None:
    if diagram.period is None:
        return None
    p = identity(diagram.rank)
    for m in diagram.period:
        p = matmul(p, m)
    return p


def cone_diameter(p: Matrix) -> float:
    """Hilbert-metric diameter of the cone spanned by the columns of ``p``."""
    r = len(p)
    cols = [column(p, j) for j in range(r)]
    return max(
        (hilbert_distance(cols[i], cols[j]) for i in range(r) for j in range(i + 1, r)),
        default=0.0,
    )


def cone_diameters(diagram: BratteliDiagram, depth: int) -> list[float]:
    n = diagram.levels_available(depth)
    return [cone_diameter(p) for p in partial_products(diagram, n)]


class Ergodicity(enum.Enum):
    STRICTLY_ERGODIC = "StrictlyErgodic"
    NOT_CONTRACTING = "NotContracting"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class ErgodicityReport:
    verdict: Ergodicity
    reason: str
    depth_used: int
    diameter: float | None = None

    @property
    def strictly_ergodic(self) -> bool:
        return self.verdict is Ergodicity.STRICTLY_ERGODIC


def _positive_pattern_unreachable(diagram: BratteliDiagram) -> bool:
    """True if no partial product is ever strictly positive.

    Boolean patterns of the partial products form an eventually periodic
    sequence once the period is entered; we walk it to its first repeat.
    """
    p = pattern(identity(diagram.rank))
    for m in diagram.prefix:
        p = bool_matmul(p, pattern(m))
        if is_positive(p):
            return False
    period = [pattern(m) for m in diagram.period]
    seen = set()
    phase = 0
    for _ in range(_PATTERN_SEARCH_LIMIT):
        p = bool_matmul(p, period[phase])
        phase = (phase + 1) % len(period)
        if is_positive(p):
            return False
        if (p, phase) in seen:
            return True
        seen.add((p, phase))
    return False


def is_strictly_ergodic(
    diagram: BratteliDiagram, depth: int = DEFAULT_DEPTH, tol: float = DEFAULT_TOL
) -> ErgodicityReport:
    """Decide whether the cone images ``M_1...M_n(R^r_+)`` shrink to one positive ray.

    Periodic diagrams are settled exactly when possible: a partial-product
    pattern that can never become positive means the images never contract to
    an interior ray, and a primitive period product means they do. Otherwise
    the Hilbert diameter of each image is compared with ``tol``.
    """
    if depth < 1 or tol <= 0:
        raise ValueError("depth must be >= 1 and tol > 0")
    if diagram.period is not None:
        if _positive_pattern_unreachable(diagram):
            return ErgodicityReport(
                Ergodicity.NOT_CONTRACTING,
                "no partial product is ever strictly positive; the cone images keep a face forever",
                0,
                math.inf,
            )
        if is_primitive(period_product(diagram)):
            return ErgodicityReport(
                Ergodicity.STRICTLY_ERGODIC, "period product is primitive", 0, None
            )
    n_max = diagram.levels_available(depth)
    diameter = math.inf
    for n, p in enumerate(partial_products(diagram, n_max), start=1):
        diameter = cone_diameter(p)
        if diameter < tol:
            return ErgodicityReport(
                Ergodicity.STRICTLY_ERGODIC, f"cone diameter below {tol:g} at level {n}", n, diameter
            )
    return ErgodicityReport(
        Ergodicity.INCONCLUSIVE,
        f"cone diameter {diameter:.3g} not below {tol:g} within {n_max} levels",
        n_max,
        diameter,
    )


@dataclass(frozen=True)
class StateVector:
    """Normalized positive direction of the limit ray.

    ``lam`` holds floats; ``exact`` is the rational direction of the deepest
    partial product computed, which is far sharper than ``tolerance_used`` and
    seeds exact interval-exchange arithmetic downstream.
    """

    lam: tuple[float, ...]
    exact: tuple[Fraction, ...] = field(repr=False)
    tolerance_used: float
    depth_used: int

    def __len__(self):
        return len(self.lam)

    def __getitem__(self, i):
        return self.lam[i]


def _direction(p: Matrix) -> tuple[Fraction, ...]:
    v = matvec(p, (1,) * len(p))
    total = sum(v)
    return tuple(Fraction(x, total) for x in v)


def state_vector(
    diagram: BratteliDiagram, depth: int = DEFAULT_DEPTH, tol: float = DEFAULT_TOL
) -> StateVector:
    """Normalized image of the all-ones vector under ``M_1...M_n`` as ``n`` grows.

    Iterates until successive directions differ by less than ``tol`` in max
    norm; the level where this happens is ``depth_used``.
    """
    verdict = is_strictly_ergodic(diagram, depth, tol)
    if not verdict.strictly_ergodic:
        raise NotErgodic(f"diagram is not strictly ergodic ({verdict.verdict.value}: {verdict.reason})")
    n_max = diagram.levels_available(depth)
    prev = None
    converged_at = None
    last = None
    for n, p in enumerate(partial_products(diagram, n_max), start=1):
        last = _direction(p)
        if converged_at is None and prev is not None:
            if max(abs(float(a - b)) for a, b in zip(last, prev)) < tol:
                converged_at = n
        prev = last
    if converged_at is None:
        raise NoConvergence(f"direction did not settle to {tol:g} within {n_max} levels")
    if any(x <= 0 for x in last):
        raise NotErgodic("limit direction is not strictly positive")
    return StateVector(tuple(float(x) for x in last), last, tol, converged_at)
