"""Interval exchange transformations and right Rauzy-Veech induction.

An IET is stored in labelled form: ``top`` is the left-to-right order of the
intervals in the domain, ``bottom`` their order after the exchange, and
``lengths[label - 1]`` the length of each interval. Lengths are kept as exact
rationals so induction steps are decided by exact comparisons; floats passed
in are converted exactly.

Orientation convention (used everywhere): a step replaces lengths ``lam`` by
``lam'`` with ``lam = M lam'``, and ``M[i][j]`` counts the visits of the
level-``n`` interval ``j`` to the level-``n-1`` interval ``i`` before it
returns. Column ``j`` of ``M`` is therefore the letter count of the return
word ``sigma(j)``.
"""

from __future__ import annotations

import bisect
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .errors import (
    InvalidIET,
    NotContracted,
    OrbitHitsDiscontinuity,
    OutOfDomain,
    TieBreakUndefined,
)
from .matrices import Matrix, determinant, identity, matmul, matvec
from .surface import Permutation

log = logging.getLogger(__name__)

GUARD_BAND = 1e-13
TIE_TOL = 1e-12
CONTRACTION_THRESHOLD = 1e-9

ORIENTATION = "lam = M lam'; M[i][j] = occurrences of letter i in the return word of j"


def _exact(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class IET:
    lengths: tuple[Fraction, ...]
    top: tuple[int, ...]
    bottom: tuple[int, ...]

    def __post_init__(self):
        lengths = tuple(_exact(x) for x in self.lengths)
        r = len(lengths)
        labels = list(range(1, r + 1))
        if r < 2:
            raise InvalidIET("an IET needs at least two intervals")
        if any(x <= 0 for x in lengths):
            raise InvalidIET(f"lengths must be positive: {[float(x) for x in lengths]}")
        if sorted(self.top) != labels or sorted(self.bottom) != labels:
            raise InvalidIET("top and bottom must both order the labels 1..r")
        object.__setattr__(self, "lengths", lengths)
        object.__setattr__(self, "top", tuple(self.top))
        object.__setattr__(self, "bottom", tuple(self.bottom))
        if not self.permutation.is_irreducible():
            raise InvalidIET(f"permutation {self.permutation.one_line()} is reducible")

    def __repr__(self) -> str:
        lengths = ", ".join(f"{float(x):.6g}" for x in self.lengths)
        return f"IET(lengths~({lengths}), top={self.top}, bottom={self.bottom})"

    @classmethod
    def from_permutation(cls, lengths: Sequence, pi: Permutation | Sequence[int]) -> "IET":
        """Interval ``i`` is moved to position ``pi(i)``."""
        if not isinstance(pi, Permutation):
            pi = Permutation(tuple(pi))
        r = pi.size
        if len(lengths) != r:
            raise InvalidIET(f"{len(lengths)} lengths for a permutation of {r} symbols")
        bottom = [0] * r
        for i in range(1, r + 1):
            bottom[pi(i) - 1] = i
        return cls(tuple(lengths), tuple(range(1, r + 1)), tuple(bottom))

    @property
    def r(self) -> int:
        return len(self.lengths)

    @cached_property
    def total(self) -> Fraction:
        return sum(self.lengths, Fraction(0))

    def length(self, label: int) -> Fraction:
        return self.lengths[label - 1]

    @cached_property
    def permutation(self) -> Permutation:
        """Top position -> bottom position."""
        where = {lab: k for k, lab in enumerate(self.bottom, start=1)}
        return Permutation(tuple(where[lab] for lab in self.top))

    @cached_property
    def top_starts(self) -> dict[int, Fraction]:
        return _starts(self.top, self.lengths)

    @cached_property
    def bottom_starts(self) -> dict[int, Fraction]:
        return _starts(self.bottom, self.lengths)

    @cached_property
    def _float_table(self):
        lefts = [float(self.top_starts[lab]) for lab in self.top]
        shifts = [float(self.bottom_starts[lab] - self.top_starts[lab]) for lab in self.top]
        return lefts, shifts

    @cached_property
    def _exact_lefts(self) -> list[Fraction]:
        return [self.top_starts[lab] for lab in self.top]

    @property
    def discontinuities(self) -> tuple[Fraction, ...]:
        """Interior endpoints of the domain partition."""
        return tuple(self._exact_lefts[1:])

    def label_at(self, x) -> int:
        """Label of the domain interval containing ``x`` (half-open intervals)."""
        if not 0 <= x < self.total:
            raise OutOfDomain(f"{float(x)!r} outside [0, {float(self.total)!r})")
        lefts = self._exact_lefts if isinstance(x, (Fraction, int)) else self._float_table[0]
        return self.top[bisect.bisect_right(lefts, x) - 1]

    def __call__(self, x):
        return apply(self, x)

    def to_dict(self) -> dict:
        return {
            "lengths": [float(x) for x in self.lengths],
            "top": list(self.top),
            "bottom": list(self.bottom),
        }


def _starts(order, lengths) -> dict[int, Fraction]:
    out = {}
    acc = Fraction(0)
    for lab in order:
        out[lab] = acc
        acc += lengths[lab - 1]
    return out


def apply(iet: IET, x):
    """Image of ``x``; exact for rationals, floating-point for floats."""
    lab = iet.label_at(x)
    if isinstance(x, (Fraction, int)):
        return x - iet.top_starts[lab] + iet.bottom_starts[lab]
    k = iet.top.index(lab)
    return x + iet._float_table[1][k]


def natural_coding(iet: IET, x: float, n: int, guard: float = GUARD_BAND) -> tuple[int, ...]:
    """Labels of the intervals visited by ``x, T x, ..., T^{n-1} x``."""
    if n <= 0:
        return ()
    x = float(x)
    total = float(iet.total)
    if not 0 <= x < total:
        raise OutOfDomain(f"{x!r} outside [0, {total!r})")
    lefts, shifts = iet._float_table
    cuts = lefts[1:]
    top = iet.top
    out = []
    for t in range(n):
        k = bisect.bisect_right(lefts, x) - 1
        j = bisect.bisect_left(cuts, x)
        near = min(
            (abs(x - cuts[i]) for i in (j - 1, j) if 0 <= i < len(cuts)), default=math.inf
        )
        if near < guard:
            raise OrbitHitsDiscontinuity(
                f"iterate {t} lies within {guard:g} of a discontinuity", iterate=t
            )
        out.append(top[k])
        x = x + shifts[k]
        if x < 0:
            x = 0.0
        elif x >= total:
            x = math.nextafter(total, 0.0)
    return tuple(out)


@dataclass(frozen=True)
class AdmissibleInterval:
    xi: Fraction
    eta: Fraction

    def __post_init__(self):
        if not self.xi < self.eta:
            raise ValueError("empty interval")

    @property
    def length(self) -> Fraction:
        return self.eta - self.xi

    def __contains__(self, x) -> bool:
        return self.xi <= x < self.eta

    def contains_interval(self, other: "AdmissibleInterval") -> bool:
        return self.xi <= other.xi and other.eta <= self.eta

    def to_dict(self, digits: int = 17) -> dict:
        return {"xi": f"{float(self.xi):.{digits}g}", "eta": f"{float(self.eta):.{digits}g}"}


@dataclass(frozen=True)
class InductionStep:
    """One right Rauzy-Veech step.

    ``winner`` is the longer of the two last intervals (``side`` says whether
    it was last in the domain or in the image); ``loser`` is cut away and its
    return word becomes ``substitution[loser]``.
    """

    gamma: AdmissibleInterval
    matrix: Matrix
    induced: IET
    side: str
    winner: int
    loser: int
    substitution: tuple[tuple[int, ...], ...] = field(repr=False)

    def sigma(self, label: int) -> tuple[int, ...]:
        return self.substitution[label - 1]


def rauzy_step(iet: IET, tie_tol: float = TIE_TOL) -> InductionStep:
    """Induce on ``[0, |lam| - min(last top, last bottom))``."""
    a_top, a_bot = iet.top[-1], iet.bottom[-1]
    lt, lb = iet.length(a_top), iet.length(a_bot)
    if abs(lt - lb) <= tie_tol * max(lt, lb):
        raise TieBreakUndefined(
            f"last intervals {a_top} and {a_bot} have equal length {float(lt)!r}"
        )
    r = iet.r
    lengths = list(iet.lengths)
    m = [list(row) for row in identity(r)]
    subs = [(lab,) for lab in range(1, r + 1)]
    if lt > lb:
        side, winner, loser = "top", a_top, a_bot
        lengths[a_top - 1] = lt - lb
        bottom = list(iet.bottom[:-1])
        bottom.insert(bottom.index(a_top) + 1, a_bot)
        top = list(iet.top)
        subs[a_bot - 1] = (a_bot, a_top)
    else:
        side, winner, loser = "bottom", a_bot, a_top
        lengths[a_bot - 1] = lb - lt
        top = list(iet.top[:-1])
        top.insert(top.index(a_bot) + 1, a_top)
        bottom = list(iet.bottom)
        subs[a_top - 1] = (a_bot, a_top)
    m[winner - 1][loser - 1] += 1
    induced = IET(tuple(lengths), tuple(top), tuple(bottom))
    return InductionStep(
        gamma=AdmissibleInterval(Fraction(0), induced.total),
        matrix=tuple(tuple(row) for row in m),
        induced=induced,
        side=side,
        winner=winner,
        loser=loser,
        substitution=tuple(subs),
    )


@dataclass(frozen=True)
class InductionTrace:
    """Steps of right induction together with the windows around theta.

    Right induction shrinks ``[0, L_n)`` to the left endpoint. Those intervals
    are transported by the inverse exchange: ``T^-1 [0, L_n)`` is again a
    first-return domain (its induced map is conjugate to the level-``n`` one
    through ``T``) and contains ``theta = T^-1(0)``, the left endpoint of the
    interval that ``T`` moves to the front. Once ``L_n`` is at most the length
    of that interval the window is the interval ``[theta, theta + L_n)``.
    """

    iet: IET
    steps: tuple[InductionStep, ...]
    products: tuple[Matrix, ...] = field(repr=False)

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def front_label(self) -> int:
        """The interval ``T`` moves to the front; ``theta`` is its left end."""
        return self.iet.bottom[0]

    @property
    def theta(self) -> Fraction:
        return self.iet.top_starts[self.front_label]

    def level(self, n: int) -> IET:
        return self.iet if n == 0 else self.steps[n - 1].induced

    def window(self, n: int) -> AdmissibleInterval | None:
        """``T^-1`` of the level-``n`` interval, when that is an interval."""
        size = self.level(n).total
        if size > self.iet.length(self.front_label):
            return None
        return AdmissibleInterval(self.theta, self.theta + size)

    def product(self, n: int) -> Matrix:
        return identity(self.iet.r) if n == 0 else self.products[n - 1]

    def telescoping_error(self, n: int) -> float:
        """Max-norm of ``lam - P_n lam^(n)``."""
        lam_n = self.level(n).lengths
        back = matvec(self.product(n), lam_n)
        return max(abs(float(a - b)) for a, b in zip(self.iet.lengths, back))

    def contraction_constant(self) -> float:
        """Smallest ``c`` with ``|G_n| <= |G_1| 2^(-(n-1)/c)`` on this trace."""
        if len(self.steps) < 2:
            return math.inf
        first = self.steps[0].gamma.length
        worst = 0.0
        for n, step in enumerate(self.steps[1:], start=2):
            worst = max(worst, (n - 1) / math.log2(first / step.gamma.length))
        return worst

    def extended(self, n: int, tie_tol: float = TIE_TOL) -> "InductionTrace":
        """This trace deepened to ``n`` steps (returns ``self`` if already deep enough)."""
        if n <= len(self.steps):
            return self
        steps = list(self.steps)
        products = list(self.products)
        current = self.level(len(steps))
        p = self.product(len(steps))
        for k in range(len(steps) + 1, n + 1):
            try:
                step = rauzy_step(current, tie_tol)
            except TieBreakUndefined as exc:
                exc.step = k
                raise TieBreakUndefined(f"step {k}: {exc}", step=k) from exc
            p = matmul(p, step.matrix)
            if matvec(p, step.induced.lengths) != self.iet.lengths:
                raise AssertionError(f"telescoping identity broken at step {k}")
            steps.append(step)
            products.append(p)
            current = step.induced
        return InductionTrace(self.iet, tuple(steps), tuple(products))


def induce(iet: IET, n: int, tie_tol: float = TIE_TOL) -> InductionTrace:
    """``n`` right Rauzy-Veech steps with telescoped products ``P_k = M_1 ... M_k``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return InductionTrace(iet, (), ()).extended(n, tie_tol)


@dataclass(frozen=True)
class ThetaPoint:
    """Limit point of the windows with an explicit error radius."""

    value: float
    radius: float
    exact: Fraction = field(repr=False)
    window: AdmissibleInterval = field(repr=False)

    def __float__(self) -> float:
        return self.value

    def contains(self, x: float) -> bool:
        return abs(x - self.value) <= self.radius


def theta_point(trace: InductionTrace, threshold: float = CONTRACTION_THRESHOLD) -> ThetaPoint:
    """Midpoint of the last window; the radius covers the whole window plus rounding."""
    if len(trace.steps) < 2:
        raise NotContracted(f"need at least 2 induction steps, have {len(trace.steps)}")
    window = trace.window(len(trace.steps))
    if window is None or window.length >= threshold:
        size = float(trace.level(len(trace.steps)).total)
        raise NotContracted(f"last window has size {size:.3g}, not below {threshold:g}")
    mid = (window.xi + window.eta) / 2
    value = float(mid)
    radius = float(window.length / 2) + 4 * math.ulp(value)
    return ThetaPoint(value, radius, trace.theta, window)


@dataclass(frozen=True)
class KeaneVerdict:
    generic: bool
    collision: tuple | None = None  # ((i, a), (j, b)): T^a(beta_i) ~ T^b(beta_j)
    iterate: int | None = None

    @property
    def label(self) -> str:
        return "GenericLikely" if self.generic else "DegenerateDetected"


def keane_probe(iet: IET, depth: int = 1000, tol: float = 1e-10) -> KeaneVerdict:
    """Look for coincidences among forward orbits of the discontinuities.

    Orbit points are added one iterate at a time; the first point landing
    within ``tol`` of an earlier one is reported.
    """
    lefts, shifts = iet._float_table
    total = float(iet.total)
    points: list[float] = []
    tags: list[tuple[int, int]] = []
    current = [float(b) for b in iet.discontinuities]
    for a in range(depth + 1):
        for i, x in enumerate(current, start=1):
            pos = bisect.bisect_left(points, x)
            for q in (pos - 1, pos):
                if 0 <= q < len(points) and abs(points[q] - x) < tol:
                    return KeaneVerdict(False, (tags[q], (i, a)), a)
            points.insert(pos, x)
            tags.insert(pos, (i, a))
        nxt = []
        for x in current:
            k = bisect.bisect_right(lefts, x) - 1
            y = x + shifts[k]
            nxt.append(min(max(y, 0.0), math.nextafter(total, 0.0)))
        current = nxt
    return KeaneVerdict(True)


def unimodular_steps(trace: InductionTrace) -> bool:
    return all(abs(determinant(s.matrix)) == 1 for s in trace.steps) and all(
        abs(determinant(p)) == 1 for p in trace.products
    )
