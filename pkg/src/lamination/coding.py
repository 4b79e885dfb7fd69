"""Pre-code, code and symbolic geodesic of theta, plus finite-word diagnostics.

The code of theta is built from the induction trace alone. Each step ``k``
carries a substitution ``sigma_k`` sending a level-``k`` letter to its return
word over level ``k - 1`` letters, so the itinerary of the level-``n`` piece
containing ``T(theta) = 0`` is ``sigma_1 ... sigma_n`` applied to its label.
Between consecutive pre-code levels the code gains the tail of the return
word, flattened to base letters; the number of level ``j - 1`` letters added
there, plus the pre-code letter itself, is a column of the step matrix.
"""

from __future__ import annotations

import bisect
import threading
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterator, Mapping, Sequence

from .errors import OrderingUnavailable, ThetaOnBoundary, WordTooShort
from .iet import GUARD_BAND, InductionTrace, ThetaPoint, apply

# --- pre-code ---------------------------------------------------------------


@dataclass(frozen=True)
class PreCode:
    """``entries[j - 1] = (j, i_j)``.

    Level 1 is the original partition; level ``j >= 2`` is the window of
    trace level ``j - 1``, whose pieces are labelled like the induced IET.
    """

    entries: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for k, (level, _) in enumerate(self.entries, start=1):
            if level != k:
                raise ValueError("pre-code levels must run 1, 2, 3, ...")

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def symbols(self) -> tuple[int, ...]:
        return tuple(i for _, i in self.entries)


def _point_of(theta) -> tuple[Fraction, bool]:
    if isinstance(theta, ThetaPoint):
        return theta.exact, True
    return Fraction(theta), False


def pre_code(trace: InductionTrace, theta, depth: int, guard: float = GUARD_BAND) -> PreCode:
    """Index of the piece containing ``theta`` at each of ``depth`` levels.

    ``theta`` is a :class:`ThetaPoint` (its exact value is used) or a number.
    Pieces are half-open; a number within ``guard`` of a piece endpoint, other
    than exactly on a left endpoint, is ambiguous and raises
    :class:`ThetaOnBoundary`.
    """
    if depth <= 0:
        return PreCode(())
    trace = trace.extended(depth - 1)
    x, exact = _point_of(theta)
    entries = []
    base = trace.iet
    lab = base.label_at(x)
    _check_piece(base, lab, x, 1, guard, exact)
    entries.append((1, lab))
    y = apply(base, x)
    for n in range(1, depth):
        level = trace.level(n)
        if not 0 <= y < level.total:
            raise ThetaOnBoundary(f"theta is outside the window at level {n + 1}", level=n + 1)
        lab = level.label_at(y)
        _check_piece(level, lab, y, n + 1, guard, exact)
        entries.append((n + 1, lab))
    return PreCode(tuple(entries))


def _check_piece(iet, lab, x, level, guard, exact):
    if exact:
        return
    left = iet.top_starts[lab]
    right = left + iet.length(lab)
    if (0 < x - left < guard) or right - x < guard:
        raise ThetaOnBoundary(
            f"theta within {guard:g} of an endpoint of piece {lab} at level {level}",
            level=level,
        )


# --- code stream ------------------------------------------------------------


@dataclass(frozen=True)
class Insertion:
    level: int
    before: int
    after: int
    letters: tuple[int, ...]  # level (level - 1) letters, not yet flattened


def _window_labels(precode: PreCode, trace: InductionTrace) -> list[int]:
    return [trace.iet.top[0]] + list(precode.symbols[1:])


def insertions(precode: PreCode, trace: InductionTrace) -> list[Insertion]:
    """Return-word tails between consecutive window levels of the pre-code."""
    trace = trace.extended(max(len(precode) - 1, 0))
    labels = _window_labels(precode, trace)
    out = []
    for j in range(1, len(labels)):
        word = trace.steps[j - 1].sigma(labels[j])
        if word[0] != labels[j - 1]:
            raise OrderingUnavailable(
                f"return word {word} of level {j} does not start with {labels[j - 1]}",
                level=j,
            )
        out.append(Insertion(j, labels[j - 1], labels[j], word[1:]))
    return out


class CodeStream:
    """Lazily extendable code of theta over the letters ``1..r``.

    ``produce(n)`` deepens the induction as far as needed; every call returns
    a prefix of any longer call. The memo is guarded by a lock.
    """

    def __init__(self, trace: InductionTrace, first: int, determined_levels: int):
        self.alphabet_size = trace.iet.r
        self._trace = trace
        self._first = first
        self._seed = trace.iet.top[0]
        self._determined_levels = determined_levels
        self._memo: list[int] = []
        self._lock = threading.Lock()

    @property
    def trace(self) -> InductionTrace:
        return self._trace

    def _tail_length(self, n: int) -> int:
        p = self._trace.product(n)
        return sum(row[self._seed - 1] for row in p)

    def _levels_for(self, n: int) -> int:
        levels = 0
        while 1 + self._tail_length(levels) < n:
            if levels == len(self._trace.steps):
                self._trace = self._trace.extended(max(2 * levels, levels + 8))
            levels += 1
        return levels

    def _expand(self, levels: int, limit: int) -> list[int]:
        steps = self._trace.steps[:levels]
        losers: dict[int, list[int]] = {}
        for k, step in enumerate(steps, start=1):
            losers.setdefault(step.loser, []).append(k)
        out = [self._first]
        stack = [(levels, self._seed)]
        while stack and len(out) < limit:
            k, c = stack.pop()
            ks = losers.get(c, ())
            pos = bisect.bisect_right(ks, k) - 1
            if pos < 0:
                out.append(c)
                continue
            k = ks[pos]
            a, b = steps[k - 1].sigma(c)
            stack.append((k - 1, b))
            stack.append((k - 1, a))
        return out

    def produce(self, n: int) -> tuple[int, ...]:
        if n < 0:
            raise ValueError("n must be >= 0")
        with self._lock:
            if n > len(self._memo):
                self._memo = self._expand(self._levels_for(n), n)
            return tuple(self._memo[:n])

    def determined(self) -> tuple[int, ...]:
        """The part of the code fixed by the supplied pre-code levels alone."""
        if self._determined_levels <= 1:
            return (self._first,) if self._determined_levels == 1 else ()
        levels = self._determined_levels - 1
        with self._lock:
            self._trace = self._trace.extended(levels)
            return tuple(self._expand(levels, 1 + self._tail_length(levels)))

    def __iter__(self) -> Iterator[int]:
        n = 0
        chunk = 256
        while True:
            block = self.produce(n + chunk)
            yield from block[n:]
            n += chunk
            chunk *= 2


def expand_code(precode: PreCode, trace: InductionTrace) -> CodeStream:
    """The code ``S*`` of theta as a stream of base-level letters.

    The pre-code fixes the first letter and must agree with the trace's return
    words (checked through :func:`insertions`); the stream continues past the
    given levels by deepening the induction.
    """
    if len(precode) == 0:
        raise ValueError("empty pre-code has no code")
    trace = trace.extended(len(precode) - 1)
    insertions(precode, trace)
    return CodeStream(trace, precode.symbols[0], len(precode))


# --- labels -----------------------------------------------------------------


@dataclass(frozen=True)
class LabelAlphabet:
    labels: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))
        if len(set(self.labels)) != len(self.labels):
            raise ValueError(f"labels must be distinct: {self.labels}")

    @classmethod
    def for_surface(cls, genus: int, components: int, override: Sequence[str] | None = None):
        """``c_1 .. c_2g`` for the loops, ``h_1 .. h_{m-1}`` for the boundary arcs."""
        r = 2 * genus + components - 1
        if override is not None:
            if len(override) != r:
                raise ValueError(f"need {r} labels, got {len(override)}")
            return cls(tuple(override))
        return cls(
            tuple(f"c_{i}" for i in range(1, 2 * genus + 1))
            + tuple(f"h_{i}" for i in range(1, components))
        )

    def __len__(self) -> int:
        return len(self.labels)

    def __call__(self, index: int) -> str:
        return self.labels[index - 1]

    def render(self, word: Sequence[int]) -> str:
        """One character per symbol when every label is a single character."""
        names = [self(i) for i in word]
        if all(len(x) == 1 for x in self.labels):
            return "".join(names)
        return ",".join(names)


class LabeledSequence:
    def __init__(self, code: CodeStream, labels: LabelAlphabet):
        if len(labels) != code.alphabet_size:
            raise ValueError(f"{len(labels)} labels for an alphabet of size {code.alphabet_size}")
        self.code = code
        self.labels = labels

    def produce(self, n: int) -> tuple[str, ...]:
        return tuple(self.labels(i) for i in self.code.produce(n))

    def text(self, n: int) -> str:
        return self.labels.render(self.code.produce(n))


def symbolic_geodesic(code: CodeStream, labels: LabelAlphabet) -> LabeledSequence:
    return LabeledSequence(code, labels)


# --- rule-based insertion ---------------------------------------------------


def apply_insertion_rule(word: Sequence[Hashable], rule: Mapping[tuple, Sequence]) -> tuple:
    """Insert ``rule[(x, y)]`` between every adjacent pair ``x y`` of ``word``."""
    out = []
    for k, x in enumerate(word):
        if k:
            out.extend(rule.get((word[k - 1], x), ()))
        out.append(x)
    return tuple(out)


def first_divergence(word: Sequence, reference: Sequence) -> int | None:
    """0-based index of the first disagreement on the common length."""
    for k, (a, b) in enumerate(zip(word, reference)):
        if a != b:
            return k
    return None


# --- finite-word diagnostics ------------------------------------------------


def is_periodic_up_to(word: Sequence, max_period: int) -> int | None:
    """Smallest ``p <= max_period`` with ``word[i] == word[i + p]`` throughout."""
    if len(word) < 2 * max_period:
        raise WordTooShort(f"need length >= {2 * max_period}, got {len(word)}")
    n = len(word)
    for p in range(1, max_period + 1):
        if all(word[i] == word[i + p] for i in range(n - p)):
            return p
    return None


@dataclass(frozen=True)
class RecurrenceReport:
    n: int
    factors: int
    max_gap: int
    non_recurrent: tuple[tuple, ...]

    @property
    def recurrent(self) -> bool:
        return not self.non_recurrent


def recurrence_check(word: Sequence, n: int) -> RecurrenceReport:
    """Gaps between occurrences of the length-``n`` factors seen in the first half.

    A factor counts as recurrent at this scale when it occurs again at or
    after the midpoint; ``max_gap`` is the largest distance between
    consecutive occurrences of any first-half factor.
    """
    if n < 1 or len(word) < 3 * n:
        raise WordTooShort(f"need length >= {3 * n}, got {len(word)}")
    w = tuple(word)
    half = len(w) // 2
    occurrences: dict[tuple, list[int]] = {}
    for i in range(len(w) - n + 1):
        occurrences.setdefault(w[i : i + n], []).append(i)
    firsts = {w[i : i + n] for i in range(min(half, len(w) - n + 1))}
    max_gap = 0
    lonely = []
    for f in sorted(firsts, key=lambda f: occurrences[f][0]):
        pos = occurrences[f]
        if pos[-1] < half:
            lonely.append(f)
        max_gap = max([max_gap] + [b - a for a, b in zip(pos, pos[1:])])
    return RecurrenceReport(n, len(firsts), max_gap, tuple(lonely))


def factor_complexity(word: Sequence, n: int) -> int:
    """Number of distinct length-``n`` factors."""
    if len(word) < 2 * n:
        raise WordTooShort(f"need length >= {2 * n}, got {len(word)}")
    w = tuple(word)
    return len({w[i : i + n] for i in range(len(w) - n + 1)})


def letter_frequencies(word: Sequence, alphabet: Sequence | None = None) -> tuple[Fraction, ...]:
    """Exact letter frequencies in the order of ``alphabet`` (sorted letters by default)."""
    if not word:
        raise WordTooShort("empty word")
    counts = Counter(word)
    if alphabet is None:
        alphabet = sorted(counts)
    return tuple(Fraction(counts.get(a, 0), len(word)) for a in alphabet)
