"""Singularity data, surface invariants and the permutation they determine.

A singularity data ``(k_1, ..., k_m)`` lists the types of the ideal polygons
tiling the complement of a lamination; an ideal ``n``-gon has type
``(n - 2) / 2`` and the types sum to ``2g - 2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InvalidSingularityData, IrreducibilityFailure, NonIntegerCycleLength


def _as_type(k) -> Fraction:
    try:
        value = Fraction(str(k)) if isinstance(k, float) else Fraction(k)
    except (TypeError, ValueError) as exc:
        raise InvalidSingularityData(f"not a number: {k!r}") from exc
    if value.denominator not in (1, 2):
        raise InvalidSingularityData(f"type {k!r} is neither an integer nor a half-integer")
    if value < 0:
        raise InvalidSingularityData(f"type {k!r} is negative")
    return value


@dataclass(frozen=True)
class SingularityData:
    ks: tuple[Fraction, ...]

    def __post_init__(self):
        ks = tuple(_as_type(k) for k in self.ks)
        if not ks:
            raise InvalidSingularityData("singularity data must be nonempty")
        object.__setattr__(self, "ks", ks)

    @classmethod
    def of(cls, *ks) -> "SingularityData":
        return cls(tuple(ks))

    @property
    def m(self) -> int:
        return len(self.ks)

    @property
    def total(self) -> Fraction:
        return sum(self.ks, Fraction(0))

    def to_json(self) -> list:
        return [int(k) if k.denominator == 1 else float(k) for k in self.ks]


@dataclass(frozen=True)
class SurfaceInvariants:
    genus: int
    components: int
    intervals: int

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus

    @property
    def total_area_multiple(self) -> int:
        """Total hyperbolic area of the principal region in units of pi."""
        return 4 * self.genus - 4


def genus_of(delta: SingularityData) -> int:
    g = (delta.total + 2) / 2
    if g.denominator != 1 or g < 1:
        raise InvalidSingularityData(
            f"sum of types {delta.total} is not 2g - 2 for a positive integer g"
        )
    return int(g)


def surface_invariants(delta: SingularityData) -> SurfaceInvariants:
    g = genus_of(delta)
    m = delta.m
    r = 2 * g + m - 1
    assert r - 2 * g + 1 == m
    return SurfaceInvariants(genus=g, components=m, intervals=r)


def polygon_sides(k) -> int:
    """Number of sides of an ideal polygon of type ``k``."""
    n = 2 * Fraction(k) + 2
    if n.denominator != 1 or n < 1:
        raise InvalidSingularityData(f"type {k!r} does not correspond to a polygon")
    return int(n)


@dataclass(frozen=True)
class AreaCheck:
    passed: bool
    polygon_sides: tuple[int, ...]
    defect_sum: int  # sum of (n_i - 2), the area in units of pi
    genus: int | None
    expected: int | None

    @property
    def detail(self) -> str:
        if self.expected is None:
            return f"sum (n_i - 2) = {self.defect_sum} is not 4g - 4 for any g >= 1"
        rel = "=" if self.passed else "!="
        return f"sum (n_i - 2) = {self.defect_sum} {rel} 4g - 4 = {self.expected} (g = {self.genus})"


def check_area(delta: SingularityData, genus: int | None = None) -> AreaCheck:
    """Compare the total polygon area with ``(4g - 4) pi``.

    Works from polygon side counts rather than the type sum, so it is an
    independent route to the same condition as :func:`genus_of`. With no
    ``genus`` the check asks whether some ``g >= 1`` fits.
    """
    sides = tuple(polygon_sides(k) for k in delta.ks)
    defect = sum(n - 2 for n in sides)
    if genus is None:
        if defect >= 0 and defect % 4 == 0:
            genus = defect // 4 + 1
        else:
            return AreaCheck(False, sides, defect, None, None)
    expected = 4 * genus - 4
    return AreaCheck(genus >= 1 and defect == expected, sides, defect, genus, expected)


@dataclass(frozen=True)
class Permutation:
    """Permutation of ``1..r`` in one-line notation: ``images[i - 1] = pi(i)``."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(v) for v in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {images}")
        object.__setattr__(self, "images", images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __len__(self) -> int:
        return len(self.images)

    @property
    def size(self) -> int:
        return len(self.images)

    def inverse(self) -> "Permutation":
        inv = [0] * self.size
        for i, v in enumerate(self.images, start=1):
            inv[v - 1] = i
        return Permutation(tuple(inv))

    def conjugate(self, sigma: "Permutation") -> "Permutation":
        """``sigma o self o sigma^-1``: relabels every symbol ``i`` as ``sigma(i)``."""
        out = [0] * self.size
        for i, v in enumerate(self.images, start=1):
            out[sigma(i) - 1] = sigma(v)
        return Permutation(tuple(out))

    def is_irreducible(self) -> bool:
        seen_max = 0
        for j, v in enumerate(self.images[:-1], start=1):
            seen_max = max(seen_max, v)
            if seen_max == j:
                return False
        return True

    def cycles(self) -> list[tuple[int, ...]]:
        return cycle_decomposition(self)

    def one_line(self) -> str:
        return " ".join(map(str, self.images))


def cycle_decomposition(pi: Permutation) -> list[tuple[int, ...]]:
    """Disjoint cycles, each starting at its smallest element, ordered by it."""
    seen = set()
    out = []
    for start in range(1, pi.size + 1):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        j = pi(start)
        while j != start:
            cyc.append(j)
            seen.add(j)
            j = pi(j)
        out.append(tuple(cyc))
    return out


def cycle_lengths(delta: SingularityData) -> tuple[int, ...]:
    """``k_i + 1`` for all but the last type, ``k_m + 2`` for the last."""
    lengths = []
    for i, k in enumerate(delta.ks):
        ell = k + (2 if i == delta.m - 1 else 1)
        if ell.denominator != 1 or ell < 1:
            raise NonIntegerCycleLength(f"type {k} gives cycle length {ell}, not a positive integer")
        lengths.append(int(ell))
    return tuple(lengths)


def _transposition(r: int, a: int, b: int) -> Permutation:
    images = list(range(1, r + 1))
    images[a - 1], images[b - 1] = b, a
    return Permutation(tuple(images))


def _cycle_of(pi: Permutation, x: int) -> tuple[int, ...]:
    return next(c for c in pi.cycles() if x in c)


def assemble_permutation(lengths: Sequence[int]) -> Permutation:
    """Blocks of consecutive symbols, each cyclically shifted, then reversed.

    The order-reversing conjugation leaves a single cycle irreducible. With
    several blocks every block stays invariant, so the result is repaired:
    symbols are swapped (a conjugation, which keeps the cycle type) until 1
    and ``r`` share a cycle, which forces irreducibility. At most two swaps
    are needed.
    """
    r = sum(lengths)
    images = []
    start = 1
    for ell in lengths:
        block = list(range(start, start + ell))
        images.extend(block[1:] + block[:1])
        start += ell
    pi = Permutation(tuple(images))
    reverse = Permutation(tuple(range(r, 0, -1)))
    pi = pi.conjugate(reverse)
    if pi.is_irreducible() or r < 2:
        return pi
    if len(_cycle_of(pi, 1)) == 1:
        movers = [c[0] for c in pi.cycles() if len(c) > 1]
        if not movers:
            raise IrreducibilityFailure("the identity permutation is never irreducible")
        donor = min(movers)
        pi = pi.conjugate(_transposition(r, 1, donor))
    cyc = _cycle_of(pi, 1)
    if r not in cyc:
        pi = pi.conjugate(_transposition(r, r, max(cyc)))
    return pi


def permutation_from_singularity_data(delta: SingularityData) -> Permutation:
    """Irreducible permutation of ``r = 2g + m - 1`` symbols with ``m`` cycles."""
    inv = surface_invariants(delta)
    lengths = cycle_lengths(delta)
    assert sum(lengths) == inv.intervals
    pi = assemble_permutation(lengths)
    if not pi.is_irreducible():
        raise IrreducibilityFailure(
            f"could not make an irreducible permutation with cycle lengths {lengths}"
        )
    if sorted(len(c) for c in pi.cycles()) != sorted(lengths):
        raise IrreducibilityFailure("repair changed the cycle type")
    return pi


def valid_singularity_data(max_intervals: int) -> Iterable[SingularityData]:
    """All integer singularity data with ``r <= max_intervals``, types nonincreasing."""

    def parts(total, max_part, count):
        if count == 0:
            if total == 0:
                yield ()
            return
        for k in range(min(total, max_part), -1, -1):
            for rest in parts(total - k, k, count - 1):
                yield (k,) + rest

    for m in range(1, max_intervals):
        for total in range(0, max_intervals - m, 2):
            if total + m + 1 > max_intervals:
                break
            for ks in parts(total, total, m):
                yield SingularityData(ks)
