"""Independent reference implementations used only to cross-check the library."""

from __future__ import annotations

import itertools
import math


def leibniz_det(a) -> int:
    n = len(a)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = -1 if inversions % 2 else 1
        for i in range(n):
            term *= a[i][perm[i]]
        total += term
    return total


def naive_matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def fibonacci(n: int) -> int:
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def power_iteration(m, steps: int = 200):
    v = [1.0] * len(m)
    for _ in range(steps):
        v = [sum(m[i][j] * v[j] for j in range(len(v))) for i in range(len(v))]
        s = sum(v)
        v = [x / s for x in v]
    return v


def insertion_rule(precode: str) -> str:
    # verbatim: a between any ba, b between any aa, nothing between any ab
    out = precode[0]
    for x, y in zip(precode, precode[1:]):
        if x + y == "ba":
            out += "a"
        elif x + y == "aa":
            out += "b"
        out += y
    return out


def rotation_coding(alpha: float, x: float, n: int, cut: float) -> str:
    """Itinerary of ``x`` under ``x -> x + alpha mod 1``: ``a`` on ``[0, cut)``, ``b`` after."""
    out = []
    for _ in range(n):
        out.append("a" if x < cut else "b")
        x = (x + alpha) % 1.0
    return "".join(out)


def brute_orbit(lengths, pi, x, n):
    """Step-by-step IET simulation from the one-line permutation (interval i goes to slot pi[i])."""
    r = len(lengths)
    starts = [sum(lengths[:i]) for i in range(r)]
    order = sorted(range(r), key=lambda i: pi[i])
    new_starts = {}
    acc = 0
    for i in order:
        new_starts[i] = acc
        acc += lengths[i]
    out = []
    for _ in range(n):
        i = max(k for k in range(r) if starts[k] <= x)
        out.append(i + 1)
        x = x - starts[i] + new_starts[i]
    return out


def is_irreducible_bruteforce(images) -> bool:
    r = len(images)
    return not any(set(images[:k]) == set(range(1, k + 1)) for k in range(1, r))


GOLDEN = (math.sqrt(5) - 1) / 2
