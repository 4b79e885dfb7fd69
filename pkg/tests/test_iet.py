import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from lamination import golden
from lamination.bratteli import BratteliDiagram, state_vector
from lamination.errors import (
    InvalidIET,
    NotContracted,
    OrbitHitsDiscontinuity,
    OutOfDomain,
    TieBreakUndefined,
)
from lamination.iet import (
    IET,
    apply,
    induce,
    keane_probe,
    natural_coding,
    rauzy_step,
    theta_point,
    unimodular_steps,
)
from lamination.matrices import matmul, matvec

from oracles import GOLDEN, brute_orbit, is_irreducible_bruteforce, rotation_coding


def test_apply_golden(golden_iet):
    l1, l2 = golden_iet.lengths
    assert apply(golden_iet, Fraction(0)) == l2
    assert apply(golden_iet, l1) == 0
    assert golden_iet(0.1) == pytest.approx(0.1 + float(l2))


def test_domain_and_validation(golden_iet):
    with pytest.raises(OutOfDomain):
        golden_iet.label_at(1.0)
    with pytest.raises(InvalidIET):
        IET.from_permutation((1, 1, 1), (1, 3, 2))
    with pytest.raises(InvalidIET):
        IET.from_permutation((1, 0), (2, 1))
    with pytest.raises(InvalidIET):
        IET.from_permutation((1, 1), (2, 1, 3))


def test_natural_coding_golden(golden_iet):
    assert natural_coding(golden_iet, 0.3, 0) == ()
    for offset in (-1e-9, 1e-9):
        word = natural_coding(golden_iet, GOLDEN + offset, 200)
        oracle = rotation_coding(1 - GOLDEN, GOLDEN + offset, 200, GOLDEN)
        assert "".join("ab"[i - 1] for i in word) == oracle
    # left of theta the orbit starts inside interval 1
    assert natural_coding(golden_iet, GOLDEN - 1e-9, 5) == (1, 2, 1, 2, 1)


def test_natural_coding_hits_discontinuity(golden_iet):
    with pytest.raises(OrbitHitsDiscontinuity) as err:
        natural_coding(golden_iet, float(golden_iet.lengths[0]), 3)
    assert err.value.iterate == 0


def test_natural_coding_rank3():
    lengths = (math.sqrt(2) - 1, math.pi / 10, 1 - (math.sqrt(2) - 1) - math.pi / 10)
    t = IET.from_permutation(lengths, (3, 2, 1))
    x = 0.123456
    assert list(natural_coding(t, x, 10)) == brute_orbit(lengths, (3, 2, 1), x, 10)


def test_first_steps_golden(golden_iet):
    s1 = rauzy_step(golden_iet)
    s2 = rauzy_step(s1.induced)
    assert (s1.side, s1.matrix) == ("bottom", ((1, 1), (0, 1)))
    assert (s2.side, s2.matrix) == ("top", ((1, 0), (1, 1)))
    # two elementary steps give the square of the stationary matrix
    assert matmul(s1.matrix, s2.matrix) == matmul(golden.MATRIX, golden.MATRIX)
    assert matvec(s1.matrix, s1.induced.lengths) == golden_iet.lengths


def test_tie_on_rational_lengths():
    t = IET.from_permutation((Fraction(2, 3), Fraction(1, 3)), (2, 1))
    s = rauzy_step(t)
    assert s.induced.lengths == (Fraction(1, 3), Fraction(1, 3))
    with pytest.raises(TieBreakUndefined):
        rauzy_step(s.induced)
    with pytest.raises(TieBreakUndefined) as err:
        induce(t, 5)
    assert err.value.step == 2


def test_induce_golden(golden_iet, golden_trace):
    assert induce(golden_iet, 6).product(6) == ((13, 8), (8, 5))
    one = induce(golden_iet, 1)
    assert len(one) == 1 and one.steps[0].gamma.length == one.level(1).total
    assert golden_trace.telescoping_error(64) == 0.0
    assert unimodular_steps(golden_trace)


def test_windows_match_reference_lengths(golden_trace):
    assert golden_trace.theta == golden_trace.iet.lengths[0]
    for k in range(1, 9):
        w = golden_trace.window(2 * k)
        lo, hi = golden.reference_interval(k)
        assert float(w.length) == pytest.approx(hi - lo, rel=1e-12)
        assert float(w.length) == pytest.approx(golden.EPSILON ** -k, rel=1e-12)
        assert lo <= float(w.xi) <= hi


def test_contraction_constant(golden_trace):
    c = golden_trace.contraction_constant()
    g1 = golden_trace.steps[0].gamma.length
    lengths = [s.gamma.length for s in golden_trace.steps]
    assert all(b < a for a, b in zip(lengths, lengths[1:]))
    for n, g in enumerate(lengths[1:], start=2):
        assert float(g) <= float(g1) * 2 ** (-(n - 1) / c) * (1 + 1e-12)


def test_theta_point(golden_iet, golden_trace):
    theta = theta_point(golden_trace)
    assert theta.contains((math.sqrt(5) - 1) / 2)
    assert theta.radius < 1e-10
    assert 0 < theta.value < 1
    with pytest.raises(NotContracted):
        theta_point(induce(golden_iet, 2))
    with pytest.raises(NotContracted):
        theta_point(induce(golden_iet, 1))


def test_theta_rerun_rank3():
    d = BratteliDiagram.stationary(((2, 1, 0), (1, 1, 1), (0, 1, 1)))

    def run():
        t = IET.from_permutation(state_vector(d).exact, (3, 2, 1))
        return theta_point(induce(t, 128))

    a, b = run(), run()
    assert a == b
    assert abs(a.value - b.value) <= a.radius


def test_keane_probe(golden_iet):
    assert keane_probe(golden_iet, 1000).label == "GenericLikely"
    half = keane_probe(IET.from_permutation((Fraction(1, 2), Fraction(1, 2)), (2, 1)))
    assert half.label == "DegenerateDetected" and half.iterate <= 2
    thirds = keane_probe(IET.from_permutation((Fraction(2, 3), Fraction(1, 3)), (2, 1)))
    assert not thirds.generic and thirds.iterate <= 3


@st.composite
def random_iets(draw):
    r = draw(st.integers(2, 5))
    images = draw(st.permutations(range(1, r + 1)).filter(is_irreducible_bruteforce))
    lengths = draw(st.lists(st.integers(1, 2**60), min_size=r, max_size=r))
    return IET.from_permutation(tuple(Fraction(x, 2**60) for x in lengths), tuple(images))


def _trace(t, n):
    try:
        return induce(t, n)
    except TieBreakUndefined:
        assume(False)


@given(random_iets())
def test_telescoping_property(t):
    trace = _trace(t, 20)
    for n in range(len(trace) + 1):
        assert matvec(trace.product(n), trace.level(n).lengths) == t.lengths
        assert trace.telescoping_error(n) == 0.0
    assert unimodular_steps(trace)


@given(random_iets())
def test_windows_nested_around_theta(t):
    trace = _trace(t, 20)
    windows = [w for w in (trace.window(n) for n in range(len(trace) + 1)) if w is not None]
    for outer, inner in zip(windows, windows[1:]):
        assert outer.contains_interval(inner)
        assert inner.length < outer.length
    assert all(trace.theta in w for w in windows)
    assert 0 < trace.theta < t.total


@given(random_iets(), st.fractions(0, 1).filter(lambda x: x < 1))
def test_apply_is_piecewise_translation(t, u):
    x = u * t.total
    y = apply(t, x)
    assert 0 <= y < t.total
    lab = t.label_at(x)
    assert y - t.bottom_starts[lab] == x - t.top_starts[lab]
