import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lamination.errors import InvalidSingularityData, IrreducibilityFailure, NonIntegerCycleLength
from lamination.surface import (
    Permutation,
    SingularityData,
    assemble_permutation,
    check_area,
    cycle_decomposition,
    cycle_lengths,
    genus_of,
    permutation_from_singularity_data,
    polygon_sides,
    surface_invariants,
    valid_singularity_data,
)

from oracles import is_irreducible_bruteforce


@pytest.mark.parametrize(
    "ks, g, m, r", [((0,), 1, 1, 2), ((1, 1), 2, 2, 5), ((2,), 2, 1, 4), ((0, 0), 1, 2, 3)]
)
def test_invariants(ks, g, m, r):
    delta = SingularityData(ks)
    assert genus_of(delta) == g
    inv = surface_invariants(delta)
    assert (inv.genus, inv.components, inv.intervals) == (g, m, r)
    assert inv.euler_characteristic == 2 - 2 * g


@pytest.mark.parametrize("ks", [(1,), (0.5,), (0.5, 0.5, 0.5), (3,)])
def test_odd_total_rejected(ks):
    with pytest.raises(InvalidSingularityData):
        genus_of(SingularityData(ks))


@pytest.mark.parametrize("ks", [(), (-1,), (0.25,), ("x",)])
def test_malformed_data(ks):
    with pytest.raises(InvalidSingularityData):
        SingularityData(ks)


def test_half_integers():
    delta = SingularityData((1, 0.5, 0.5))
    assert delta.ks == (1, Fraction(1, 2), Fraction(1, 2))
    assert delta.to_json() == [1, 0.5, 0.5]
    assert genus_of(delta) == 2
    with pytest.raises(NonIntegerCycleLength):
        cycle_lengths(delta)


def test_polygon_sides():
    assert polygon_sides(1) == 4
    assert polygon_sides(Fraction(1, 2)) == 3
    assert polygon_sides(0) == 2


def test_check_area_examples():
    assert check_area(SingularityData((1, 1)), 2).passed
    assert check_area(SingularityData((2,)), 2).passed
    wrong = check_area(SingularityData((1,)), 2)
    assert not wrong.passed and wrong.defect_sum == 2 and wrong.expected == 4


_types = st.lists(st.integers(0, 12).map(lambda n: Fraction(n, 2)), min_size=1, max_size=6)


@given(_types)
def test_area_condition_equivalent_to_genus(ks):
    delta = SingularityData(tuple(ks))
    try:
        g = genus_of(delta)
    except InvalidSingularityData:
        g = None
    area = check_area(delta)
    assert area.passed == (g is not None)
    if g is not None:
        assert area.genus == g


def test_cycle_decomposition_examples():
    assert cycle_decomposition(Permutation((2, 1))) == [(1, 2)]
    assert cycle_decomposition(Permutation((1, 2, 3))) == [(1,), (2,), (3,)]
    assert cycle_decomposition(Permutation((2, 3, 1, 5, 4))) == [(1, 2, 3), (4, 5)]


def test_permutation_examples():
    assert permutation_from_singularity_data(SingularityData((0,))).images == (2, 1)
    p2 = permutation_from_singularity_data(SingularityData((2,)))
    assert p2.images == (4, 1, 2, 3)
    irreducible_4_cycles = [
        p for p in itertools.permutations(range(1, 5))
        if is_irreducible_bruteforce(p) and len(cycle_decomposition(Permutation(p))) == 1
    ]
    assert p2.images in irreducible_4_cycles
    p11 = permutation_from_singularity_data(SingularityData((1, 1)))
    assert sorted(len(c) for c in p11.cycles()) == [2, 3]
    assert is_irreducible_bruteforce(p11.images)


def test_assembly_repair_keeps_cycle_type():
    for lengths in [(1, 2), (2, 2), (1, 1, 3), (3, 1, 1, 2), (1, 1, 1, 1, 2)]:
        pi = assemble_permutation(lengths)
        assert pi.is_irreducible()
        assert sorted(len(c) for c in pi.cycles()) == sorted(lengths)
    with pytest.raises(IrreducibilityFailure):
        assemble_permutation((1, 1, 1))


@given(st.sampled_from(list(valid_singularity_data(8))))
def test_permutation_properties(delta):
    inv = surface_invariants(delta)
    pi = permutation_from_singularity_data(delta)
    assert pi.size == inv.intervals
    assert sorted(len(c) for c in pi.cycles()) == sorted(cycle_lengths(delta))
    assert pi.is_irreducible() and is_irreducible_bruteforce(pi.images)


def test_generator_covers_small_cases():
    found = {tuple(d.ks) for d in valid_singularity_data(5)}
    assert {(0,), (0, 0), (0, 0, 0), (2,), (1, 1), (2, 0), (0, 0, 0, 0)} <= found
    assert all(surface_invariants(SingularityData(ks)).intervals <= 5 for ks in found)


@given(st.permutations(range(1, 7)), st.permutations(range(1, 7)))
def test_permutation_algebra(a, b):
    p, s = Permutation(tuple(a)), Permutation(tuple(b))
    assert p.inverse().inverse() == p
    assert sorted(len(c) for c in p.conjugate(s).cycles()) == sorted(len(c) for c in p.cycles())
    assert p.is_irreducible() == is_irreducible_bruteforce(p.images)
