from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from veronese.lattice import (
    dual_degree,
    enumerate_degrees,
    enumerate_generators,
    expand_orbit,
    orbit_size,
    total,
)

import oracle


def test_generators_2_3_exact():
    gens = enumerate_generators(2, 3)
    assert gens.generators == ((3, 0), (2, 1), (1, 2), (0, 3))
    assert gens.N == 4


@pytest.mark.parametrize(
    "n,d,expected_N",
    [(2, 3, 4), (3, 4, 15), (4, 3, 20), (3, 5, 21), (1, 7, 1), (3, 2, 6)],
)
def test_generator_counts(n, d, expected_N):
    gens = enumerate_generators(n, d)
    assert gens.N == comb(d + n - 1, d) == expected_N
    assert all(sum(a) == d for a in gens)


def test_generators_match_bruteforce_and_order():
    for n, d in [(2, 4), (3, 3), (4, 2)]:
        gens = enumerate_generators(n, d)
        assert list(gens) == oracle.monomials(n, d)
        assert gens.generators[0] == (d,) + (0,) * (n - 1)
        assert all(a > b for a, b in zip(gens.generators, gens.generators[1:]))


def test_generators_permutation_stable():
    gens = enumerate_generators(3, 4)
    as_set = set(gens.generators)
    swapped = {(a[1], a[0], a[2]) for a in as_set}
    assert swapped == as_set


def test_generators_domain_errors():
    with pytest.raises(ValueError):
        enumerate_generators(0, 3)
    with pytest.raises(ValueError):
        enumerate_generators(2, 0)


def test_enumerate_degrees_plain():
    degs = enumerate_degrees(2, 3)
    assert set(degs) == {(3, 0), (2, 1), (1, 2), (0, 3)}
    degs10 = enumerate_degrees(2, 10)
    assert len(degs10) == 11
    assert (3, 7) in degs10
    assert enumerate_degrees(3, 0) == [(0, 0, 0)]


def test_enumerate_degrees_orbits():
    orbits = enumerate_degrees(3, 2, up_to_symmetry=True)
    table = {o.representative: o.orbit_size for o in orbits}
    assert table == {(2, 0, 0): 3, (1, 1, 0): 3}
    assert sum(table.values()) == comb(2 + 2, 2)


@given(
    n=st.integers(min_value=1, max_value=5), tot=st.integers(min_value=0, max_value=12)
)
@settings(max_examples=40, deadline=None)
def test_orbit_sizes_sum_to_degree_count(n, tot):
    orbits = enumerate_degrees(n, tot, up_to_symmetry=True)
    assert sum(o.orbit_size for o in orbits) == comb(tot + n - 1, n - 1)
    for o in orbits:
        members = list(expand_orbit(o.representative))
        assert len(members) == o.orbit_size == orbit_size(o.representative)
        assert all(total(m) == tot for m in members)


def test_dual_degree_examples():
    gens = enumerate_generators(2, 3)
    assert gens.coordinate_sum == (6, 6)
    assert dual_degree((3, 7), gens) == (2, -2)
    assert dual_degree((5, 5), gens) == (0, 0)  # c = t - 1


@given(st.integers(min_value=0, max_value=9), st.integers(min_value=0, max_value=9))
@settings(max_examples=30, deadline=None)
def test_dual_degree_involution(a, b):
    gens = enumerate_generators(2, 3)
    assert dual_degree(dual_degree((a, b), gens), gens) == (a, b)


def test_dual_degree_total_shift():
    # |dual(c)| = d*N - n - |c|; at |c| = (d+1)*d with n=2 this is -2
    for d in (2, 3, 4):
        gens = enumerate_generators(2, d)
        c = ((d + 1) * d, 0)
        assert total(dual_degree(c, gens)) == -2
