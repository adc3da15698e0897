import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from veronese.errors import ResourceLimitError
from veronese.lattice import enumerate_generators
from veronese.pile import build_faces, f_vector, is_connected

import oracle

GENS23 = enumerate_generators(2, 3)


def test_figure_complex_gamma_3_7():
    table = build_faces((3, 7), GENS23, max_dim=2)
    assert f_vector(table) == (1, 4, 4, 1)
    assert table.faces(0) == [(0,), (1,), (2,), (3,)]
    # generators: 0=(3,0) 1=(2,1) 2=(1,2) 3=(0,3)
    assert table.faces(1) == [(0, 3), (1, 2), (1, 3), (2, 3)]
    assert table.faces(2) == [(1, 2, 3)]


def test_figure_complex_one_skeleton():
    table = build_faces((3, 7), GENS23, max_dim=1)
    assert f_vector(table) == (1, 4, 4)


def test_zero_bound_only_empty_face():
    table = build_faces((0, 0, 0), enumerate_generators(3, 2), max_dim=4)
    assert f_vector(table) == (1,)
    assert table.faces(-1) == [()]


def test_negative_bound_is_void():
    table = build_faces((2, -2), GENS23, max_dim=3)
    assert table.is_void
    assert f_vector(table) == (0,)
    assert table.faces(-1) == []


def test_max_dim_minus_one_keeps_empty_face_only():
    table = build_faces((9, 9), GENS23, max_dim=-1)
    assert f_vector(table) == (1,)


@pytest.mark.parametrize(
    "n,d,c",
    [
        (2, 3, (3, 7)),
        (2, 3, (4, 6)),
        (3, 2, (2, 2, 2)),
        (3, 3, (4, 3, 2)),
        (2, 4, (5, 5)),
    ],
)
def test_faces_match_bruteforce(n, d, c):
    gens = enumerate_generators(n, d)
    table = build_faces(c, gens, max_dim=gens.N - 1)
    expected = oracle.pile_faces(c, oracle.monomials(n, d))
    got = []
    for r in range(-1, table.max_dim + 1):
        got.extend(table.faces(r))
    assert sorted(got, key=lambda f: (len(f), f)) == sorted(
        expected, key=lambda f: (len(f), f)
    )


def test_downward_closure_and_lex_order():
    gens = enumerate_generators(3, 2)
    table = build_faces((3, 2, 2), gens, max_dim=5)
    for r in range(1, table.max_dim + 1):
        lower = set(table.faces(r - 1))
        level = table.faces(r)
        assert level == sorted(level)
        for face in level:
            for pos in range(len(face)):
                assert face[:pos] + face[pos + 1 :] in lower


def test_monotonicity_in_bound():
    gens = enumerate_generators(2, 4)
    small = build_faces((4, 5), gens, max_dim=4)
    large = build_faces((6, 7), gens, max_dim=4)
    for r in range(0, 4):
        assert set(small.faces(r)) <= set(large.faces(r))


@given(
    st.tuples(
        st.integers(min_value=0, max_value=6),
        st.integers(min_value=0, max_value=6),
        st.integers(min_value=0, max_value=6),
    )
)
@settings(max_examples=25, deadline=None)
def test_permutation_invariance_of_f_vector(c):
    gens = enumerate_generators(3, 2)
    base = f_vector(build_faces(c, gens, max_dim=5))
    for perm in itertools.permutations(c):
        assert f_vector(build_faces(perm, gens, max_dim=5)) == base


def test_is_connected_cases():
    assert is_connected(build_faces((3, 7), GENS23, max_dim=1))
    # bound (3,3) leaves the two edges {(3,0),(0,3)} and {(2,1),(1,2)} disjoint
    split = build_faces((3, 3), GENS23, max_dim=1)
    assert f_vector(split) == (1, 4, 2)
    assert not is_connected(split)
    single = build_faces((3, 0), GENS23, max_dim=1)
    assert f_vector(single) == (1, 1)
    assert is_connected(single)
    empty = build_faces((1, 1), GENS23, max_dim=1)
    assert is_connected(empty)  # no vertices at all


def test_face_cap_enforced():
    gens = enumerate_generators(3, 2)
    with pytest.raises(ResourceLimitError):
        build_faces((6, 6, 6), gens, max_dim=5, face_cap=10)


def test_stored_min_counts_only():
    gens = enumerate_generators(3, 2)
    full = build_faces((4, 4, 2), gens, max_dim=4)
    thin = build_faces((4, 4, 2), gens, max_dim=4, stored_min=3)
    assert f_vector(full) == f_vector(thin)
    assert thin.faces(3) == full.faces(3)
    with pytest.raises(ValueError):
        thin.face_array(1)


def test_text_export():
    text = build_faces((3, 7), GENS23, max_dim=2).to_text()
    assert "# dim 0: 4 faces" in text
    assert "1 2 3" in text
