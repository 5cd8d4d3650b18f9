import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from qshell.errors import ResourceCapError
from qshell.gflin import gf, span, subspace_from_generators
from qshell.subspace import (Cmp, check_cap, enumerate_all_subspaces, enumerate_grassmannian,
                             gaussian_binomial, layer_min, leading_index, profile,
                             sort_facets, sort_facets_by_compare, subspace_compare,
                             subspaces_of, tower_decomposition, vector_compare)


def brute_count(n, k, q):
    """Count k-subspaces by spanning every k-tuple of vectors."""
    F = gf(q)
    seen = set()
    vecs = list(product(range(q), repeat=n))
    for combo in product(vecs, repeat=k):
        U = subspace_from_generators(F, n, combo)
        if U.dim == k:
            seen.add(U)
    return len(seen)


@pytest.mark.parametrize("n,k,q", [(2, 1, 2), (3, 1, 2), (3, 2, 2), (4, 2, 2), (3, 1, 3),
                                   (3, 2, 3), (2, 1, 4), (2, 1, 5)])
def test_gaussian_binomial_oracle(n, k, q):
    assert gaussian_binomial(n, k, q) == brute_count(n, k, q)
    assert len(enumerate_grassmannian(n, k, q)) == gaussian_binomial(n, k, q)


def test_known_counts():
    assert gaussian_binomial(4, 2, 2) == 35
    assert gaussian_binomial(3, 1, 3) == 13
    assert len(enumerate_all_subspaces(4, 2)) == 67


def test_cap():
    with pytest.raises(ResourceCapError):
        check_cap(7, 3, 100_000)
    assert check_cap(3, 2, 100) == 16
    with pytest.raises(ResourceCapError):
        enumerate_all_subspaces(4, 2, max_subspaces=10)


def test_vector_order_and_leading():
    assert vector_compare((0, 1, 0), (1, 0, 0)) == Cmp.LT
    assert vector_compare((1, 2), (1, 2)) == Cmp.EQ
    # swap the roles of 2 and 3 in GF(4)
    assert vector_compare((2,), (3,), order=(0, 1, 3, 2)) == Cmp.GT
    with pytest.raises(ValueError):
        vector_compare((1,), (2,), order=(1, 0, 2, 3))
    assert leading_index((0, 0, 3)) == 3
    with pytest.raises(ValueError):
        leading_index((0, 0))
    assert profile([(0, 1, 1), (1, 0, 0), (0, 0, 0)]) == {1, 2}


def test_tower_layers():
    F = gf(2)
    U = span(F, 3, (1, 0, 1), (0, 1, 1))
    T = tower_decomposition(U)
    assert T[1] == span(F, 3, (0, 1, 1))
    assert T[2] == U
    assert T[0].dim == 0
    assert T.layer_set(2) == {(1, 0, 1), (1, 1, 0)}
    assert layer_min(U, 2) == (1, 0, 1)


@pytest.mark.parametrize("q,n", [(2, 3), (2, 4), (3, 3), (4, 3)])
def test_greedy_layer_min_matches_scan(q, n):
    for r in range(1, n + 1):
        for U in enumerate_grassmannian(n, r, q):
            for i in range(1, r + 1):
                assert layer_min(U, i, method="greedy") == layer_min(U, i, method="scan")


@pytest.mark.parametrize("q,n,r", [(2, 3, 2), (2, 4, 2), (3, 3, 2), (3, 4, 2), (4, 3, 2)])
def test_key_sort_matches_definition(q, n, r):
    spaces = enumerate_grassmannian(n, r, q)
    shuffled = spaces[:]
    random.Random(1).shuffle(shuffled)
    assert sort_facets(shuffled) == sort_facets_by_compare(shuffled) == spaces


def test_order_is_total_and_antisymmetric():
    spaces = enumerate_grassmannian(3, 2, 3)
    for U in spaces:
        for V in spaces:
            c = subspace_compare(U, V)
            assert c == -subspace_compare(V, U)
            assert (c == Cmp.EQ) == (U == V)


def test_sphere_facets_example():
    # lines of F_2^2 in tower order
    got = [U.basis for U in enumerate_grassmannian(2, 1, 2)]
    assert got == [((0, 1),), ((1, 0),), ((1, 1),)]


def test_custom_element_order_changes_sort():
    F = gf(4)
    lines = enumerate_grassmannian(2, 1, F)
    swapped = sort_facets(lines, order=(0, 1, 3, 2))
    assert set(swapped) == set(lines)
    assert [U.basis[0] for U in swapped][-2:] == [(1, 3), (1, 2)]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3]), st.data())
def test_subspaces_of(q, data):
    F = gf(q)
    n = data.draw(st.integers(1, 4))
    vecs = data.draw(st.lists(st.lists(st.integers(0, q - 1), min_size=n, max_size=n), max_size=3))
    U = subspace_from_generators(F, n, vecs)
    subs = subspaces_of(U)
    assert len(subs) == len(set(subs))
    assert all(A.is_subspace_of(U) for A in subs)
    assert len(subs) == sum(gaussian_binomial(U.dim, k, q) for k in range(U.dim + 1))
