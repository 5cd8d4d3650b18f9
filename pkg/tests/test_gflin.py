from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from qshell.errors import AmbientMismatchError, FieldMismatchError, FormatError
from qshell.gflin import (Field, gf, intersect, is_direct_sum, is_irreducible,
                          format_subspaces, parse_matrix, parse_subspaces, rref,
                          smallest_irreducible, span, subspace_from_generators,
                          subspace_sum, Subspace)

FIELDS = [2, 3, 4, 5, 8, 9]


@pytest.mark.parametrize("q", FIELDS)
def test_field_axioms_exhaustive(q):
    F = gf(q)
    E = range(q)
    for a in E:
        assert F.add(a, 0) == a and F.mul(a, 1) == a
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
        for b in E:
            assert F.add(a, b) == F.add(b, a)
            assert F.mul(a, b) == F.mul(b, a)
            assert F.sub(F.add(a, b), b) == a
            for c in E:
                assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
                assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
                assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


@pytest.mark.parametrize("q", FIELDS)
def test_multiplicative_group_cyclic(q):
    F = gf(q)
    orders = set()
    for g in range(1, q):
        x, k = g, 1
        while x != 1:
            x, k = F.mul(x, g), k + 1
        orders.add(k)
    assert max(orders) == q - 1


def test_default_moduli():
    assert smallest_irreducible(2, 2) == (1, 1, 1)
    assert smallest_irreducible(2, 3) == (1, 0, 1, 1)
    assert smallest_irreducible(3, 2) == (1, 0, 1)
    assert is_irreducible((1, 1, 0, 1), 2)
    assert not is_irreducible((1, 0, 1), 2)  # x^2 + 1 = (x + 1)^2


def test_gf4_table():
    F = gf(4)
    # code 2 is the class of x; x^2 = x + 1 is code 3
    assert F.mul(2, 2) == 3
    assert F.mul(2, 3) == 1
    assert F.add(2, 3) == 1


def test_field_errors():
    with pytest.raises(ValueError):
        gf(6)
    with pytest.raises(ValueError):
        Field(2, 2, (1, 0, 1))
    with pytest.raises(ZeroDivisionError):
        gf(5).inv(0)


def test_field_elements():
    F, G = gf(5), gf(7)
    assert int(F(3) * F(2)) == 1
    assert int(F(3) / F(3)) == 1
    assert int(-F(2)) == 3
    with pytest.raises(FieldMismatchError):
        F(1) + G(1)


def brute_span(field, n, gens):
    out = set()
    for coeffs in product(range(field.q), repeat=len(gens)):
        v = [0] * n
        for c, g in zip(coeffs, gens):
            v = [field.add(x, field.mul(c, y)) for x, y in zip(v, g)]
        out.add(tuple(v))
    return frozenset(out)


def vectors(q, n):
    return st.lists(st.integers(0, q - 1), min_size=n, max_size=n).map(tuple)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 4, 5]), st.data())
def test_span_matches_brute_force(q, data):
    F = gf(q)
    n = data.draw(st.integers(1, 4))
    gens = data.draw(st.lists(vectors(q, n), max_size=4))
    U = subspace_from_generators(F, n, gens)
    pts = brute_span(F, n, gens)
    assert U.point_set == pts
    assert len(pts) == q ** U.dim
    # RREF is canonical: regenerating from the point set gives the same basis
    assert subspace_from_generators(F, n, sorted(pts)).basis == U.basis


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 4]), st.data())
def test_sum_and_intersection(q, data):
    F = gf(q)
    n = data.draw(st.integers(1, 4))
    U = subspace_from_generators(F, n, data.draw(st.lists(vectors(q, n), max_size=3)))
    V = subspace_from_generators(F, n, data.draw(st.lists(vectors(q, n), max_size=3)))
    S, I = subspace_sum(U, V), intersect(U, V)
    assert I.point_set == U.point_set & V.point_set
    assert S.point_set == brute_span(F, n, list(U.basis) + list(V.basis))
    assert S.dim + I.dim == U.dim + V.dim
    assert U & V == I and U + V == S
    assert is_direct_sum(S, U, V) == (I.dim == 0)


def test_rref_shape():
    F = gf(3)
    m, r = rref(F, [(0, 2, 1), (0, 1, 2), (1, 1, 1)])
    assert r == 2
    assert m[0] == (1, 0, 2) and m[1] == (0, 1, 2) and m[2] == (0, 0, 0)


def test_membership_and_ambient():
    F = gf(2)
    U = span(F, 3, (1, 1, 0))
    assert (1, 1, 0) in U and (0, 0, 0) in U and (1, 0, 0) not in U
    assert U.is_subspace_of(Subspace.full(F, 3))
    with pytest.raises(AmbientMismatchError):
        U + span(F, 2, (1, 0))
    with pytest.raises(AmbientMismatchError):
        (1, 0) in U


def test_text_roundtrip():
    F = gf(4)
    spaces = [Subspace.zero(F, 3), span(F, 3, (1, 2, 3)), span(F, 3, (1, 0, 0), (0, 1, 1))]
    text = format_subspaces(F, 3, spaces)
    G, n, back = parse_subspaces(text)
    assert G == F and n == 3 and back == spaces


def test_parse_errors():
    with pytest.raises(FormatError):
        parse_subspaces("q=2 n=2\n1 2\n")
    with pytest.raises(FormatError):
        parse_subspaces("q=6 n=2\n1 0\n")
    with pytest.raises(FormatError):
        parse_matrix("q=2 n=3\n1 0\n")
    F, n, rows = parse_matrix("# comment\nq=3 n=2\n1 2\n0 1\n")
    assert rows == [(1, 2), (0, 1)]
