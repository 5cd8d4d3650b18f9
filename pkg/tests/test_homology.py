import random
from itertools import combinations
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from qshell.gflin import gf
from qshell.homology import (HomologyReport, Poset, boundary_matrix, euler_check,
                             expected_sphere_homology, finite_space_homology, order_complex,
                             reduced_homology, shelling_homology_prediction, smith_normal_form)
from qshell.qcomplex import generate, q_sphere, sphere_shelling
from qshell.subspace import enumerate_grassmannian


def matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def det(m):
    if not m:
        return 1
    return sum((-1) ** j * m[0][j] * det([r[:j] + r[j + 1:] for r in m[1:]])
               for j in range(len(m)) if m[0][j])


def minors_gcd(m, k):
    """gcd of all k x k minors (brute force)."""
    g = 0
    for rows in combinations(range(len(m)), k):
        for cols in combinations(range(len(m[0])), k):
            g = gcd(g, det([[m[i][j] for j in cols] for i in rows]))
    return g


@pytest.mark.parametrize("m,rank,factors", [
    ([[2, 0], [0, 3]], 2, [1, 6]),
    ([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], 3, [2, 6, 12]),
    ([[0, 0], [0, 0]], 0, []),
    ([[1, 1, 1]], 1, [1]),
])
def test_snf_known(m, rank, factors):
    assert smith_normal_form(m) == (rank, factors)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_snf_against_minors(r, c, data):
    m = data.draw(st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c),
                           min_size=r, max_size=r))
    rank, d = smith_normal_form(m)
    # d_1 ... d_k equals the gcd of k x k minors
    prod = 1
    for k in range(1, min(r, c) + 1):
        g = minors_gcd(m, k)
        if k <= rank:
            prod *= d[k - 1]
            assert g == prod
        else:
            assert g == 0
    assert all(d[i + 1] % d[i] == 0 for i in range(len(d) - 1))


@pytest.mark.parametrize("q,n", [(2, 2), (2, 3), (3, 3), (2, 4)])
def test_boundary_squares_to_zero(q, n):
    K = order_complex(q_sphere(n, q).puncture())
    for p in range(1, K.dim + 1):
        prod = matmul(boundary_matrix(K, p - 1), boundary_matrix(K, p))
        assert all(x == 0 for row in prod for x in row)


@pytest.mark.parametrize("q,n,b", [(2, 1, 1), (2, 2, 2), (2, 3, 8), (3, 2, 3), (3, 3, 27), (2, 4, 64)])
def test_sphere_homology(q, n, b):
    rep = finite_space_homology(q_sphere(n, q))
    assert rep == expected_sphere_homology(n, q)
    assert rep.betti[n - 2] == b
    assert not any(rep.torsion.values())


def test_figure_counts():
    K = order_complex(q_sphere(3, 2).puncture())
    assert K.counts() == [14, 21]
    rep = reduced_homology(K)
    assert rep.euler() == -8 and euler_check(K, rep)


def test_point_and_circle():
    P = Poset.from_relation(["a"], lambda x, y: False)
    assert reduced_homology(order_complex(P)).is_acyclic
    # four points a, b < c, d: the suspension of two points, a circle
    P = Poset.from_relation("abcd", lambda x, y: x in "ab" and y in "cd")
    rep = reduced_homology(order_complex(P))
    assert rep.nonzero() == {1: (1, ())}


def test_projective_plane_torsion():
    # the 6-vertex RP^2 has H_1 = Z/2
    tris = [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 6, 2), (2, 3, 5),
            (3, 4, 6), (4, 5, 2), (5, 6, 3), (6, 2, 4)]
    faces = set()
    for t in tris:
        s = frozenset(t)
        faces.add(s)
        faces.update(s - {v} for v in s)
        faces.update(frozenset({v}) for v in s)
    # face poset of the triangulation; its order complex is the barycentric subdivision
    elems = sorted(faces, key=lambda s: (len(s), sorted(s)))
    P = Poset.from_relation(elems, lambda a, b: a < b)
    rep = reduced_homology(order_complex(P))
    assert rep.nonzero() == {1: (0, (2,))}


def test_poset_validation():
    with pytest.raises(ValueError):
        Poset(("a", "b"), frozenset({(0, 1), (1, 0)}))
    with pytest.raises(ValueError):
        Poset(("a", "b", "c"), frozenset({(0, 1), (1, 2)}))


def test_acyclic_prefix_and_prediction():
    for q, n in [(2, 3), (3, 3), (2, 4)]:
        order, ell = sphere_shelling(n, q)
        assert finite_space_homology(generate(order[:ell])).is_acyclic
        pred = shelling_homology_prediction(n - 1, q, len(order), ell)
        assert pred == expected_sphere_homology(n, q)


def test_cone_is_acyclic():
    F = gf(2)
    e1 = (1, 0, 0, 0)
    rng = random.Random(3)
    through = [P for P in enumerate_grassmannian(4, 2, F) if e1 in P]
    for _ in range(5):
        gens = rng.sample(through, 3)
        assert finite_space_homology(generate(gens)).is_acyclic


def test_report_equality_ignores_zero_degrees():
    a = HomologyReport({-1: 0, 0: 0, 1: 3}, {})
    b = HomologyReport({1: 3}, {1: []})
    assert a == b
    assert a.degrees()[-1] == {"p": 1, "betti": 3, "torsion": []}
    assert HomologyReport({-1: 0, 0: 0}).degrees() == [{"p": -1, "betti": 0, "torsion": []}]
