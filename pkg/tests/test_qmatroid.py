import pytest

from qshell.errors import AxiomError, FormatError
from qshell.gflin import gf, span, Subspace
from qshell.qmatroid import (RankOracle, bases, dual_basis_exchange, exchange_triples,
                             format_rank_table, free_matroid, independent_spaces,
                             parse_rank_table, rank_from_independents, uniform_matroid,
                             verify_basis_axioms, verify_independence_axioms,
                             verify_rank_axioms)
from qshell.subspace import enumerate_all_subspaces, gaussian_binomial


def check_exchange(M, B1, B2, y, U, x):
    """The three exchange clauses, checked on point sets and ranks only."""
    F, n = M.field, M.n
    common = B1.point_set & B2.point_set
    assert common <= U.point_set <= B1.point_set
    assert x in B1.point_set and x not in U.point_set
    assert U.dim == B1.dim - 1
    Ux = span(F, n, x, *U.basis)
    assert Ux.point_set == B1.point_set
    Uy = span(F, n, y, *U.basis)
    assert Uy.dim == M.matroid_rank and M(Uy) == M.matroid_rank


def test_uniform_rank_values():
    M = uniform_matroid(2, 3, 2)
    assert M.matroid_rank == 2
    assert all(M(A) == min(A.dim, 2) for A in M.spaces)
    assert len(bases(M)) == gaussian_binomial(3, 2, 2)
    assert verify_rank_axioms(M).ok


def test_free_matroid():
    M = free_matroid(3, 2)
    assert bases(M).bases == {Subspace.full(gf(2), 3)}


def test_rank_axiom_violations():
    F = gf(2)
    # a single loop line is a legitimate q-matroid
    bad_line = span(F, 2, (1, 1))
    M = RankOracle.from_function(F, 2, lambda A: 0 if A == bad_line or A.dim == 0 else 1)
    rep = verify_rank_axioms(M)
    assert rep.ok  # rank of a "loop" is fine
    # two loops spanning a space of rank 1
    loops = {span(F, 2, (1, 0)), span(F, 2, (0, 1))}
    M2 = RankOracle.from_function(F, 2, lambda A: 0 if A in loops or A.dim == 0 else 1)
    rep2 = verify_rank_axioms(M2)
    assert rep2.failed() == ["r3"]
    M3 = RankOracle.from_function(F, 2, lambda A: 2 if A.dim == 1 else A.dim)
    assert "r1" in verify_rank_axioms(M3).failed()
    with pytest.raises(AxiomError):
        independent_spaces(M3)


@pytest.mark.parametrize("k,n,q", [(1, 3, 2), (2, 3, 2), (2, 3, 3), (2, 4, 2)])
def test_cryptomorphisms(k, n, q):
    M = uniform_matroid(k, n, q)
    ind = independent_spaces(M)
    assert verify_independence_axioms(ind.faces, M.field, n).ok
    assert verify_basis_axioms(bases(M), M.field, n).ok
    assert rank_from_independents(ind.faces, M.field, n) == M


def test_independence_mutations():
    M = uniform_matroid(2, 3, 2)
    fam = set(independent_spaces(M).faces)
    F = M.field
    line = span(F, 3, (0, 0, 1))
    rep = verify_independence_axioms(fam - {line}, F, 3)
    assert "i2" in rep.failed()
    lines = set(independent_spaces(uniform_matroid(1, 3, 2)).faces)
    plane = span(F, 3, (1, 0, 0), (0, 1, 0))
    rep = verify_independence_axioms(lines | {plane}, F, 3)
    assert "i3" in rep.failed()
    assert not verify_independence_axioms(set(), F, 3).ok


def test_basis_mutations():
    F = gf(2)
    M = uniform_matroid(1, 3, 2)
    B = set(bases(M))
    # nested bases
    assert "b2" in verify_basis_axioms(B | {Subspace.full(F, 3)}, F, 3).failed()
    # dropping one line turns it into a loop; still a q-matroid
    assert verify_basis_axioms(B - {span(F, 3, (1, 0, 0))}, F, 3).ok
    two = {span(F, 3, (1, 0, 0), (0, 1, 0)), span(F, 3, (0, 0, 1), (1, 1, 0))}
    assert not verify_basis_axioms(two, F, 3).ok


def test_exchange_examples():
    M = uniform_matroid(2, 3, 2)
    F = M.field
    B1 = span(F, 3, (1, 0, 0), (0, 1, 0))
    B2 = span(F, 3, (0, 1, 0), (0, 0, 1))
    U, x = dual_basis_exchange(M, B1, B2, (0, 0, 1))
    assert U == span(F, 3, (0, 1, 0))
    assert x in {(1, 0, 0), (1, 1, 0)}
    B2 = span(F, 3, (1, 1, 0), (0, 0, 1))
    U, x = dual_basis_exchange(M, B1, B2, (0, 0, 1))
    assert U == span(F, 3, (1, 1, 0))
    assert x in {(1, 0, 0), (0, 1, 0)}
    check_exchange(M, B1, B2, (0, 0, 1), U, x)


def test_exchange_bad_input():
    M = uniform_matroid(2, 3, 2)
    F = M.field
    B1 = span(F, 3, (1, 0, 0), (0, 1, 0))
    with pytest.raises(ValueError):
        dual_basis_exchange(M, B1, B1, (1, 0, 0))
    with pytest.raises(ValueError):
        dual_basis_exchange(M, B1, span(F, 3, (0, 1, 0), (0, 0, 1)), (0, 1, 0))


def test_exchange_all_triples_small():
    M = uniform_matroid(2, 3, 3)
    count = 0
    for B1, B2, y in exchange_triples(M):
        U, x = dual_basis_exchange(M, B1, B2, y)
        check_exchange(M, B1, B2, y, U, x)
        count += 1
    # 13 planes; two distinct planes share a line, leaving 9 - 3 = 6 vectors of B2 outside B1
    assert count == 13 * 12 * 6


def test_rank_table_roundtrip():
    M = uniform_matroid(2, 3, 3)
    assert parse_rank_table(format_rank_table(M)) == M


@pytest.mark.parametrize("text", [
    "", "q=2 n=2\n1,0 | 1\n", "q=2 n=2\n1,0 1\n", "q=2 n=2\nx | 1\n",
])
def test_rank_table_errors(text):
    with pytest.raises((FormatError, ValueError)):
        parse_rank_table(text)


def test_enumeration_covers_table():
    M = uniform_matroid(1, 2, 5)
    assert len(M.spaces) == len(enumerate_all_subspaces(2, 5)) == 8
