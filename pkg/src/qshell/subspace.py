"""
Grassmannian enumeration and the tower-decomposition order on subspaces.

Every r-dimensional subspace U has a flag U_1 ⊂ U_2 ⊂ ... ⊂ U_r = U built
from the rows of its RREF basis taken bottom-up.  Subspaces of equal
dimension are ordered by comparing, at the first layer where the flags
differ, the least vector of U_e \\ U_(e-1).

Vectors are compared lexicographically with coordinate 1 most significant.
Field elements are compared through an *element order*: a permutation of the
element codes in which 0 comes first and 1 second.  ``None`` means the
natural code order 0, 1, 2, ...
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from enum import IntEnum
from functools import cmp_to_key, lru_cache
from itertools import combinations, product
from typing import Iterable, Sequence

from .errors import AmbientMismatchError, ResourceCapError
from .gflin import Field, Subspace, as_field, subspace_from_generators

DEFAULT_MAX_SUBSPACES = 100_000
SCAN_LIMIT = 4096


class Cmp(IntEnum):
    LT = -1
    EQ = 0
    GT = 1


def _sign(x) -> Cmp:
    return Cmp.LT if x < 0 else Cmp.GT if x > 0 else Cmp.EQ


def max_subspaces_from_env(default: int = DEFAULT_MAX_SUBSPACES) -> int:
    raw = os.environ.get("QSHELL_MAX_SUBSPACES")
    return int(raw) if raw else default


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n."""
    if k < 0 or k > n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    if q < 2:
        raise ValueError(f"q must be >= 2, got {q}")
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def count_subspaces(n: int, q: int) -> int:
    return sum(gaussian_binomial(n, r, q) for r in range(n + 1))


def check_cap(n: int, q: int, max_subspaces: int | None = None) -> int:
    """Raise ResourceCapError if Σ(F_q^n) is larger than the cap."""
    cap = max_subspaces_from_env() if max_subspaces is None else max_subspaces
    total = count_subspaces(n, q)
    if total > cap:
        raise ResourceCapError(
            f"F_{q}^{n} has {total} subspaces, above the cap of {cap} "
            f"(raise it with --max-subspaces or QSHELL_MAX_SUBSPACES)")
    return total


# element and vector order

def _order_rank(field: Field, order: Sequence[int] | None):
    if order is None:
        return None
    order = tuple(order)
    if sorted(order) != list(range(field.q)):
        raise ValueError(f"element order must be a permutation of 0..{field.q - 1}")
    if order[0] != 0 or (field.q > 1 and order[1] != 1):
        raise ValueError("element order must start with 0, 1")
    rank = [0] * field.q
    for i, a in enumerate(order):
        rank[a] = i
    return tuple(rank)


def vector_key(v: Sequence[int], rank=None) -> tuple:
    return tuple(v) if rank is None else tuple(rank[x] for x in v)


def vector_compare(v: Sequence[int], w: Sequence[int], order: Sequence[int] | None = None,
                   field: Field | None = None) -> Cmp:
    if len(v) != len(w):
        raise AmbientMismatchError(f"vectors of length {len(v)} and {len(w)}")
    rank = None
    if order is not None:
        field = field or as_field(len(order))
        rank = _order_rank(field, order)
    a, b = vector_key(v, rank), vector_key(w, rank)
    return _sign((a > b) - (a < b))


def leading_index(v: Sequence[int]) -> int:
    """1-based position of the first nonzero entry."""
    for i, x in enumerate(v, 1):
        if x:
            return i
    raise ValueError("the zero vector has no leading index")


def profile(vectors: Iterable[Sequence[int]]) -> frozenset[int]:
    return frozenset(leading_index(v) for v in vectors if any(v))


# tower decomposition

@dataclass(frozen=True)
class TowerDecomposition:
    layers: tuple[Subspace, ...]

    def __len__(self):
        return len(self.layers)

    def __getitem__(self, i):
        """Layer U_i, 1-based; U_0 is the zero subspace."""
        if i == 0:
            top = self.layers[-1]
            return Subspace.zero(top.field, top.n)
        return self.layers[i - 1]

    def layer_set(self, i: int) -> frozenset:
        """The vector set U_i \\ U_(i-1)."""
        return self[i].point_set - self[i - 1].point_set


def _bottom_rows(U: Subspace, i: int):
    return U.basis[U.dim - i:]


def tower_decomposition(U: Subspace) -> TowerDecomposition:
    if U.dim == 0:
        raise ValueError("the zero subspace has no tower decomposition")
    layers = tuple(Subspace(U.field, U.n, _bottom_rows(U, i), _trusted=True)
                   for i in range(1, U.dim + 1))
    return TowerDecomposition(layers)


def _layer_min_scan(U: Subspace, i: int, rank=None):
    lower = Subspace(U.field, U.n, _bottom_rows(U, i - 1), _trusted=True)
    upper = Subspace(U.field, U.n, _bottom_rows(U, i), _trusted=True)
    return min((v for v in upper.vectors if v not in lower),
               key=lambda v: vector_key(v, rank))


def _layer_min_greedy(U: Subspace, i: int, rank=None):
    # minimise over the coset u_i + U_(i-1), normalised to leading entry 1;
    # at each pivot column of U_(i-1) the coefficient is free, so drive the
    # entry there to 0, the least element
    field = U.field
    rows = _bottom_rows(U, i)
    u = list(rows[0])
    lead = next(x for x in u if x)
    s = field.mul_table[field.inv_table[lead]]
    u = [s[x] for x in u]
    mul, sub = field.mul_table, field.sub_table
    for row in sorted(rows[1:], key=lambda r: next(j for j, x in enumerate(r) if x)):
        c = next(j for j, x in enumerate(row) if x)
        a = u[c]
        if a:
            ma = mul[a]
            u = [sub[x][ma[y]] for x, y in zip(u, row)]
    return tuple(u)


def layer_min(U: Subspace, i: int, order: Sequence[int] | None = None,
              method: str = "auto") -> tuple:
    """The least vector of U_i \\ U_(i-1) in the vector order."""
    if not 1 <= i <= U.dim:
        raise IndexError(f"layer {i} out of range 1..{U.dim}")
    rank = _order_rank(U.field, order)
    if method == "auto":
        method = "scan" if U.field.q ** i <= SCAN_LIMIT else "greedy"
    if method == "scan":
        return _layer_min_scan(U, i, rank)
    if method == "greedy":
        return _layer_min_greedy(U, i, rank)
    raise ValueError(f"unknown method {method!r}")


def subspace_compare(U: Subspace, V: Subspace, order: Sequence[int] | None = None) -> Cmp:
    """Compare equal-dimensional subspaces by their tower decompositions."""
    if U.field != V.field or U.n != V.n:
        raise AmbientMismatchError("subspaces live in different ambient spaces")
    if U.dim != V.dim:
        raise ValueError(f"dimensions differ: {U.dim} vs {V.dim}")
    if U == V:
        return Cmp.EQ
    tu, tv = tower_decomposition(U), tower_decomposition(V)
    rank = _order_rank(U.field, order)
    for e in range(1, U.dim + 1):
        if tu[e] != tv[e]:
            a = vector_key(layer_min(U, e, order), rank)
            b = vector_key(layer_min(V, e, order), rank)
            return Cmp.LT if a < b else Cmp.GT
    raise AssertionError("distinct subspaces with equal towers")


def order_key(U: Subspace, order: Sequence[int] | None = None) -> tuple:
    """Sort key realising the tower order: the layer minima, bottom-up.

    Equal prefixes of minima force equal layers, so comparing these tuples
    lexicographically is the same as subspace_compare.
    """
    rank = _order_rank(U.field, order)
    return tuple(vector_key(_layer_min_greedy(U, i), rank) for i in range(1, U.dim + 1))


def sort_facets(spaces: Iterable[Subspace], order: Sequence[int] | None = None) -> list[Subspace]:
    spaces = list(spaces)
    if len({U.dim for U in spaces}) > 1:
        raise ValueError("sort_facets needs subspaces of a single dimension")
    return sorted(spaces, key=lambda U: order_key(U, order))


def sort_facets_by_compare(spaces: Iterable[Subspace], order=None) -> list[Subspace]:
    """Same result as sort_facets, driven by pairwise subspace_compare."""
    return sorted(spaces, key=cmp_to_key(lambda a, b: int(subspace_compare(a, b, order))))


# enumeration

def _rref_matrices(field: Field, n: int, r: int):
    q = field.q
    for pivots in combinations(range(n), r):
        pset = set(pivots)
        free = [(i, j) for i, c in enumerate(pivots) for j in range(c + 1, n) if j not in pset]
        for values in product(range(q), repeat=len(free)):
            rows = [[0] * n for _ in range(r)]
            for i, c in enumerate(pivots):
                rows[i][c] = 1
            for (i, j), x in zip(free, values):
                rows[i][j] = x
            yield tuple(tuple(row) for row in rows)


def enumerate_grassmannian(n: int, r: int, q: Field | int,
                           order: Sequence[int] | None = None) -> list[Subspace]:
    """All r-dimensional subspaces of F_q^n, ascending in the tower order."""
    if not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= n, got r={r}, n={n}")
    field = as_field(q)
    spaces = [Subspace(field, n, m, _trusted=True) for m in _rref_matrices(field, n, r)]
    return sort_facets(spaces, order)


@lru_cache(maxsize=64)
def _all_subspaces(n: int, field: Field) -> tuple[Subspace, ...]:
    out = []
    for r in range(n + 1):
        out.extend(enumerate_grassmannian(n, r, field))
    return tuple(out)


def enumerate_all_subspaces(n: int, q: Field | int, max_subspaces: int | None = None) -> list[Subspace]:
    """Σ(F_q^n) ordered by dimension, then by the tower order."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    field = as_field(q)
    check_cap(n, field.q, max_subspaces)
    return list(_all_subspaces(n, field))


@lru_cache(maxsize=1 << 16)
def _subspaces_of(U: Subspace, r: int) -> tuple[Subspace, ...]:
    field, n = U.field, U.n
    out = []
    for coords in _rref_matrices(field, U.dim, r):
        vecs = [U.combination(c) for c in coords]
        out.append(subspace_from_generators(field, n, vecs))
    return tuple(out)


def subspaces_of(U: Subspace, r: int | None = None) -> list[Subspace]:
    """Subspaces of U (of dimension r, or all of them by dimension)."""
    if r is not None:
        if not 0 <= r <= U.dim:
            return []
        return list(_subspaces_of(U, r))
    out = []
    for d in range(U.dim + 1):
        out.extend(_subspaces_of(U, d))
    return out


def lines_of(U: Subspace) -> list[Subspace]:
    return subspaces_of(U, 1)
