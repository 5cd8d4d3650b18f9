"""
q-complexes: downward-closed families of subspaces of F_q^n.

Shelling orders are sequences of facets.  Functions that take positions in
an order (restriction_set, interval, sphere_link_check, ...) use 1-based
indices, so facet F_i of an order is ``order[i - 1]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import AmbientMismatchError, NotAShellingError
from .gflin import Field, Subspace, as_field, intersect, parse_subspaces
from .subspace import (enumerate_all_subspaces, enumerate_grassmannian, order_key,
                       sort_facets, subspaces_of)


class QComplex:
    """A finite downward-closed family of subspaces of F_q^n.

    Construction checks closure and raises ValueError if it fails; use
    generate() to close a family first.
    """

    def __init__(self, field: Field | int, n: int, faces: Iterable[Subspace]):
        self.field = as_field(field)
        self.n = n
        faces = frozenset(faces)
        for A in faces:
            if A.field != self.field or A.n != n:
                raise AmbientMismatchError(f"face {A} is not a subspace of F_{self.field.q}^{n}")
        for A in faces:
            for B in subspaces_of(A, A.dim - 1):
                if B not in faces:
                    raise ValueError(f"not downward closed: {B} ⊂ {A} is missing")
        self.faces = faces

    def __len__(self):
        return len(self.faces)

    def __iter__(self):
        return iter(self.sorted_faces)

    def __contains__(self, A):
        return A in self.faces

    def __eq__(self, other):
        if not isinstance(other, QComplex):
            return NotImplemented
        return self.field == other.field and self.n == other.n and self.faces == other.faces

    def __hash__(self):
        return hash((self.field, self.n, self.faces))

    def __repr__(self):
        return f"QComplex(q={self.field.q}, n={self.n}, faces={len(self.faces)})"

    @cached_property
    def sorted_faces(self) -> tuple[Subspace, ...]:
        return tuple(sorted(self.faces, key=lambda A: (A.dim, order_key(A))))

    @cached_property
    def facets(self) -> tuple[Subspace, ...]:
        """Inclusion-maximal faces, by dimension then tower order."""
        covered = set()
        for A in self.faces:
            covered.update(subspaces_of(A, A.dim - 1))
        return tuple(A for A in self.sorted_faces if A not in covered)

    @property
    def dim(self) -> int:
        if not self.faces:
            raise ValueError("the empty complex has no dimension")
        return max(A.dim for A in self.faces)

    @property
    def is_pure(self) -> bool:
        return len({F.dim for F in self.facets}) <= 1

    def punctured(self) -> tuple[Subspace, ...]:
        return tuple(A for A in self.sorted_faces if A.dim > 0)

    def puncture(self):
        from .homology import Poset
        return Poset.from_subspaces(self.punctured())


def facets(cx: QComplex) -> list[Subspace]:
    return list(cx.facets)


def is_pure(cx: QComplex) -> bool:
    return cx.is_pure


def dim(cx: QComplex) -> int:
    return cx.dim


def puncture(cx: QComplex):
    return cx.puncture()


def generate(generators: Iterable[Subspace], field: Field | int | None = None,
             n: int | None = None) -> QComplex:
    """The smallest q-complex containing every generator."""
    gens = list(generators)
    if gens:
        field, n = gens[0].field, gens[0].n
    elif field is None or n is None:
        raise ValueError("an empty generator list needs an explicit field and n")
    faces = set()
    for A in gens:
        if A.field != as_field(field) or A.n != n:
            raise AmbientMismatchError("generators live in different ambient spaces")
        if A not in faces:
            faces.update(subspaces_of(A))
    return QComplex(field, n, faces)


def q_sphere(n: int, q: Field | int) -> QComplex:
    """All proper subspaces of F_q^n."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    field = as_field(q)
    return QComplex(field, n, [A for A in enumerate_all_subspaces(n, field) if A.dim < n])


def sigma(F: Subspace) -> QComplex:
    """<F>: every subspace of F."""
    return QComplex(F.field, F.n, subspaces_of(F))


# shellings

@dataclass
class ShellingCertificate:
    """Outcome of is_shelling.

    ``witnesses[(i, j)] = k`` (1-based, i < j, k < j) is the least k with
    F_i ∩ F_j ⊆ F_k ∩ F_j and dim(F_k ∩ F_j) = r - 1.  On failure
    ``violation`` is the first (i, j) without such a k.
    """

    ok: bool
    witnesses: dict[tuple[int, int], int] = dc_field(default_factory=dict)
    violation: tuple[int, int] | None = None

    def __bool__(self):
        return self.ok


def _check_order(cx: QComplex | None, order: Sequence[Subspace]):
    order = tuple(order)
    if len({F.dim for F in order}) > 1:
        raise ValueError("a shelling order must be equidimensional")
    if len(set(order)) != len(order):
        raise ValueError("facets repeat in the order")
    if cx is not None:
        if not cx.is_pure:
            raise ValueError("shellings are defined for pure complexes only")
        if set(order) != set(cx.facets):
            raise ValueError("the order is not a permutation of the facets")
    return order


def is_shelling(cx: QComplex | None, order: Sequence[Subspace]) -> ShellingCertificate:
    """Check the pairwise shelling criterion on a facet order.

    Pass ``cx=None`` to test an order without a complex object; the order's
    facets then define the complex.
    """
    order = _check_order(cx, order)
    if not order:
        return ShellingCertificate(True)
    r = order[0].dim
    witnesses = {}
    for j in range(1, len(order)):
        Fj = order[j]
        cuts = [intersect(order[k], Fj) for k in range(j)]
        hyper = [(k, cuts[k]) for k in range(j) if cuts[k].dim == r - 1]
        for i in range(j):
            for k, G in hyper:
                if cuts[i].is_subspace_of(G):
                    witnesses[(i + 1, j + 1)] = k + 1
                    break
            else:
                return ShellingCertificate(False, witnesses, (i + 1, j + 1))
    return ShellingCertificate(True, witnesses)


def shelling_via_order(cx: QComplex, order: Sequence[int] | None = None) -> tuple[Subspace, ...]:
    """Facets ascending in the tower order (element order optional)."""
    if not cx.is_pure:
        raise ValueError("shellings are defined for pure complexes only")
    return tuple(sort_facets(cx.facets, order))


def _bounds(order, *idx):
    t = len(order)
    for i in idx:
        if not 1 <= i <= t:
            raise IndexError(f"index {i} outside 1..{t}")


def restriction_set(order: Sequence[Subspace], i: int, j: int) -> frozenset:
    """R_ij: vectors x of F_i with <x> ⊕ (F_i ∩ F_j) = F_i  (j < i)."""
    _bounds(order, i, j)
    if not j < i:
        raise IndexError(f"restriction sets need j < i, got i={i}, j={j}")
    Fi = order[i - 1]
    G = intersect(Fi, order[j - 1])
    if G.dim != Fi.dim - 1:
        return frozenset()
    return frozenset(x for x in Fi.vectors if x not in G)


def restriction_sets(order: Sequence[Subspace], i: int) -> dict[int, frozenset]:
    return {j: restriction_set(order, i, j) for j in range(1, i)}


def interval(order: Sequence[Subspace], i: int) -> frozenset:
    """I_i: faces of <F_i> meeting every nonempty R_ij with j < i."""
    _bounds(order, i)
    Fi = order[i - 1]
    rsets = [R for R in restriction_sets(order, i).values() if R]
    return frozenset(A for A in subspaces_of(Fi)
                     if all(not A.point_set.isdisjoint(R) for R in rsets))


@dataclass
class IntervalPartition:
    intervals: list[frozenset]
    restriction_sets: dict[tuple[int, int], frozenset]
    violation: str | None = None

    @property
    def ok(self) -> bool:
        return self.violation is None

    @property
    def sizes(self) -> list[int]:
        return [len(I) for I in self.intervals]


def partial_complex(order: Sequence[Subspace], i: int) -> frozenset:
    """Faces of Δ_i = <F_1, ..., F_i>."""
    faces = set()
    for F in order[:i]:
        faces.update(subspaces_of(F))
    return frozenset(faces)


def verify_interval_partition(cx: QComplex, order: Sequence[Subspace]) -> IntervalPartition:
    """Check Δ_i = I_i ∪ Δ_(i-1) with I_i ∩ Δ_(i-1) = ∅ for every i."""
    order = tuple(order)
    cert = is_shelling(cx, order)
    if not cert.ok:
        raise NotAShellingError(f"not a shelling: criterion fails at (i, j) = {cert.violation}")
    intervals, rsets = [], {}
    previous = frozenset()
    violation = None
    for i in range(1, len(order) + 1):
        for j, R in restriction_sets(order, i).items():
            rsets[(i, j)] = R
        I = interval(order, i)
        intervals.append(I)
        current = partial_complex(order, i)
        if violation is None:
            if I & previous:
                violation = f"I_{i} meets Δ_{i - 1}"
            elif I | previous != current:
                violation = f"Δ_{i} != I_{i} ∪ Δ_{i - 1}"
        previous = current
    if violation is None:
        union = frozenset().union(*intervals) if intervals else frozenset()
        if union != cx.faces or sum(len(I) for I in intervals) != len(cx.faces):
            violation = "intervals do not partition the faces"
    return IntervalPartition(intervals, rsets, violation)


# cones and the homology hypotheses

@dataclass(frozen=True)
class ConeApex:
    """A face inside every facet; ``hypothesis`` records whether every
    intersection of facets through a common face is again a face."""

    apex: Subspace
    hypothesis: bool

    @property
    def is_cone(self) -> bool:
        return self.hypothesis


def _maximal_elements(faces: frozenset) -> list[Subspace]:
    return [A for A in faces if not any(B.dim > A.dim and A.is_subspace_of(B) for B in faces)]


def intersection_closure_holds(faces: Iterable[Subspace]) -> bool:
    """Every intersection of facets containing a fixed face is a face."""
    faces = frozenset(faces)
    tops = _maximal_elements(faces)
    for X in faces:
        through = {F for F in tops if X.is_subspace_of(F)}
        closed = set(through)
        frontier = list(through)
        while frontier:
            fresh = []
            for A in frontier:
                for B in through:
                    C = intersect(A, B)
                    if C not in closed:
                        if C not in faces:
                            return False
                        closed.add(C)
                        fresh.append(C)
            frontier = fresh
    return True


def cone_apex(faces: Iterable[Subspace] | QComplex) -> ConeApex | None:
    """Look for a face contained in every facet of a punctured complex.

    Accepts a QComplex (punctured first) or a collection of nonzero
    subspaces.  The apex returned is the lowest-dimensional candidate,
    least in the tower order.
    """
    if isinstance(faces, QComplex):
        faces = faces.punctured()
    faces = frozenset(A for A in faces if A.dim > 0)
    if not faces:
        return None
    tops = _maximal_elements(faces)
    common = [A for A in faces if all(A.is_subspace_of(F) for F in tops)]
    if not common:
        return None
    apex = min(common, key=lambda A: (A.dim, order_key(A)))
    return ConeApex(apex, intersection_closure_holds(faces))


def acyclicity_hypothesis(order: Sequence[Subspace], ell: int) -> dict[int, bool]:
    """For 2 <= i <= ell: does the union of R_ij (j < i) miss a nonzero vector of F_i?"""
    _bounds(order, ell)
    out = {}
    for i in range(2, ell + 1):
        covered = frozenset().union(*restriction_sets(order, i).values())
        nonzero = order[i - 1].point_set - {(0,) * order[i - 1].n}
        out[i] = covered != nonzero
    return out


def sphere_link_check(order: Sequence[Subspace], i: int) -> bool:
    """Is Σ̊(F_i) ∩ Δ̊_(i-1) exactly the proper nonzero subspaces of F_i?"""
    _bounds(order, i)
    if i < 2:
        raise IndexError("sphere_link_check needs i >= 2")
    Fi = order[i - 1]
    earlier = order[: i - 1]
    in_prev = {A for A in subspaces_of(Fi) if A.dim > 0
               and any(A.is_subspace_of(F) for F in earlier)}
    proper = {A for A in subspaces_of(Fi) if 0 < A.dim < Fi.dim}
    return in_prev == proper


def sphere_shelling(n: int, q: Field | int, a=None) -> tuple[tuple[Subspace, ...], int]:
    """Facets of the q-sphere with those through a first.

    Returns (order, ell), ell being the number of hyperplanes containing a.
    Each block is sorted by the tower order; a defaults to e_1.
    """
    if n < 2:
        raise ValueError("the sphere shelling needs n >= 2")
    field = as_field(q)
    a = tuple(a) if a is not None else (1,) + (0,) * (n - 1)
    if len(a) != n or not any(a):
        raise ValueError("a must be a nonzero vector of length n")
    hyperplanes = enumerate_grassmannian(n, n - 1, field)
    through = [F for F in hyperplanes if a in F]
    others = [F for F in hyperplanes if a not in F]
    return tuple(through + others), len(through)


# complex file format

def load_complex(text: str) -> tuple[QComplex, bool]:
    """Parse a face list and close it downward.

    Returns the complex and whether closure added faces.
    """
    field, n, spaces = parse_subspaces(text)
    cx = generate(spaces, field, n)
    return cx, len(cx.faces) != len(set(spaces))
