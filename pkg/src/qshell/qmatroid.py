"""
q-matroids given by fully materialised rank tables.

The axiom checks here are exhaustive: every subspace, every pair, every
triple the axioms quantify over.  Violations are collected into an
AxiomReport instead of raised, so a bad table can be diagnosed in one pass.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Callable, Iterable

from .errors import AmbientMismatchError, AxiomError, FormatError
from .gflin import (Field, Subspace, as_field, intersect, parse_header, span,
                    subspace_from_generators, subspace_sum)
from .qcomplex import QComplex
from .subspace import enumerate_all_subspaces, subspaces_of


@dataclass
class AxiomReport:
    """Violations per axiom label; an empty list means the axiom holds."""

    suite: str
    violations: dict[str, list] = dc_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not any(self.violations.values())

    def failed(self) -> list[str]:
        return [name for name, v in self.violations.items() if v]

    def lines(self) -> list[str]:
        out = []
        for name, v in self.violations.items():
            status = "ok" if not v else f"FAIL ({len(v)} violations, first: {v[0]})"
            out.append(f"{self.suite} {name}: {status}")
        return out

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "ok": self.ok,
            "axioms": {name: {"ok": not v, "violations": len(v),
                              "first": repr(v[0]) if v else None}
                       for name, v in self.violations.items()},
        }


class RankOracle:
    """A rank function on Σ(F_q^n), stored as a table."""

    def __init__(self, field: Field, n: int, table: dict[Subspace, int],
                 max_subspaces: int | None = None):
        self.field = field
        self.n = n
        self.spaces = tuple(enumerate_all_subspaces(n, field, max_subspaces))
        missing = [A for A in self.spaces if A not in table]
        if missing:
            raise ValueError(f"rank table misses {len(missing)} subspaces, e.g. {missing[0]}")
        if len(table) != len(self.spaces):
            raise ValueError("rank table has entries outside Σ(E)")
        for A, v in table.items():
            if not isinstance(v, int) or v < 0:
                raise ValueError(f"rank of {A} must be a nonnegative integer, got {v!r}")
        self.table = dict(table)

    @classmethod
    def from_function(cls, field: Field | int, n: int, fn: Callable[[Subspace], int],
                      max_subspaces: int | None = None) -> "RankOracle":
        field = as_field(field)
        spaces = enumerate_all_subspaces(n, field, max_subspaces)
        return cls(field, n, {A: fn(A) for A in spaces}, max_subspaces)

    def __call__(self, A: Subspace) -> int:
        return self.table[A]

    rank = __call__

    @property
    def full(self) -> Subspace:
        return self.spaces[-1]

    @property
    def matroid_rank(self) -> int:
        return self.table[self.full]

    def __eq__(self, other):
        if not isinstance(other, RankOracle):
            return NotImplemented
        return self.field == other.field and self.n == other.n and self.table == other.table

    def __repr__(self):
        return f"RankOracle(q={self.field.q}, n={self.n}, rank={self.matroid_rank})"

    @cached_property
    def axiom_report(self) -> AxiomReport:
        return verify_rank_axioms(self)

    def require_axioms(self):
        rep = self.axiom_report
        if not rep.ok:
            raise AxiomError(f"not a q-matroid: {', '.join(rep.failed())} violated", rep)


@dataclass(frozen=True)
class BasisFamily:
    bases: frozenset

    def __post_init__(self):
        if not self.bases:
            raise ValueError("a basis family is nonempty")
        if len({B.dim for B in self.bases}) != 1:
            raise ValueError("bases must share one dimension")

    @property
    def dim(self) -> int:
        return next(iter(self.bases)).dim

    def __contains__(self, B):
        return B in self.bases

    def __iter__(self):
        return iter(self.bases)

    def __len__(self):
        return len(self.bases)


def uniform_matroid(k: int, n: int, q: Field | int, max_subspaces: int | None = None) -> RankOracle:
    """U_q(k, n): rank min(dim A, k)."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    return RankOracle.from_function(q, n, lambda A: min(A.dim, k), max_subspaces)


def free_matroid(n: int, q: Field | int) -> RankOracle:
    return RankOracle.from_function(q, n, lambda A: A.dim)


def verify_rank_axioms(M: RankOracle) -> AxiomReport:
    rho, spaces = M.table, M.spaces
    r1 = [A for A in spaces if not 0 <= rho[A] <= A.dim]
    r2 = [(A, B) for B in spaces for A in subspaces_of(B)
          if A != B and rho[A] > rho[B]]
    r3 = []
    for i, A in enumerate(spaces):
        for B in spaces[i:]:
            if rho[subspace_sum(A, B)] + rho[intersect(A, B)] > rho[A] + rho[B]:
                r3.append((A, B))
    return AxiomReport("rank", {"r1": r1, "r2": r2, "r3": r3})


def independent_spaces(M: RankOracle) -> QComplex:
    """The q-complex Δ_M of subspaces A with ρ(A) = dim A."""
    M.require_axioms()
    return QComplex(M.field, M.n, [A for A in M.spaces if M.table[A] == A.dim])


def bases(M: RankOracle) -> BasisFamily:
    M.require_axioms()
    r = M.matroid_rank
    return BasisFamily(frozenset(A for A in M.spaces if A.dim == r and M.table[A] == r))


def _ambient_of(family, field, n):
    if field is None or n is None:
        if not family:
            raise ValueError("cannot infer the ambient space of an empty family")
        A = next(iter(family))
        field, n = A.field, A.n
    field = as_field(field)
    for A in family:
        if A.field != field or A.n != n:
            raise AmbientMismatchError("family members live in different ambient spaces")
    return field, n


def _maximal(members: list[Subspace]) -> list[Subspace]:
    return [B for B in members
            if not any(C.dim > B.dim and B.is_subspace_of(C) for C in members)]


def _pair_condition(spaces, maximal_in):
    """Check the shared shape of (i4) and (b4).

    For all A1, A2 and maximal I1 in A1, I2 in A2 there must be a maximal J
    in A1 + A2 with J ⊆ I1 + I2.
    """
    memo = {}
    bad = []
    for a, A1 in enumerate(spaces):
        for A2 in spaces[a:]:
            S = subspace_sum(A1, A2)
            top = maximal_in[S]
            for I1 in maximal_in[A1]:
                for I2 in maximal_in[A2]:
                    T = subspace_sum(I1, I2)
                    key = (S, T)
                    hit = memo.get(key)
                    if hit is None:
                        hit = memo[key] = any(J.is_subspace_of(T) for J in top)
                    if not hit:
                        bad.append((A1, A2, I1, I2))
    return bad


def _augment(B: Subspace, A: Subspace, family) -> Subspace | None:
    for x in A.monic_vectors:
        if x not in B:
            C = subspace_sum(B, span(B.field, B.n, x))
            if C in family:
                return x
    return None


def verify_independence_axioms(family: Iterable[Subspace], field: Field | int | None = None,
                               n: int | None = None) -> AxiomReport:
    fam = frozenset(family)
    field, n = _ambient_of(fam, field, n)
    rep = AxiomReport("independence", {"i1": [], "i2": [], "i3": [], "i4": []})
    if not fam:
        rep.violations["i1"].append("family is empty")
        return rep
    members = sorted(fam, key=lambda A: A.dim)
    rep.violations["i2"] = [(A, B) for B in members for A in subspaces_of(B) if A not in fam]
    i3 = rep.violations["i3"]
    for A in members:
        for B in members:
            if A.dim > B.dim and _augment(B, A, fam) is None:
                i3.append((A, B))
    spaces = enumerate_all_subspaces(n, field)
    maximal_in = {X: _maximal([B for B in members if B.is_subspace_of(X)]) for X in spaces}
    rep.violations["i4"] = _pair_condition(spaces, maximal_in)
    return rep


def rank_from_independents(family: Iterable[Subspace], field: Field | int | None = None,
                           n: int | None = None) -> RankOracle:
    """ρ(A) = max dim of a family member inside A."""
    fam = frozenset(family)
    field, n = _ambient_of(fam, field, n)
    rep = verify_independence_axioms(fam, field, n)
    if not rep.ok:
        raise AxiomError(f"not an independence family: {', '.join(rep.failed())} violated", rep)
    members = sorted(fam, key=lambda A: -A.dim)
    return RankOracle.from_function(
        field, n, lambda A: next(B.dim for B in members if B.is_subspace_of(A)))


def verify_basis_axioms(family: BasisFamily | Iterable[Subspace], field: Field | int | None = None,
                        n: int | None = None) -> AxiomReport:
    fam = frozenset(family.bases if isinstance(family, BasisFamily) else family)
    field, n = _ambient_of(fam, field, n)
    rep = AxiomReport("basis", {"b1": [], "b2": [], "b3": [], "b4": []})
    if not fam:
        rep.violations["b1"].append("family is empty")
        return rep
    members = sorted(fam, key=lambda A: A.dim)
    rep.violations["b2"] = [(B1, B2) for B1 in members for B2 in members
                            if B1.dim < B2.dim and B1.is_subspace_of(B2)]
    b3 = rep.violations["b3"]
    for B1 in members:
        for B2 in members:
            if B1 == B2:
                continue
            common = intersect(B1, B2)
            for C in subspaces_of(B2, B1.dim - 1):
                if common.is_subspace_of(C) and _augment(C, B1, fam) is None:
                    b3.append((B1, B2, C))
    spaces = enumerate_all_subspaces(n, field)
    maximal_in = {X: _maximal(list({intersect(B, X) for B in members})) for X in spaces}
    rep.violations["b4"] = _pair_condition(spaces, maximal_in)
    return rep


def dual_basis_exchange(M: RankOracle, B1: Subspace, B2: Subspace, y) -> tuple[Subspace, tuple]:
    """Find U and x with B1∩B2 ⊆ U, B1 = U ⊕ <x>, and U ⊕ <y> a basis.

    Runs the induction on s = rank - dim(B1 ∩ B2): for s > 1 a basis B2'
    with larger overlap with B1 and still containing y is built through the
    basis exchange axiom, and the search recurses on (B1, B2', y).
    """
    family = bases(M)
    y = tuple(y)
    if B1 not in family or B2 not in family:
        raise ValueError("B1 and B2 must be bases of M")
    if B1 == B2:
        raise ValueError("B1 and B2 must differ")
    if y not in B2 or y not in B2.point_set - B1.point_set:
        raise ValueError("y must lie in B2 but not in B1")
    field, n = M.field, M.n
    r = M.matroid_rank
    line_y = span(field, n, y)
    while True:
        common = intersect(B1, B2)
        s = r - common.dim
        if s == 1:
            x = next(v for v in B1.monic_vectors if v not in B2)
            U = common
            break
        # B2 = A ⊕ <y> ⊕ <y'> with B1∩B2 ⊆ A
        D = subspace_sum(common, line_y)
        y2 = next(v for v in B2.monic_vectors if v not in D)
        line_y2 = span(field, n, y2)
        A = common
        while A.dim < r - 2:
            grown = subspace_sum(subspace_sum(A, line_y), line_y2)
            z = next(v for v in B2.monic_vectors if v not in grown)
            A = subspace_sum(A, span(field, n, z))
        C = subspace_sum(A, line_y)
        x2 = _augment(C, B1, family)
        if x2 is None:
            raise AxiomError(f"no exchange witness for C={C} in B1={B1}: input is not a q-matroid")
        new_B2 = subspace_sum(C, span(field, n, x2))
        if intersect(B1, new_B2).dim <= common.dim:
            raise AxiomError("exchange step did not enlarge B1 ∩ B2")
        B2 = new_B2
    if subspace_sum(U, line_y) not in family:
        raise AxiomError(f"U ⊕ <y> = {subspace_sum(U, line_y)} is not a basis")
    return U, x


def exchange_triples(M: RankOracle):
    """All (B1, B2, y) with B1 ≠ B2 bases and y ∈ B2 \\ B1, in a fixed order."""
    family = sorted(bases(M), key=M.spaces.index)
    for B1 in family:
        for B2 in family:
            if B1 != B2:
                for y in B2.vectors:
                    if y not in B1:
                        yield B1, B2, y


# rank-table file format

def _format_space(A: Subspace) -> str:
    if A.dim == 0:
        return "0"
    return ";".join(",".join(map(str, r)) for r in A.basis)


def format_rank_table(M: RankOracle) -> str:
    lines = [f"q={M.field.q} n={M.n}"]
    lines += [f"{_format_space(A)} | {M.table[A]}" for A in M.spaces]
    return "\n".join(lines) + "\n"


def parse_rank_table(text: str, max_subspaces: int | None = None) -> RankOracle:
    lines = [l.strip() for l in text.splitlines()]
    lines = [l for l in lines if l and not l.startswith("#")]
    if not lines:
        raise FormatError("empty rank table")
    field, n = parse_header(lines[0])
    table = {}
    for lineno, line in enumerate(lines[1:], 2):
        if line.count("|") != 1:
            raise FormatError(f"line {lineno}: expected '<rows> | <rank>'")
        left, right = (s.strip() for s in line.split("|"))
        try:
            value = int(right)
            if left == "0":
                rows = []
            else:
                rows = [tuple(int(x) for x in row.split(",")) for row in left.split(";")]
        except ValueError as exc:
            raise FormatError(f"line {lineno}: non-integer entry") from exc
        if any(len(r) != n or not all(0 <= x < field.q for x in r) for r in rows):
            raise FormatError(f"line {lineno}: rows must have {n} entries in [0, {field.q})")
        A = subspace_from_generators(field, n, rows)
        if A in table:
            raise FormatError(f"line {lineno}: subspace {A} listed twice")
        table[A] = value
    try:
        return RankOracle(field, n, table, max_subspaces)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
