"""
Reduced integral homology of finite posets via their order complexes.

A punctured q-complex is a finite poset under inclusion; its homology is
taken to be the simplicial homology of the order complex (all chains).
Ranks and torsion come from Smith normal forms over Z with Python ints.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from math import gcd
from typing import Hashable, Iterable, Sequence

from . import __version__


@dataclass(frozen=True)
class Poset:
    """Elements 0..m-1 with a transitively closed strict order ``less``."""

    elements: tuple
    less: frozenset  # pairs (a, b) of indices with a < b

    def __post_init__(self):
        m = len(self.elements)
        for a, b in self.less:
            if not (0 <= a < m and 0 <= b < m):
                raise ValueError(f"relation pair ({a}, {b}) out of range")
            if a == b:
                raise ValueError("a strict order is irreflexive")
            if (b, a) in self.less:
                raise ValueError(f"antisymmetry fails on ({a}, {b})")
        up = {}
        for a, b in self.less:
            up.setdefault(a, []).append(b)
        for a, b in self.less:
            for c in up.get(b, ()):
                if (a, c) not in self.less:
                    raise ValueError(f"transitivity fails: {a} < {b} < {c}")

    def above(self, a: int) -> list[int]:
        return sorted(c for (b, c) in self.less if b == a)

    @classmethod
    def from_relation(cls, elements: Sequence[Hashable], less) -> "Poset":
        """Build from a predicate less(x, y) on the elements."""
        elements = tuple(elements)
        pairs = frozenset((i, j) for i, x in enumerate(elements)
                          for j, y in enumerate(elements) if i != j and less(x, y))
        return cls(elements, pairs)

    @classmethod
    def from_subspaces(cls, spaces: Iterable) -> "Poset":
        """Inclusion poset; elements should be listed by nondecreasing dimension."""
        spaces = tuple(spaces)
        return cls.from_relation(spaces, lambda a, b: a.dim < b.dim and a.is_subspace_of(b))

    def __len__(self):
        return len(self.elements)


@dataclass(frozen=True)
class OrderComplex:
    """``simplices[p]`` lists the p-simplices as increasing chains of indices."""

    poset: Poset
    simplices: tuple

    @property
    def dim(self) -> int:
        return len(self.simplices) - 1

    def counts(self) -> list[int]:
        return [len(s) for s in self.simplices]


def order_complex(P: Poset) -> OrderComplex:
    up = {a: [] for a in range(len(P))}
    for a, b in sorted(P.less):
        up[a].append(b)
    layers = [[(a,) for a in range(len(P))]]
    while layers[-1]:
        nxt = [c + (b,) for c in layers[-1] for b in up[c[-1]]]
        layers.append(nxt)
    layers.pop()
    # each chain is increasing in the poset; list them in a fixed order
    return OrderComplex(P, tuple(tuple(sorted(layer)) for layer in layers))


def boundary_matrix(K: OrderComplex, p: int) -> list[list[int]]:
    """∂_p as a dense (#(p-1)-simplices) x (#p-simplices) integer matrix.

    Chains are listed in increasing poset order; dropping vertex i carries
    sign (-1)^i.  ∂_0 is the augmentation onto the single (-1)-simplex.
    """
    if p < 0:
        raise ValueError("p must be >= 0")
    cols = K.simplices[p] if p <= K.dim else []
    if p == 0:
        return [[1] * len(cols)]
    rows = K.simplices[p - 1]
    index = {s: i for i, s in enumerate(rows)}
    mat = [[0] * len(cols) for _ in rows]
    for j, s in enumerate(cols):
        for i in range(len(s)):
            mat[index[s[:i] + s[i + 1:]]][j] += -1 if i % 2 else 1
    return mat


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> tuple[int, list[int]]:
    """Rank and invariant factors d_1 | d_2 | ... of an integer matrix.

    Row/column elimination pivoting on the smallest nonzero absolute value,
    on a sparse copy (row -> {col: value}).
    """
    rows = {}
    cols: dict[int, set] = {}
    for i, r in enumerate(matrix):
        d = {j: int(v) for j, v in enumerate(r) if v}
        if d:
            rows[i] = d
            for j in d:
                cols.setdefault(j, set()).add(i)
    diagonal = []
    while rows:
        # pivot: smallest |value|, ties broken by sparsity then position
        best = None
        for i, r in rows.items():
            for j, v in r.items():
                key = (abs(v), len(r) + len(cols[j]), i, j)
                if best is None or key < best[0]:
                    best = (key, i, j)
                    if key[0] == 1 and key[1] == 2:
                        break
        _, pi, pj = best
        while True:
            piv = rows[pi][pj]
            done = True
            # clear column pj with row operations
            for i in sorted(cols[pj] - {pi}):
                f = rows[i][pj] // piv
                _row_axpy(rows, cols, i, pi, -f)
                if pj in rows.get(i, {}):
                    done = False
            # clear row pi with column operations
            for j in sorted(set(rows[pi]) - {pj}):
                f = rows[pi][j] // piv
                _col_axpy(rows, cols, j, pj, -f)
                if j in rows[pi]:
                    done = False
            if done:
                break
            # a remainder survived: pivot on the smallest entry left in the
            # pivot row/column and repeat
            cands = [(abs(rows[i][pj]), i, pj) for i in cols[pj]] + \
                    [(abs(v), pi, j) for j, v in rows[pi].items()]
            _, pi, pj = min(cands)
        diagonal.append(abs(rows[pi][pj]))
        del rows[pi]
        cols[pj].discard(pi)
    return len(diagonal), _invariant_factors(diagonal)


def _row_axpy(rows, cols, i, k, f):
    """row_i += f * row_k"""
    if not f:
        return
    ri = rows[i]
    for j, v in rows[k].items():
        nv = ri.get(j, 0) + f * v
        if nv:
            if j not in ri:
                cols.setdefault(j, set()).add(i)
            ri[j] = nv
        elif j in ri:
            del ri[j]
            cols[j].discard(i)
    if not ri:
        del rows[i]


def _col_axpy(rows, cols, j, k, f):
    """col_j += f * col_k"""
    if not f:
        return
    cj = cols.setdefault(j, set())
    for i in list(cols.get(k, ())):
        r = rows[i]
        nv = r.get(j, 0) + f * r[k]
        if nv:
            r[j] = nv
            cj.add(i)
        elif j in r:
            del r[j]
            cj.discard(i)


def _invariant_factors(diagonal: list[int]) -> list[int]:
    d = sorted(diagonal)
    # replace pairs by (gcd, lcm) until the divisibility chain holds
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            g = gcd(d[i], d[j])
            d[i], d[j] = g, d[i] * d[j] // g
    return d


@dataclass(eq=False)
class HomologyReport:
    """Reduced homology by degree, from -1 up to ``top``."""

    betti: dict[int, int]
    torsion: dict[int, list[int]] = dc_field(default_factory=dict)

    @property
    def top(self) -> int:
        return max(self.betti)

    def nonzero(self) -> dict[int, tuple[int, tuple]]:
        return {p: (b, tuple(self.torsion.get(p, ())))
                for p, b in sorted(self.betti.items()) if b or self.torsion.get(p)}

    @property
    def is_acyclic(self) -> bool:
        return not self.nonzero()

    def __eq__(self, other):
        if not isinstance(other, HomologyReport):
            return NotImplemented
        return self.nonzero() == other.nonzero()

    def euler(self) -> int:
        return sum((-1) ** p * b for p, b in self.betti.items())

    def degrees(self) -> list[dict]:
        """Serialized degrees, -1 upward, trailing zero groups dropped."""
        nz = self.nonzero()
        last = max(nz) if nz else -1
        return [{"p": p, "betti": self.betti.get(p, 0), "torsion": list(self.torsion.get(p, []))}
                for p in range(-1, last + 1)]

    def describe(self) -> str:
        parts = []
        for p, (b, tors) in self.nonzero().items():
            group = [f"Z^{b}" if b > 1 else "Z"] if b else []
            group += [f"Z/{t}" for t in tors]
            parts.append(f"H~_{p} = {' + '.join(group)}")
        return ", ".join(parts) if parts else "acyclic (all reduced homology zero)"


def reduced_homology(K: OrderComplex) -> HomologyReport:
    counts = [1] + K.counts()  # index p+1 holds the number of p-simplices
    top = K.dim
    ranks, factors = {}, {}
    for p in range(0, top + 1):
        ranks[p], inv = smith_normal_form(boundary_matrix(K, p))
        factors[p] = [d for d in inv if d > 1]
    betti, torsion = {}, {}
    for p in range(-1, max(top, -1) + 1):
        cycles = counts[p + 1] - ranks.get(p, 0)
        betti[p] = cycles - ranks.get(p + 1, 0)
        torsion[p] = factors.get(p + 1, [])
    return HomologyReport(betti, torsion)


def finite_space_homology(spaces) -> HomologyReport:
    """Homology of a punctured complex (QComplex, Poset, or list of nonzero subspaces)."""
    from .qcomplex import QComplex
    if isinstance(spaces, QComplex):
        P = spaces.puncture()
    elif isinstance(spaces, Poset):
        P = spaces
    else:
        P = Poset.from_subspaces(sorted((A for A in spaces if A.dim > 0), key=lambda A: A.dim))
    return reduced_homology(order_complex(P))


def sphere_betti(n: int, q: int) -> int:
    """Rank of the one nonzero reduced homology group of the punctured q-sphere in F_q^n."""
    return q ** (n * (n - 1) // 2)


def expected_sphere_homology(n: int, q: int) -> HomologyReport:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    betti = {p: 0 for p in range(-1, n - 1)}
    betti[n - 2] = sphere_betti(n, q)
    return HomologyReport(betti, {p: [] for p in betti})


def shelling_homology_prediction(d: int, q: int, t: int, ell: int) -> HomologyReport:
    """Homology forced on a d-dimensional shelled complex whose last t - ell
    facets each meet the earlier ones in a punctured q-sphere, and whose
    first ell facets span a contractible piece: Z^((t-ell)·c_d) in degree d-1."""
    betti = {p: 0 for p in range(-1, d)}
    betti[d - 1] = (t - ell) * sphere_betti(d, q)
    return HomologyReport(betti, {p: [] for p in betti})


def euler_check(K: OrderComplex, report: HomologyReport) -> bool:
    """Reduced Euler characteristic from simplex counts vs. from Betti numbers."""
    chi = sum((-1) ** p * c for p, c in enumerate(K.counts())) - 1
    return chi == report.euler()


def report_json(report: HomologyReport, *, q: int, n: int, complex_kind: str,
                euler_ok: bool, params: dict | None = None, extra: dict | None = None) -> str:
    doc = {
        "q": q,
        "n": n,
        "complex": complex_kind,
        "degrees": report.degrees(),
        "euler_ok": euler_ok,
        "version": __version__,
        "params": params or {},
    }
    if extra:
        doc.update(extra)
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"
