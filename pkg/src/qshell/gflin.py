"""
Exact arithmetic over GF(q) and linear algebra on subspaces of F_q^n.

Field elements are encoded as integers in [0, q): the coefficient vector of
the element in the polynomial basis 1, x, ..., x^(k-1), read base p with the
constant coefficient least significant.  Vectors are plain tuples of these
integers; matrices are tuples of row vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product
from typing import Iterable, Sequence

from .errors import AmbientMismatchError, FieldMismatchError, FormatError

Vector = tuple
Matrix = tuple


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def factor_prime_power(q: int) -> tuple[int, int]:
    """Return (p, k) with q = p**k, or raise ValueError."""
    if q < 2:
        raise ValueError(f"q must be a prime power >= 2, got {q}")
    p = 2
    while q % p:
        p += 1
    k = 0
    m = q
    while m % p == 0:
        m //= p
        k += 1
    if m != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, k


# polynomials over GF(p): coefficient lists, lowest degree first

def _poly_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, m, p):
    a = _poly_trim(a)
    m = _poly_trim(m)
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        a = _poly_trim(a)
    return a


def _monic_polys(degree, p):
    for low in product(range(p), repeat=degree):
        yield list(low) + [1]


def is_irreducible(coeffs: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    f = _poly_trim(coeffs)
    k = len(f) - 1
    if k < 1:
        return False
    for d in range(1, k // 2 + 1):
        for g in _monic_polys(d, p):
            if not _poly_mod(f, g, p):
                return False
    return True


def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree k over GF(p).

    Coefficient lists are compared constant term first.
    """
    for f in _monic_polys(k, p):
        if is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("unreachable: irreducibles exist in every degree")


class Field:
    """The finite field GF(p^k) with table-driven arithmetic on int codes."""

    def __init__(self, p: int, k: int = 1, modulus: Sequence[int] | None = None):
        if not _is_prime(p):
            raise ValueError(f"characteristic must be prime, got {p}")
        if k < 1:
            raise ValueError(f"extension degree must be >= 1, got {k}")
        if k == 1:
            modulus = (0, 1)
        elif modulus is None:
            modulus = smallest_irreducible(p, k)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(_poly_trim(modulus)) != k + 1 or modulus[-1] != 1:
                raise ValueError(f"modulus must be monic of degree {k}")
            if not is_irreducible(modulus, p):
                raise ValueError(f"modulus {modulus} is reducible over GF({p})")
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = tuple(modulus)
        self._build_tables()

    def _encode(self, coeffs):
        v = 0
        for c in reversed(coeffs):
            v = v * self.p + c
        return v

    def _decode(self, a):
        out = []
        for _ in range(self.k):
            a, c = divmod(a, self.p)
            out.append(c)
        return out

    def _poly_mulmod(self, a, b):
        p = self.p
        ca, cb = self._decode(a), self._decode(b)
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] = (prod[i + j] + x * y) % p
        red = _poly_mod(prod, self.modulus, p)
        return self._encode(red + [0] * (self.k - len(red)))

    def _build_tables(self):
        q, p = self.q, self.p
        if self.k == 1:
            add = [[(a + b) % p for b in range(q)] for a in range(q)]
            mul = [[(a * b) % p for b in range(q)] for a in range(q)]
        else:
            dec = [self._decode(a) for a in range(q)]
            add = [[self._encode([(x + y) % p for x, y in zip(dec[a], dec[b])])
                    for b in range(q)] for a in range(q)]
            mul = [[self._poly_mulmod(a, b) for b in range(q)] for a in range(q)]
        neg = [add[a].index(0) for a in range(q)]
        inv = [0] * q
        for a in range(1, q):
            row = mul[a]
            inv[a] = row.index(1)
            if row[inv[a]] != 1:
                raise AssertionError("modulus is not irreducible")
        self.add_table = tuple(tuple(r) for r in add)
        self.mul_table = tuple(tuple(r) for r in mul)
        self.neg_table = tuple(neg)
        self.inv_table = tuple(inv)
        self.sub_table = tuple(tuple(add[a][neg[b]] for b in range(q)) for a in range(q))

    # int-level arithmetic

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.sub_table[a][b]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self.inv_table[a]

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(self, value)

    @property
    def elements(self) -> range:
        return range(self.q)

    def _key(self):
        return (self.p, self.k, self.modulus)

    def __eq__(self, other):
        return isinstance(other, Field) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.k == 1:
            return f"GF({self.q})"
        return f"GF({self.q}, modulus={list(self.modulus)})"


@lru_cache(maxsize=None)
def gf(q: int) -> Field:
    """The field of order q with the default (smallest) modulus."""
    p, k = factor_prime_power(q)
    return Field(p, k)


def as_field(f: Field | int) -> Field:
    return f if isinstance(f, Field) else gf(int(f))


@dataclass(frozen=True)
class FieldElement:
    field: Field
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.field.q:
            raise ValueError(f"{self.value} is not an element code of {self.field}")

    def _check(self, other):
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected a FieldElement, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")
        return other

    def __add__(self, other):
        other = self._check(other)
        return FieldElement(self.field, self.field.add(self.value, other.value))

    def __sub__(self, other):
        other = self._check(other)
        return FieldElement(self.field, self.field.sub(self.value, other.value))

    def __mul__(self, other):
        other = self._check(other)
        return FieldElement(self.field, self.field.mul(self.value, other.value))

    def __truediv__(self, other):
        other = self._check(other)
        return self * other.inverse()

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.value))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value}@GF({self.field.q})"


def field_add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def field_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def field_inv(a: FieldElement) -> FieldElement:
    return a.inverse()


# matrices

def rref(field: Field, rows: Iterable[Sequence[int]]) -> tuple[Matrix, int]:
    """Reduced row echelon form and rank.

    Zero rows are kept at the bottom so the output has the input's shape.
    """
    m = [list(r) for r in rows]
    if not m:
        return (), 0
    ncols = len(m[0])
    if any(len(r) != ncols for r in m):
        raise ValueError("matrix is not rectangular")
    mul, sub, inv = field.mul_table, field.sub_table, field.inv_table
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        prow = m[rank]
        if prow[col] != 1:
            s = mul[inv[prow[col]]]
            prow = [s[x] for x in prow]
            m[rank] = prow
        for i in range(len(m)):
            c = m[i][col]
            if i != rank and c:
                mc = mul[c]
                row = m[i]
                m[i] = [sub[row[j]][mc[prow[j]]] for j in range(ncols)]
        rank += 1
        if rank == len(m):
            break
    return tuple(tuple(r) for r in m), rank


def _check_ambient(a: "Subspace", b: "Subspace"):
    if a.field != b.field:
        raise FieldMismatchError(f"{a.field} vs {b.field}")
    if a.n != b.n:
        raise AmbientMismatchError(f"ambient dimensions {a.n} and {b.n} differ")


class Subspace:
    """A subspace of F_q^n, stored by its unique RREF basis.

    Two Subspace objects are equal exactly when they are the same subspace.
    """

    def __init__(self, field: Field, n: int, basis: Matrix, _trusted: bool = False):
        if n < 1:
            raise ValueError(f"ambient dimension must be >= 1, got {n}")
        if not _trusted:
            reduced, rank = rref(field, basis)
            basis = reduced[:rank]
            if any(len(r) != n for r in basis):
                raise AmbientMismatchError("basis rows have the wrong length")
        self.field = field
        self.n = n
        self.basis = tuple(basis)
        self.pivots = tuple(next(j for j, x in enumerate(r) if x) for r in self.basis)
        self._hash = hash((field.q, n, self.basis))

    @classmethod
    def zero(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n, (), _trusted=True)

    @classmethod
    def full(cls, field: Field, n: int) -> "Subspace":
        eye = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        return cls(field, n, eye, _trusted=True)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self._hash == other._hash and self.basis == other.basis
                and self.n == other.n and self.field == other.field)

    def __hash__(self):
        return self._hash

    def __len__(self):
        return self.dim

    def __repr__(self):
        rows = ", ".join("(" + ",".join(map(str, r)) + ")" for r in self.basis)
        return f"<{rows}>" if rows else f"<0 in F_{self.field.q}^{self.n}>"

    def reduce(self, v: Sequence[int]) -> Vector:
        """Remainder of v after elimination against the basis."""
        mul, sub = self.field.mul_table, self.field.sub_table
        v = list(v)
        for row, c in zip(self.basis, self.pivots):
            a = v[c]
            if a:
                ma = mul[a]
                v = [sub[x][ma[y]] for x, y in zip(v, row)]
        return tuple(v)

    def __contains__(self, v) -> bool:
        if len(v) != self.n:
            raise AmbientMismatchError(f"vector of length {len(v)} in F^{self.n}")
        return not any(self.reduce(v))

    def combination(self, coeffs: Sequence[int]) -> Vector:
        add, mul = self.field.add_table, self.field.mul_table
        out = [0] * self.n
        for c, row in zip(coeffs, self.basis):
            if c:
                mc = mul[c]
                out = [add[x][mc[y]] for x, y in zip(out, row)]
        return tuple(out)

    @cached_property
    def vectors(self) -> tuple[Vector, ...]:
        """All q^dim vectors, ascending in the coordinate-wise code order."""
        vecs = {self.combination(c) for c in product(range(self.field.q), repeat=self.dim)}
        return tuple(sorted(vecs))

    @cached_property
    def point_set(self) -> frozenset:
        return frozenset(self.vectors)

    @cached_property
    def monic_vectors(self) -> tuple[Vector, ...]:
        """Nonzero vectors whose first nonzero entry is 1, ascending."""
        return tuple(v for v in self.vectors if any(v) and next(x for x in v if x) == 1)

    def is_subspace_of(self, other: "Subspace") -> bool:
        _check_ambient(self, other)
        if self.dim > other.dim:
            return False
        return all(not any(other.reduce(r)) for r in self.basis)

    def __le__(self, other):
        return self.is_subspace_of(other)

    def __lt__(self, other):
        return self.dim < other.dim and self.is_subspace_of(other)

    def __add__(self, other):
        return subspace_sum(self, other)

    def __and__(self, other):
        return intersect(self, other)


def subspace_from_generators(field: Field, n: int, vectors: Iterable[Sequence[int]]) -> Subspace:
    rows = [tuple(v) for v in vectors]
    if any(len(r) != n for r in rows):
        raise AmbientMismatchError(f"generators must have length {n}")
    if not rows:
        return Subspace.zero(field, n)
    reduced, rank = rref(field, rows)
    return Subspace(field, n, reduced[:rank], _trusted=True)


def span(field: Field, n: int, *vectors) -> Subspace:
    return subspace_from_generators(field, n, vectors)


def contains(U: Subspace, v: Sequence[int]) -> bool:
    return tuple(v) in U


def is_subspace_of(V: Subspace, U: Subspace) -> bool:
    return V.is_subspace_of(U)


@lru_cache(maxsize=1 << 18)
def subspace_sum(U: Subspace, V: Subspace) -> Subspace:
    _check_ambient(U, V)
    if U.dim == 0:
        return V
    if V.dim == 0:
        return U
    return subspace_from_generators(U.field, U.n, U.basis + V.basis)


@lru_cache(maxsize=1 << 18)
def intersect(U: Subspace, V: Subspace) -> Subspace:
    """U ∩ V from the kernel of the stacked bases.

    Each row [u | u] of U and [v | 0] of V is reduced together; rows whose
    left half vanishes encode a relation a·U + b·V = 0 and their right half
    is the common vector a·U.
    """
    _check_ambient(U, V)
    field, n = U.field, U.n
    if U.dim == 0 or V.dim == 0:
        return Subspace.zero(field, n)
    zeros = (0,) * n
    stacked = [r + r for r in U.basis] + [r + zeros for r in V.basis]
    reduced, rank = rref(field, stacked)
    common = [r[n:] for r in reduced[:rank] if not any(r[:n])]
    return subspace_from_generators(field, n, common)


def is_direct_sum(W: Subspace, U: Subspace, V: Subspace) -> bool:
    """True iff W = U ⊕ V (internal direct sum)."""
    _check_ambient(W, U)
    _check_ambient(U, V)
    return subspace_sum(U, V) == W and intersect(U, V).dim == 0


# textual matrix format

def format_header(field: Field, n: int) -> str:
    return f"q={field.q} n={n}"


def parse_header(line: str) -> tuple[Field, int]:
    try:
        parts = dict(tok.split("=", 1) for tok in line.split())
        q, n = int(parts["q"]), int(parts["n"])
    except (ValueError, KeyError) as exc:
        raise FormatError(f"bad header {line!r}: expected 'q=<q> n=<n>'") from exc
    try:
        field = gf(q)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    if n < 1:
        raise FormatError(f"ambient dimension must be >= 1, got {n}")
    return field, n


def _parse_row(tokens, field, n, lineno):
    try:
        row = tuple(int(t) for t in tokens)
    except ValueError as exc:
        raise FormatError(f"line {lineno}: non-integer entry") from exc
    if len(row) != n:
        raise FormatError(f"line {lineno}: expected {n} entries, got {len(row)}")
    if any(not 0 <= x < field.q for x in row):
        raise FormatError(f"line {lineno}: entries must lie in [0, {field.q})")
    return row


def format_matrix(field: Field, rows: Sequence[Sequence[int]], n: int | None = None) -> str:
    n = len(rows[0]) if n is None else n
    lines = [format_header(field, n)]
    lines += [" ".join(map(str, r)) for r in rows]
    return "\n".join(lines) + "\n"


def format_subspaces(field: Field, n: int, spaces: Iterable[Subspace]) -> str:
    """Header, then one blank-line-separated RREF block per subspace.

    The zero subspace is written as a single all-zero row.
    """
    blocks = []
    for U in spaces:
        rows = U.basis or ((0,) * n,)
        blocks.append("\n".join(" ".join(map(str, r)) for r in rows))
    return format_header(field, n) + "\n" + "\n\n".join(blocks) + "\n"


def parse_subspaces(text: str) -> tuple[Field, int, list[Subspace]]:
    lines = text.splitlines()
    start = next((i for i, l in enumerate(lines) if l.strip() and not l.lstrip().startswith("#")), None)
    if start is None:
        raise FormatError("empty input")
    field, n = parse_header(lines[start])
    spaces, block = [], []
    for lineno, line in enumerate(lines[start + 1:], start + 2):
        s = line.strip()
        if s.startswith("#"):
            continue
        if not s:
            if block:
                spaces.append(subspace_from_generators(field, n, block))
                block = []
            continue
        block.append(_parse_row(s.split(), field, n, lineno))
    if block:
        spaces.append(subspace_from_generators(field, n, block))
    return field, n, spaces


def parse_matrix(text: str) -> tuple[Field, int, list[Vector]]:
    lines = [l for l in text.splitlines() if l.strip() and not l.lstrip().startswith("#")]
    if not lines:
        raise FormatError("empty input")
    field, n = parse_header(lines[0])
    rows = [_parse_row(l.split(), field, n, i + 2) for i, l in enumerate(lines[1:])]
    return field, n, rows
