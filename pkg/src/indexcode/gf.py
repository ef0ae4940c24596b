"""Dense linear algebra over a prime field.

Vectors are handled in two packed forms.  Over GF(2) a vector of length
``n`` is a Python int whose bit ``r`` is entry ``r``; elimination is XOR.
Over an odd prime it is a tuple of residues.  :func:`pack` and
:func:`unpack` convert between entry lists and the packed form, and the
basis accumulators below work directly on packed vectors so the search
code can add one column at a time and read off the new rank.
"""

from __future__ import annotations

from bisect import insort
from itertools import product
from typing import NamedTuple, Sequence

import numpy as np


def pack(entries: Sequence[int], q: int):
    if q == 2:
        v = 0
        for r, e in enumerate(entries):
            if e & 1:
                v |= 1 << r
        return v
    return tuple(int(e) % q for e in entries)


def unpack(vec, n: int, q: int) -> list[int]:
    if q == 2:
        return [(vec >> r) & 1 for r in range(n)]
    return list(vec)


def is_zero(vec) -> bool:
    if isinstance(vec, int):
        return vec == 0
    return not any(vec)


def unit_vector(i: int, n: int, q: int):
    """Standard basis vector for 0-based position ``i``."""
    if q == 2:
        return 1 << i
    return tuple(1 if r == i else 0 for r in range(n))


class GF2Basis:
    """Row-echelon XOR basis; rows kept in decreasing order of leading bit."""

    __slots__ = ("_rows",)

    def __init__(self, rows=None):
        self._rows = rows if rows is not None else []

    def reduce(self, v: int) -> int:
        for b in self._rows:
            v = min(v, v ^ b)
        return v

    def add(self, v: int) -> bool:
        r = self.reduce(v)
        if r:
            insort(self._rows, r, key=lambda x: -x)
            return True
        return False

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0

    def copy(self) -> "GF2Basis":
        return GF2Basis(self._rows[:])

    @property
    def rank(self) -> int:
        return len(self._rows)

    def __len__(self):
        return len(self._rows)


class PrimeBasis:
    """Echelon basis over GF(q), q an odd prime; pivots normalised to 1."""

    __slots__ = ("q", "_rows")

    def __init__(self, q: int, rows=None):
        self.q = q
        self._rows = rows if rows is not None else {}

    def reduce(self, v) -> tuple:
        q = self.q
        v = list(v)
        for p in sorted(self._rows):
            c = v[p]
            if c:
                row = self._rows[p]
                for r in range(p, len(v)):
                    if row[r]:
                        v[r] = (v[r] - c * row[r]) % q
        return tuple(v)

    def add(self, v) -> bool:
        r = self.reduce(v)
        for p, c in enumerate(r):
            if c:
                inv = pow(c, self.q - 2, self.q)
                self._rows[p] = tuple((x * inv) % self.q for x in r)
                return True
        return False

    def contains(self, v) -> bool:
        return not any(self.reduce(v))

    def copy(self) -> "PrimeBasis":
        return PrimeBasis(self.q, dict(self._rows))

    @property
    def rank(self) -> int:
        return len(self._rows)

    def __len__(self):
        return len(self._rows)


def new_basis(q: int):
    return GF2Basis() if q == 2 else PrimeBasis(q)


class FieldMatrix:
    """A dense matrix over GF(q) with entries reduced into ``[0, q)``."""

    def __init__(self, entries, q: int):
        arr = np.asarray(entries, dtype=np.int64)
        if arr.ndim == 1 and arr.size == 0:
            arr = arr.reshape(0, 0)
        if arr.ndim != 2:
            raise ValueError("FieldMatrix needs a 2-D array")
        self.q = q
        self.entries = np.mod(arr, q)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], q: int, rows: int | None = None):
        columns = [list(c) for c in columns]
        if not columns:
            return cls(np.zeros((rows or 0, 0), dtype=np.int64), q)
        return cls(np.array(columns, dtype=np.int64).T, q)

    @classmethod
    def from_packed(cls, vectors, n: int, q: int):
        return cls.from_columns([unpack(v, n, q) for v in vectors], q, rows=n)

    @property
    def shape(self):
        return self.entries.shape

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def packed_columns(self) -> list:
        return [pack(self.entries[:, c], self.q) for c in range(self.cols)]

    def hstack(self, *others: "FieldMatrix") -> "FieldMatrix":
        return FieldMatrix(np.hstack([self.entries] + [o.entries for o in others]), self.q)

    def __eq__(self, other):
        return (isinstance(other, FieldMatrix) and self.q == other.q
                and self.entries.shape == other.entries.shape
                and bool(np.array_equal(self.entries, other.entries)))

    def __repr__(self):
        return f"FieldMatrix(q={self.q}, shape={self.shape})"


def rank(mat: FieldMatrix) -> int:
    basis = new_basis(mat.q)
    for v in mat.packed_columns():
        basis.add(v)
    return basis.rank


def in_span(v: Sequence[int], basis_cols: FieldMatrix) -> bool:
    """True iff ``v`` is a linear combination of the columns of ``basis_cols``."""
    if len(v) != basis_cols.rows:
        raise ValueError(f"vector length {len(v)} does not match {basis_cols.rows} rows")
    basis = new_basis(basis_cols.q)
    for c in basis_cols.packed_columns():
        basis.add(c)
    return basis.contains(pack(v, basis_cols.q))


def independent_columns(mat: FieldMatrix) -> list[int]:
    """0-based positions of the leftmost-greedy maximal independent column set."""
    basis = new_basis(mat.q)
    return [c for c, v in enumerate(mat.packed_columns()) if basis.add(v)]


class SubspaceDims(NamedTuple):
    d1: int
    d2: int
    d3: int
    d12: int
    d123: int
    dint12: int
    dint3_12: int


def subspace_dims(c1: FieldMatrix, c2: FieldMatrix, c3: FieldMatrix) -> SubspaceDims:
    """Dimensions of V1, V2, V3 (column spaces), their sums and intersections."""
    if not c1.rows == c2.rows == c3.rows:
        raise ValueError("subspace_dims needs matrices with equal row counts")
    d1, d2, d3 = rank(c1), rank(c2), rank(c3)
    d12 = rank(c1.hstack(c2))
    d123 = rank(c1.hstack(c2, c3))
    return SubspaceDims(d1, d2, d3, d12, d123, d1 + d2 - d12, d3 + d12 - d123)


def span_contains_bruteforce(v: Sequence[int], columns: Sequence[Sequence[int]], q: int) -> bool:
    """Enumerate all q^|columns| combinations.  Reference check for small inputs."""
    target = tuple(x % q for x in v)
    n = len(target)
    for coeffs in product(range(q), repeat=len(columns)):
        acc = [0] * n
        for c, col in zip(coeffs, columns):
            if c:
                for r in range(n):
                    acc[r] = (acc[r] + c * col[r]) % q
        if tuple(acc) == target:
            return True
    return False
