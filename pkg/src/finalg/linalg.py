"""Dense exact linear algebra over a field handle.

Vectors are tuples of field elements; matrices are lists of rows.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

from .errors import DimensionMismatch, NoSolution
from .fields import Field

Vector = tuple
Matrix = list


def _rref_rows(F: Field, rows: list[list]) -> tuple[list[list], list[int]]:
    """In-place Gauss-Jordan elimination; returns (nonzero rows, pivot columns)."""
    if not rows:
        return [], []
    ncols = len(rows[0])
    is_zero, mul, sub, inv = F.is_zero, F.mul, F.sub, F.inv
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if not is_zero(rows[i][c])), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        lead = prow[c]
        if lead != F.one:
            li = inv(lead)
            prow = rows[r] = [mul(li, x) for x in prow]
        for i in range(len(rows)):
            if i != r:
                f = rows[i][c]
                if not is_zero(f):
                    row = rows[i]
                    rows[i] = [x if is_zero(y) else sub(x, mul(f, y)) for x, y in zip(row, prow)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rref(F: Field, M: Sequence[Sequence]) -> tuple[Matrix, int]:
    """Reduced row-echelon form of ``M`` (same shape) and its rank."""
    rows = [list(row) for row in M]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    reduced, pivots = _rref_rows(F, rows)
    zero_row = [F.zero] * ncols
    return reduced + [list(zero_row) for _ in range(nrows - len(reduced))], len(pivots)


def rank(F: Field, M: Sequence[Sequence]) -> int:
    return len(_rref_rows(F, [list(r) for r in M])[1])


def mat_vec(F: Field, M: Sequence[Sequence], v: Sequence) -> Vector:
    add, mul, is_zero = F.add, F.mul, F.is_zero
    out = []
    for row in M:
        acc = F.zero
        for a, b in zip(row, v):
            if not is_zero(a) and not is_zero(b):
                acc = add(acc, mul(a, b))
        out.append(acc)
    return tuple(out)


def mat_mul(F: Field, A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    cols = list(zip(*B))
    return [list(mat_vec(F, cols, row)) for row in A]


def identity(F: Field, n: int) -> Matrix:
    return [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]


def transpose(M: Sequence[Sequence]) -> Matrix:
    return [list(c) for c in zip(*M)]


def solve(F: Field, M: Sequence[Sequence], b: Sequence) -> Vector:
    """Some ``x`` with ``M x = b``; raises NoSolution if the system is inconsistent."""
    if len(M) != len(b):
        raise DimensionMismatch(f"{len(M)} rows but right-hand side of length {len(b)}")
    ncols = len(M[0]) if M else 0
    aug = [list(row) + [bi] for row, bi in zip(M, b)]
    reduced, pivots = _rref_rows(F, aug)
    if pivots and pivots[-1] == ncols:
        raise NoSolution("inconsistent linear system")
    x = [F.zero] * ncols
    for row, c in zip(reduced, pivots):
        x[c] = row[ncols]
    return tuple(x)


def kernel(F: Field, M: Sequence[Sequence], ncols: int | None = None) -> "Subspace":
    if ncols is None:
        ncols = len(M[0]) if M else 0
    reduced, pivots = _rref_rows(F, [list(r) for r in M])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [F.zero] * ncols
        v[f] = F.one
        for row, c in zip(reduced, pivots):
            v[c] = F.neg(row[f])
        basis.append(tuple(v))
    return Subspace(F, ncols, basis)


class Subspace:
    """Coordinate subspace of ``F^n`` with a reduced row-echelon basis.

    Equality and hashing are structural on the RREF basis.
    """

    __slots__ = ("field", "ambient_dim", "basis", "pivots", "_hash")

    def __init__(self, F: Field, ambient_dim: int, vectors: Iterable[Sequence] = ()):
        rows = [list(v) for v in vectors]
        for r in rows:
            if len(r) != ambient_dim:
                raise DimensionMismatch(f"vector of length {len(r)} in ambient dimension {ambient_dim}")
        reduced, pivots = _rref_rows(F, rows)
        self.field = F
        self.ambient_dim = ambient_dim
        self.basis: tuple[Vector, ...] = tuple(tuple(r) for r in reduced)
        self.pivots: tuple[int, ...] = tuple(pivots)
        self._hash = None

    @classmethod
    def zero(cls, F: Field, n: int) -> "Subspace":
        return cls(F, n)

    @classmethod
    def full(cls, F: Field, n: int) -> "Subspace":
        return cls(F, n, identity(F, n))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def _check(self, other: "Subspace") -> None:
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatch(f"ambient dimensions {self.ambient_dim} and {other.ambient_dim}")

    def reduce(self, v: Sequence) -> Vector:
        """Remainder of ``v`` after elimination against the basis (zero iff ``v`` in self)."""
        F = self.field
        v = list(v)
        if len(v) != self.ambient_dim:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {self.ambient_dim}")
        for row, c in zip(self.basis, self.pivots):
            f = v[c]
            if not F.is_zero(f):
                v = [x if F.is_zero(y) else F.sub(x, F.mul(f, y)) for x, y in zip(v, row)]
        return tuple(v)

    def contains(self, v: Sequence) -> bool:
        return all(self.field.is_zero(x) for x in self.reduce(v))

    __contains__ = contains

    def coordinates(self, v: Sequence) -> Vector:
        """Coefficients of ``v`` in the RREF basis; raises NoSolution if ``v`` is outside."""
        if not self.contains(v):
            raise NoSolution("vector not in subspace")
        return tuple(v[c] for c in self.pivots)

    def combine(self, coeffs: Sequence) -> Vector:
        F = self.field
        out = [F.zero] * self.ambient_dim
        for c, row in zip(coeffs, self.basis):
            if not F.is_zero(c):
                out = [F.add(x, F.mul(c, y)) for x, y in zip(out, row)]
        return tuple(out)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.field, self.ambient_dim, self.basis + other.basis)

    def span_with(self, vectors: Iterable[Sequence]) -> "Subspace":
        return Subspace(self.field, self.ambient_dim, list(self.basis) + [list(v) for v in vectors])

    def intersection(self, other: "Subspace") -> "Subspace":
        """Zassenhaus: reduce [u | u] over [v | 0]; rows with zero left half span the meet."""
        self._check(other)
        F, n = self.field, self.ambient_dim
        zero = [F.zero] * n
        rows = [list(u) + list(u) for u in self.basis] + [list(v) + zero for v in other.basis]
        reduced, pivots = _rref_rows(F, rows)
        meet = [row[n:] for row, c in zip(reduced, pivots) if c >= n]
        return Subspace(F, n, meet)

    __and__ = intersection

    def is_subspace_of(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.contains(v) for v in self.basis)

    __le__ = is_subspace_of

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.field == other.field
            and self.basis == other.basis
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ambient_dim, self.basis))
        return self._hash

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def complement_indices(self) -> list[int]:
        """Coordinate indices whose unit vectors span a complement."""
        piv = set(self.pivots)
        return [i for i in range(self.ambient_dim) if i not in piv]

    def cardinality(self) -> int:
        return self.field.order ** self.dim

    def elements(self) -> Iterator[Vector]:
        import itertools

        F = self.field
        for coeffs in itertools.product(list(F.elements()), repeat=self.dim):
            yield self.combine(coeffs)

    def to_json(self) -> list:
        return [[self.field.to_json(x) for x in v] for v in self.basis]


def subspace_ops(U: Subspace, V: Subspace) -> dict:
    """Sum, intersection, membership and equality bundled for a pair of subspaces."""
    U._check(V)
    return {
        "sum": U + V,
        "intersection": U & V,
        "contains": U.contains,
        "equals": U == V,
    }
