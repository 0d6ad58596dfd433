"""Finite-dimensional unital associative algebras given by structure constants."""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import limits
from .errors import (
    BadInput,
    ImperfectField,
    NoSolution,
    NotAGroup,
    NotAnIdeal,
    NotAssociative,
    NotAUnit,
    NotUnital,
)
from .fields import (
    Field,
    FieldSpec,
    is_separable,
    make_field,
    poly_derivative,
    poly_trim,
    squarefree_radical,
)
from .linalg import Subspace, kernel, solve

Element = tuple


class Algebra:
    """Unital associative algebra with basis ``e_0..e_{n-1}``.

    ``table[i][j]`` holds the coordinates of ``e_i * e_j``; ``one`` the
    coordinates of the unit.  Associativity and unitality are validated on
    construction.
    """

    def __init__(
        self,
        field: Field,
        table: Sequence[Sequence[Sequence]],
        one: Sequence,
        *,
        labels: Sequence[str] | None = None,
        name: str | None = None,
        check: bool = True,
    ):
        n = len(table)
        self.field = field
        self.dim = n
        self.table = tuple(tuple(tuple(c) for c in row) for row in table)
        self.one = tuple(one)
        self.labels = list(labels) if labels is not None else [f"e{i}" for i in range(n)]
        self.name = name
        if len(self.one) != n or any(len(row) != n or any(len(c) != n for c in row) for row in self.table):
            raise BadInput("structure-constant table and unit must have matching dimension")
        is_zero = field.is_zero
        self.terms = tuple(
            tuple(tuple((l, c) for l, c in enumerate(self.table[i][j]) if not is_zero(c)) for j in range(n))
            for i in range(n)
        )
        if check:
            self._validate()

    def __repr__(self) -> str:
        return f"<Algebra {self.name or ''} dim={self.dim} over {self.field.name}>"

    # -- validation ---------------------------------------------------------

    def _validate(self) -> None:
        n = self.dim
        for i in range(n):
            e = self.basis(i)
            if self.multiply(self.one, e) != e or self.multiply(e, self.one) != e:
                raise NotUnital(f"one * e{i} or e{i} * one differs from e{i}")
        if self.field.is_finite:
            bad = self._associativity_defect_fp()
        else:
            bad = next(
                (
                    (i, j, k)
                    for i, j, k in itertools.product(range(n), repeat=3)
                    if self.multiply(self.multiply(self.basis(i), self.basis(j)), self.basis(k))
                    != self.multiply(self.basis(i), self.multiply(self.basis(j), self.basis(k)))
                ),
                None,
            )
        if bad is not None:
            raise NotAssociative(f"(e{bad[0]} e{bad[1]}) e{bad[2]} != e{bad[0]} (e{bad[1]} e{bad[2]})")

    def _associativity_defect_fp(self):
        fp = self.fp
        C = fp.C
        lhs = np.tensordot(C, C, axes=([2], [0])) % fp.p  # (ij)k
        rhs = np.einsum("jkl,ilm->ijkm", C, C) % fp.p  # i(jk)
        diff = np.argwhere((lhs != rhs).any(axis=3))
        if len(diff) == 0:
            return None
        k = fp.k
        return tuple(int(t) // k for t in diff[0])

    @functools.cached_property
    def fp(self):
        from .finite import FpView

        return FpView(self)

    # -- elements -----------------------------------------------------------

    @property
    def is_finite(self) -> bool:
        return self.field.is_finite

    @property
    def cardinality(self) -> int | None:
        return self.field.order**self.dim if self.field.is_finite else None

    def zero(self) -> Element:
        return (self.field.zero,) * self.dim

    def basis(self, i: int) -> Element:
        F = self.field
        return tuple(F.one if j == i else F.zero for j in range(self.dim))

    def element(self, coords: Sequence) -> Element:
        if len(coords) != self.dim:
            raise BadInput(f"expected {self.dim} coordinates, got {len(coords)}")
        return tuple(coords)

    def scalar(self, c) -> Element:
        return self.scale(c, self.one)

    def add(self, x: Element, y: Element) -> Element:
        add = self.field.add
        return tuple(add(a, b) for a, b in zip(x, y))

    def sub(self, x: Element, y: Element) -> Element:
        sub = self.field.sub
        return tuple(sub(a, b) for a, b in zip(x, y))

    def neg(self, x: Element) -> Element:
        return tuple(self.field.neg(a) for a in x)

    def scale(self, c, x: Element) -> Element:
        mul = self.field.mul
        return tuple(mul(c, a) for a in x)

    def is_zero(self, x: Element) -> bool:
        return all(self.field.is_zero(a) for a in x)

    def multiply(self, x: Element, y: Element) -> Element:
        F = self.field
        add, mul, is_zero = F.add, F.mul, F.is_zero
        out = [F.zero] * self.dim
        terms = self.terms
        for i, xi in enumerate(x):
            if is_zero(xi):
                continue
            row = terms[i]
            for j, yj in enumerate(y):
                if is_zero(yj):
                    continue
                c = mul(xi, yj)
                for l, t in row[j]:
                    out[l] = add(out[l], mul(c, t))
        return tuple(out)

    def bracket(self, x: Element, y: Element) -> Element:
        return self.sub(self.multiply(x, y), self.multiply(y, x))

    def power(self, x: Element, e: int) -> Element:
        if e < 0:
            x, e = self.invert(x), -e
        result, base = self.one, x
        while e:
            if e & 1:
                result = self.multiply(result, base)
            e >>= 1
            if e:
                base = self.multiply(base, base)
        return result

    def product(self, xs: Sequence[Element]) -> Element:
        return functools.reduce(self.multiply, xs, self.one)

    def regular_rep(self, x: Element) -> list[list]:
        """Matrix of ``y -> x*y`` (column j = coordinates of ``x*e_j``)."""
        cols = [self.multiply(x, self.basis(j)) for j in range(self.dim)]
        return [list(r) for r in zip(*cols)]

    def right_rep(self, x: Element) -> list[list]:
        cols = [self.multiply(self.basis(j), x) for j in range(self.dim)]
        return [list(r) for r in zip(*cols)]

    def is_unit(self, x: Element) -> bool:
        try:
            self.invert(x)
        except NotAUnit:
            return False
        return True

    def invert(self, x: Element) -> Element:
        try:
            return solve(self.field, self.regular_rep(x), self.one)
        except NoSolution:
            raise NotAUnit("element is not invertible") from None

    def evaluate_poly(self, f: Sequence, x: Element) -> Element:
        acc = self.zero()
        for c in reversed(list(f)):
            acc = self.add(self.multiply(acc, x), self.scalar(c))
        return acc

    # -- element properties -------------------------------------------------

    def minimal_polynomial(self, x: Element) -> list:
        """Monic ``f`` of least degree with ``f(x) = 0`` (ascending coefficients)."""
        F = self.field
        powers = [self.one]
        while True:
            nxt = self.multiply(powers[-1], x)
            cols = [list(r) for r in zip(*powers)]
            try:
                c = solve(F, cols, nxt)
            except NoSolution:
                powers.append(nxt)
                continue
            return [F.neg(a) for a in c] + [F.one]

    def is_nilpotent_elem(self, x: Element) -> bool:
        f = self.minimal_polynomial(x)
        return all(self.field.is_zero(c) for c in f[:-1])

    def is_semisimple_elem(self, x: Element) -> bool:
        return is_separable(self.field, self.minimal_polynomial(x))

    # -- io -----------------------------------------------------------------

    def to_json(self) -> dict:
        F = self.field
        return {
            "field": F.spec.to_json(),
            "dim": self.dim,
            "table": [[[F.to_json(c) for c in v] for v in row] for row in self.table],
            "one": [F.to_json(c) for c in self.one],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Algebra":
        try:
            F = make_field(FieldSpec.from_json(obj["field"]))
            table = [[[F.from_json(c) for c in v] for v in row] for row in obj["table"]]
            one = [F.from_json(c) for c in obj["one"]]
            dim = int(obj.get("dim", len(table)))
        except (KeyError, TypeError, ValueError) as exc:
            raise BadInput(f"malformed algebra JSON: {exc}") from exc
        if dim != len(table):
            raise BadInput(f"dim {dim} does not match table size {len(table)}")
        return make_from_constants(F, table, one)

    def element_to_json(self, x: Element) -> list:
        return [self.field.to_json(c) for c in x]

    def fmt(self, x: Element) -> str:
        F = self.field
        terms = []
        for c, lab in zip(x, self.labels):
            if not F.is_zero(c):
                terms.append(lab if c == F.one else f"{F.fmt(c)}*{lab}")
        return " + ".join(terms) or "0"


# ---------------------------------------------------------------------------
# constructors


def make_from_constants(field: Field, table, one, **kw) -> Algebra:
    return Algebra(field, table, one, **kw)


def _unit_vec(F: Field, n: int, i: int) -> tuple:
    return tuple(F.one if j == i else F.zero for j in range(n))


def make_matrix_algebra(field: Field, n: int) -> Algebra:
    """M_n(F) on matrix units; ``E_ij`` (0-based) has index ``i*n + j``."""
    if n < 1:
        raise BadInput("matrix size must be >= 1")
    F, d = field, n * n
    zero = (F.zero,) * d
    table = [
        [_unit_vec(F, d, i * n + l) if j == k else zero for k in range(n) for l in range(n)]
        for i in range(n)
        for j in range(n)
    ]
    one = tuple(F.one if i == j else F.zero for i in range(n) for j in range(n))
    labels = [f"E{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    return Algebra(F, table, one, labels=labels, name=f"M{n}({F.name})")


def make_triangular(field: Field, n: int) -> Algebra:
    """Upper-triangular n x n matrices on the units ``E_ij``, i <= j, in row-major order."""
    if n < 1:
        raise BadInput("matrix size must be >= 1")
    F = field
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    index = {pq: t for t, pq in enumerate(pairs)}
    d = len(pairs)
    zero = (F.zero,) * d
    table = [[_unit_vec(F, d, index[(i, l)]) if j == k else zero for (k, l) in pairs] for (i, j) in pairs]
    one = tuple(F.one if i == j else F.zero for (i, j) in pairs)
    labels = [f"E{i + 1}{j + 1}" for (i, j) in pairs]
    return Algebra(F, table, one, labels=labels, name=f"T{n}({F.name})")


def make_group_algebra(field: Field, cayley: Sequence[Sequence[int]], name: str | None = None) -> Algebra:
    """Group algebra F[G] for a finite group given by its Cayley table."""
    m = len(cayley)
    if m == 0 or any(len(row) != m or any(not 0 <= v < m for v in row) for row in cayley):
        raise NotAGroup("Cayley table must be a square table of element indices")
    ident = next((e for e in range(m) if all(cayley[e][g] == g == cayley[g][e] for g in range(m))), None)
    if ident is None:
        raise NotAGroup("no identity element")
    for g in range(m):
        if not any(cayley[g][h] == ident for h in range(m)):
            raise NotAGroup(f"element {g} has no inverse")
    for a, b, c in itertools.product(range(m), repeat=3):
        if cayley[cayley[a][b]][c] != cayley[a][cayley[b][c]]:
            raise NotAGroup(f"not associative at ({a}, {b}, {c})")
    F = field
    table = [[_unit_vec(F, m, cayley[g][h]) for h in range(m)] for g in range(m)]
    return Algebra(F, table, _unit_vec(F, m, ident), labels=[f"g{g}" for g in range(m)], name=name)


def cyclic_group_table(m: int) -> list[list[int]]:
    return [[(a + b) % m for b in range(m)] for a in range(m)]


def direct_product_table(t1, t2) -> list[list[int]]:
    m2 = len(t2)
    return [
        [t1[a1][b1] * m2 + t2[a2][b2] for b1 in range(len(t1)) for b2 in range(m2)]
        for a1 in range(len(t1))
        for a2 in range(m2)
    ]


def dihedral_group_table(m: int) -> list[list[int]]:
    """D_m of order 2m; element ``s*m + r`` is ``x^s rho^r``."""

    def mul(a, b):
        s1, r1 = divmod(a, m)
        s2, r2 = divmod(b, m)
        r = (r1 + (r2 if s1 == 0 else -r2)) % m
        return ((s1 + s2) % 2) * m + r

    return [[mul(a, b) for b in range(2 * m)] for a in range(2 * m)]


def quaternion_group_table() -> list[list[int]]:
    # elements ±1, ±i, ±j, ±k as (sign, unit) with index 2*unit + sign
    units = {
        (0, 0): (0, 0), (0, 1): (0, 1), (0, 2): (0, 2), (0, 3): (0, 3),
        (1, 0): (0, 1), (1, 1): (1, 0), (1, 2): (0, 3), (1, 3): (1, 2),
        (2, 0): (0, 2), (2, 1): (1, 3), (2, 2): (1, 0), (2, 3): (0, 1),
        (3, 0): (0, 3), (3, 1): (0, 2), (3, 2): (1, 1), (3, 3): (1, 0),
    }  # fmt: skip

    def mul(a, b):
        ua, sa = divmod(a, 2)
        ub, sb = divmod(b, 2)
        s, u = units[(ua, ub)]
        return 2 * u + (sa ^ sb ^ s)

    return [[mul(a, b) for b in range(8)] for a in range(8)]


def dual_numbers(field: Field) -> Algebra:
    """F[eps]/(eps^2) on the basis {1, eps}."""
    F = field
    table = [[(F.one, F.zero), (F.zero, F.one)], [(F.zero, F.one), (F.zero, F.zero)]]
    return Algebra(F, table, (F.one, F.zero), labels=["1", "eps"], name=f"{F.name}[eps]")


def field_as_algebra(field: Field) -> Algebra:
    return Algebra(field, [[(field.one,)]], (field.one,), labels=["1"], name=field.name)


def direct_sum(A: Algebra, B: Algebra) -> Algebra:
    F = A.field
    if B.field != F:
        raise BadInput("direct sum needs a common base field")
    za, zb = A.zero(), B.zero()
    table = []
    for i in range(A.dim):
        table.append([A.table[i][j] + zb for j in range(A.dim)] + [za + zb] * B.dim)
    for i in range(B.dim):
        table.append([za + zb] * A.dim + [za + B.table[i][j] for j in range(B.dim)])
    labels = [f"{l}_1" for l in A.labels] + [f"{l}_2" for l in B.labels]
    return Algebra(F, table, A.one + B.one, labels=labels, name=f"{A.name}+{B.name}")


def matrix_element(A: Algebra, rows: Sequence[Sequence]) -> Element:
    """Coordinates in M_n(F) (or T_n(F)) of a matrix given by rows."""
    coords = []
    for lab in A.labels:
        i, j = int(lab[1]) - 1, int(lab[2]) - 1
        coords.append(rows[i][j])
    return tuple(coords)


def element_matrix(A: Algebra, x: Element, n: int) -> list[list]:
    F = A.field
    M = [[F.zero] * n for _ in range(n)]
    for c, lab in zip(x, A.labels):
        M[int(lab[1]) - 1][int(lab[2]) - 1] = c
    return M


# ---------------------------------------------------------------------------
# subspaces, ideals and structure


def span(A: Algebra, vectors) -> Subspace:
    return Subspace(A.field, A.dim, list(vectors))


def subspace_product(A: Algebra, U: Subspace, V: Subspace) -> Subspace:
    return span(A, [A.multiply(u, v) for u in U.basis for v in V.basis])


def is_two_sided_ideal(A: Algebra, I: Subspace) -> bool:
    for v in I.basis:
        for k in range(A.dim):
            e = A.basis(k)
            if not I.contains(A.multiply(e, v)) or not I.contains(A.multiply(v, e)):
                return False
    return True


def ideal_closure(A: Algebra, S: Subspace) -> Subspace:
    """Smallest two-sided ideal containing ``S``."""
    I = S
    while True:
        new = I.span_with(
            A.multiply(e, v) for v in I.basis for e in (A.basis(k) for k in range(A.dim))
        ).span_with(A.multiply(v, A.basis(k)) for v in I.basis for k in range(A.dim))
        if new == I:
            return I
        I = new


def center(A: Algebra) -> Subspace:
    """Joint kernel of ``ad(e_i)`` over all basis elements."""
    n = A.dim
    brackets = [[A.bracket(A.basis(i), A.basis(j)) for j in range(n)] for i in range(n)]
    rows = [[brackets[i][j][l] for j in range(n)] for i in range(n) for l in range(n)]
    return kernel(A.field, rows, n)


def commutator_ideal(A: Algebra) -> Subspace:
    """Ideal generated by all ``[e_i, e_j]`` (the ideal ``[A,A]A``)."""
    n = A.dim
    S = span(A, [A.bracket(A.basis(i), A.basis(j)) for i in range(n) for j in range(i + 1, n)])
    return ideal_closure(A, S)


def subalgebra_generated(A: Algebra, gens: Sequence[Element], unital: bool = True) -> Subspace:
    S = span(A, list(gens) + ([A.one] if unital else []))
    while True:
        new = S.span_with(A.multiply(a, b) for a in S.basis for b in S.basis)
        if new == S:
            return S
        S = new


def nilpotency_index(A: Algebra, S: Subspace) -> int | None:
    """Least ``m`` with ``S^m = 0`` (0 for the zero space, None if never)."""
    if S.is_zero():
        return 0
    P, m = S, 1
    while not P.is_zero():
        nxt = subspace_product(A, P, S)
        if nxt == P:
            return None
        P, m = nxt, m + 1
    return m


def quotient(A: Algebra, I: Subspace) -> Algebra:
    """A/I on the complement basis given by the non-pivot coordinates of ``I``."""
    if not is_two_sided_ideal(A, I):
        raise NotAnIdeal("subspace is not a two-sided ideal")
    comp = I.complement_indices()
    F = A.field

    def project(v):
        r = I.reduce(v)
        return tuple(r[c] for c in comp)

    table = [[project(A.multiply(A.basis(a), A.basis(b))) for b in comp] for a in comp]
    Q = Algebra(F, table, project(A.one), labels=[A.labels[c] for c in comp], name=f"{A.name}/I")
    Q.projection = project
    return Q


def project_to_quotient(I: Subspace, v: Sequence) -> tuple:
    r = I.reduce(v)
    return tuple(r[c] for c in I.complement_indices())


def nilpotent_elements(A: Algebra, limit: int | None = None) -> np.ndarray:
    """Codes (scan order) of every nilpotent element; exhaustive."""
    return A.fp.nilpotent_codes(limits.ORACLE_MAX_CARD if limit is None else limit)


@dataclass(frozen=True)
class NilpotentSpan:
    subspace: Subspace
    exact: bool
    is_subspace: bool | None = None  # whether the nilpotent set itself is linear (exact mode)


def nilpotent_set_span(A: Algebra, limit: int | None = None) -> NilpotentSpan:
    """Span of N(A); exact under exhaustive enumeration, else a flagged lower bound."""
    limit = limits.ORACLE_MAX_CARD if limit is None else limit
    if A.is_finite and A.cardinality <= limit:
        fp = A.fp
        codes = fp.nilpotent_codes(limit)
        from .finite import FpSubspace

        S = FpSubspace(fp.decode(codes), fp.p, fp.N)
        return NilpotentSpan(fp.subspace_from_fp(S.basis), True, len(codes) == fp.p**S.dim)
    vectors = []
    n = A.dim
    F = A.field
    cands = [A.basis(i) for i in range(n)]
    cands += [A.add(A.basis(i), A.basis(j)) for i in range(n) for j in range(i + 1, n)]
    cands += [A.sub(A.basis(i), A.basis(j)) for i in range(n) for j in range(i + 1, n)]
    for x in cands:
        if A.is_nilpotent_elem(x):
            vectors.append(x)
    S = span(A, vectors)
    if F.is_finite:
        from .radical import radical

        S = S + radical(A).radical
    return NilpotentSpan(S, False, None)


# ---------------------------------------------------------------------------
# Jordan-Chevalley


def jordan_chevalley(A: Algebra, x: Element) -> tuple[Element, Element]:
    """Split ``x = x_s + x_n`` with ``x_s`` semisimple, ``x_n`` nilpotent, both in F[x].

    Newton iteration on the squarefree part ``g`` of the minimal polynomial:
    ``y <- y - g(y)/g'(y)`` starting from ``x`` until ``g(y) = 0``.
    """
    F = A.field
    if not F.is_perfect:
        raise ImperfectField(f"{F.name} is not perfect")
    f = A.minimal_polynomial(x)
    g = squarefree_radical(F, f)
    dg = poly_derivative(F, g)
    y = x
    for _ in range(2 * A.dim + 2):
        gy = A.evaluate_poly(g, y)
        if A.is_zero(gy):
            return y, A.sub(x, y)
        y = A.sub(y, A.multiply(gy, A.invert(A.evaluate_poly(dg, y))))
    raise RuntimeError("Newton iteration did not converge")  # pragma: no cover


def poly_str(F: Field, f: Sequence) -> str:
    terms = []
    for i, c in enumerate(poly_trim(F, f)):
        if F.is_zero(c):
            continue
        mono = "" if i == 0 else ("T" if i == 1 else f"T^{i}")
        coef = F.fmt(c)
        terms.append(mono if (c == F.one and mono) else (coef + ("*" + mono if mono else "")))
    return " + ".join(reversed(terms)) or "0"
