"""Restricted Lie algebras and their restricted enveloping algebras.

``u(L)`` is built on the truncated PBW basis ``e_1^a_1 ... e_n^a_n`` with
``0 <= a_i < p``; monomial ``a`` has index ``sum(a_i * p**i)``.  Products
are straightened by the rewriting rules

    e_k e_j -> e_j e_k + [e_k, e_j]     (k > j)
    e_j^p   -> e_j^[p]

memoised on (monomial, generator) pairs.  The finished table is then put
through full associativity validation, which certifies the presentation.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from . import limits
from .algebra import Algebra, nilpotency_index, span
from .errors import (
    BadInput,
    InternalInconsistency,
    JacobiFails,
    NoSolution,
    NotAntisymmetric,
    NotAssociative,
    NotInL,
    NotRestricted,
    NotRestrictedIdeal,
    PNotSubspace,
    StraighteningInconsistent,
    TooLarge,
)
from .fields import Field, FieldSpec, make_field, rational_function_field, gf
from .linalg import Subspace, kernel, mat_mul, solve
from .verdicts import SKIPPED, TheoremVerdict, Verdict

Vector = tuple
U_MAX_DIM = 1 << 15


def _default_labels(n: int) -> list[str]:
    return list("xyzw"[:n]) if n <= 4 else [f"e{i + 1}" for i in range(n)]


class RestrictedLieAlgebra:
    """Bracket table ``bracket[i][j] = [e_i, e_j]`` plus p-map images ``pmap[i] = e_i^[p]``."""

    def __init__(
        self,
        field: Field,
        bracket: Sequence[Sequence[Sequence]],
        pmap: Sequence[Sequence],
        *,
        labels: Sequence[str] | None = None,
        name: str | None = None,
        check: bool = True,
    ):
        if field.p <= 0:
            raise BadInput("restricted Lie algebras need positive characteristic")
        n = len(pmap)
        self.field = field
        self.p = field.p
        self.dim = n
        self.bracket = tuple(tuple(tuple(c) for c in row) for row in bracket)
        self.pmap = tuple(tuple(v) for v in pmap)
        self.labels = list(labels) if labels is not None else _default_labels(n)
        self.name = name
        if len(self.bracket) != n or any(len(r) != n or any(len(v) != n for v in r) for r in self.bracket):
            raise BadInput("bracket table does not match the p-map dimension")
        if any(len(v) != n for v in self.pmap):
            raise BadInput("p-map images must have length dim")
        if check:
            self.validate()

    def __repr__(self) -> str:
        return f"<RestrictedLieAlgebra {self.name or ''} dim={self.dim} over {self.field.name}>"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RestrictedLieAlgebra)
            and self.field == other.field
            and self.bracket == other.bracket
            and self.pmap == other.pmap
        )

    def __hash__(self) -> int:
        return hash((self.field, self.bracket, self.pmap))

    # -- linear structure ---------------------------------------------------

    def zero(self) -> Vector:
        return (self.field.zero,) * self.dim

    def basis(self, i: int) -> Vector:
        F = self.field
        return tuple(F.one if j == i else F.zero for j in range(self.dim))

    def add(self, u, v) -> Vector:
        return tuple(self.field.add(a, b) for a, b in zip(u, v))

    def scale(self, c, v) -> Vector:
        return tuple(self.field.mul(c, a) for a in v)

    def lie(self, u, v) -> Vector:
        F, n = self.field, self.dim
        out = [F.zero] * n
        for i, a in enumerate(u):
            if F.is_zero(a):
                continue
            for j, b in enumerate(v):
                if F.is_zero(b):
                    continue
                ab = F.mul(a, b)
                for l, c in enumerate(self.bracket[i][j]):
                    if not F.is_zero(c):
                        out[l] = F.add(out[l], F.mul(ab, c))
        return tuple(out)

    def ad(self, v) -> list[list]:
        """Matrix of ``w -> [v, w]`` on column coordinates."""
        cols = [self.lie(v, self.basis(j)) for j in range(self.dim)]
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def is_abelian(self) -> bool:
        return all(self.field.is_zero(c) for row in self.bracket for v in row for c in v)

    def fmt(self, v) -> str:
        F = self.field
        terms = [lab if c == F.one else f"{F.fmt(c)}*{lab}" for c, lab in zip(v, self.labels) if not F.is_zero(c)]
        return " + ".join(terms) or "0"

    def elements(self) -> Iterator[Vector]:
        return itertools.product(list(self.field.elements()), repeat=self.dim)

    @property
    def cardinality(self) -> int | None:
        return self.field.order**self.dim if self.field.is_finite else None

    # -- validation ----------------------------------------------------------

    def validate(self) -> None:
        F, n = self.field, self.dim
        for i in range(n):
            if any(not F.is_zero(c) for c in self.bracket[i][i]):
                raise NotAntisymmetric(f"[{self.labels[i]},{self.labels[i]}] != 0")
            for j in range(i + 1, n):
                if any(not F.is_zero(F.add(a, b)) for a, b in zip(self.bracket[i][j], self.bracket[j][i])):
                    raise NotAntisymmetric(f"[{self.labels[i]},{self.labels[j]}] != -[{self.labels[j]},{self.labels[i]}]")
        self.check_jacobi()
        e = [self.basis(i) for i in range(n)]
        for i in range(n):
            lhs = self.ad(self.pmap[i])
            M = self.ad(e[i])
            rhs = M
            for _ in range(self.p - 1):
                rhs = mat_mul(F, rhs, M)
            if [list(r) for r in lhs] != [list(r) for r in rhs]:
                raise NotRestricted(f"ad({self.labels[i]}^[p]) != (ad {self.labels[i]})^p")

    def check_jacobi(self) -> None:
        F = self.field
        e = [self.basis(i) for i in range(self.dim)]
        for i, j, k in itertools.combinations(range(self.dim), 3):
            s = self.zero()
            for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                s = self.add(s, self.lie(e[a], self.lie(e[b], e[c])))
            if any(not F.is_zero(c) for c in s):
                raise JacobiFails(f"Jacobi identity fails on ({self.labels[i]}, {self.labels[j]}, {self.labels[k]})")

    # -- io ------------------------------------------------------------------

    def to_json(self) -> dict:
        F = self.field
        return {
            "field": F.spec.to_json(),
            "dim": self.dim,
            "bracket": [[[F.to_json(c) for c in v] for v in row] for row in self.bracket],
            "pmap": [[F.to_json(c) for c in v] for v in self.pmap],
        }

    @classmethod
    def from_json(cls, obj: dict, **kw) -> "RestrictedLieAlgebra":
        try:
            F = make_field(FieldSpec.from_json(obj["field"]))
            bracket = [[[F.from_json(c) for c in v] for v in row] for row in obj["bracket"]]
            pmap = [[F.from_json(c) for c in v] for v in obj["pmap"]]
            dim = int(obj.get("dim", len(pmap)))
        except (KeyError, TypeError, ValueError) as exc:
            raise BadInput(f"malformed restricted Lie algebra JSON: {exc}") from exc
        if dim != len(pmap):
            raise BadInput(f"dim {dim} does not match p-map length {len(pmap)}")
        return cls(F, bracket, pmap, **kw)

    # -- enveloping algebra ----------------------------------------------------

    @functools.cached_property
    def u(self) -> Algebra:
        return build_u(self)


def make_restricted(field: Field, bracket, pmap, **kw) -> RestrictedLieAlgebra:
    return RestrictedLieAlgebra(field, bracket, pmap, **kw)


# ---------------------------------------------------------------------------
# PBW straightening


class _Straightener:
    def __init__(self, L: RestrictedLieAlgebra):
        self.L = L
        self.F = L.field
        self.p, self.n = L.p, L.dim
        self.size = self.p**self.n
        self.memo: dict[tuple[int, int], dict[int, object]] = {}

    def exps(self, m: int) -> list[int]:
        return [(m // self.p**i) % self.p for i in range(self.n)]

    def _axpy(self, acc: dict, c, vec: dict) -> None:
        F = self.F
        for mono, a in vec.items():
            v = F.add(acc.get(mono, F.zero), F.mul(c, a))
            if F.is_zero(v):
                acc.pop(mono, None)
            else:
                acc[mono] = v

    def _lie_vec(self, coords) -> dict:
        """An element of L as a combination of degree-one monomials."""
        return {self.p**l: c for l, c in enumerate(coords) if not self.F.is_zero(c)}

    def times_vec(self, vec: dict, j: int) -> dict:
        acc: dict = {}
        for mono, c in vec.items():
            self._axpy(acc, c, self.mul_gen(mono, j))
        return acc

    def times_lie(self, m: int, coords) -> dict:
        acc: dict = {}
        for l, c in enumerate(coords):
            if not self.F.is_zero(c):
                self._axpy(acc, c, self.mul_gen(m, l))
        return acc

    def mul_gen(self, m: int, j: int) -> dict:
        """Straightened form of ``monomial(m) * e_j``."""
        key = (m, j)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        p, F = self.p, self.F
        a = self.exps(m)
        k = max((i for i in range(self.n) if a[i]), default=-1)
        if k < j:
            out = {m + p**j: F.one}
        elif k == j:
            if a[j] + 1 < p:
                out = {m + p**j: F.one}
            else:
                # e_j^p -> e_j^[p]
                out = self.times_lie(m - a[j] * p**j, self.L.pmap[j])
        else:
            rest = m - p**k
            # m e_j = rest e_k e_j = (rest e_j) e_k + rest [e_k, e_j]
            out = {}
            self._axpy(out, F.one, self.times_vec(self.mul_gen(rest, j), k))
            self._axpy(out, F.one, self.times_lie(rest, self.L.bracket[k][j]))
        self.memo[key] = out
        return out

    def product(self, a: int, b: int) -> dict:
        vec = {a: self.F.one}
        for i, e in enumerate(self.exps(b)):
            for _ in range(e):
                vec = self.times_vec(vec, i)
        return vec


def _monomial_label(L: RestrictedLieAlgebra, m: int) -> str:
    p = L.p
    parts = []
    for i in range(L.dim):
        e = (m // p**i) % p
        if e:
            parts.append(L.labels[i] + (f"^{e}" if e > 1 else ""))
    return "".join(parts) or "1"


def build_u(L: RestrictedLieAlgebra) -> Algebra:
    """The restricted enveloping algebra on the truncated PBW basis."""
    size = L.p**L.dim
    if size > U_MAX_DIM:
        raise TooLarge(f"dim u(L) = {size} exceeds {U_MAX_DIM}")
    F = L.field
    st = _Straightener(L)
    table = []
    for a in range(size):
        row = []
        for b in range(size):
            vec = st.product(a, b)
            row.append(tuple(vec.get(m, F.zero) for m in range(size)))
        table.append(row)
    one = tuple(F.one if m == 0 else F.zero for m in range(size))
    labels = [_monomial_label(L, m) for m in range(size)]
    try:
        U = Algebra(F, table, one, labels=labels, name=f"u({L.name})" if L.name else "u(L)")
    except NotAssociative as exc:
        raise StraighteningInconsistent(f"straightened product is not associative: {exc}") from exc
    U.restricted = L
    _check_relations(L, U)
    return U


def _check_relations(L: RestrictedLieAlgebra, U: Algebra) -> None:
    """The defining relations must hold in the finished table."""
    for i in range(L.dim):
        ei = embed(L, L.basis(i), U)
        if U.power(ei, L.p) != embed(L, L.pmap[i], U):
            raise StraighteningInconsistent(f"{L.labels[i]}^p differs from its p-map image")
        for j in range(L.dim):
            ej = embed(L, L.basis(j), U)
            if U.bracket(ei, ej) != embed(L, L.bracket[i][j], U):
                raise StraighteningInconsistent(f"[{L.labels[i]},{L.labels[j]}] is not preserved")


def embed(L: RestrictedLieAlgebra, v: Sequence, U: Algebra | None = None) -> tuple:
    U = L.u if U is None else U
    out = [L.field.zero] * U.dim
    for i, c in enumerate(v):
        out[L.p**i] = c
    return tuple(out)


def project_to_L(L: RestrictedLieAlgebra, a: Sequence, U: Algebra | None = None) -> tuple:
    U = L.u if U is None else U
    F = L.field
    degree_one = {L.p**i for i in range(L.dim)}
    if any(not F.is_zero(c) for m, c in enumerate(a) if m not in degree_one):
        raise NotInL(f"{U.fmt(tuple(a))} is not in the span of L")
    return tuple(a[L.p**i] for i in range(L.dim))


def p_power(L: RestrictedLieAlgebra, v: Sequence) -> tuple:
    """``v^[p]``, evaluated as the associative p-th power inside u(L)."""
    U = L.u
    try:
        return project_to_L(L, U.power(embed(L, v, U), L.p), U)
    except NotInL as exc:
        raise InternalInconsistency(f"p-th power of {L.fmt(v)} leaves L") from exc


def p_power_iter(L: RestrictedLieAlgebra, v: Sequence, k: int) -> tuple:
    for _ in range(k):
        v = p_power(L, v)
    return tuple(v)


@dataclass(frozen=True)
class PPolynomial:
    """``sum alpha_i x^(p^i) = 0`` with ``alpha_m = 1``."""

    coefficients: tuple
    p: int

    @property
    def m(self) -> int:
        return len(self.coefficients) - 1

    def associative(self, F: Field) -> list:
        """Dense coefficients of ``sum alpha_i T^(p^i)``."""
        out = [F.zero] * (self.p**self.m + 1)
        for i, a in enumerate(self.coefficients):
            out[self.p**i] = F.add(out[self.p**i], a)
        return out

    def is_pure_power(self, F: Field) -> bool:
        return all(F.is_zero(a) for a in self.coefficients[:-1])


def p_polynomial(L: RestrictedLieAlgebra, v: Sequence) -> PPolynomial:
    """First linear dependence among ``v, v^[p], v^[p]^2, ...``."""
    F = L.field
    chain = [tuple(v)]
    while True:
        S = Subspace(F, L.dim, chain[:-1])
        if S.contains(chain[-1]):
            m = len(chain) - 1
            if m == 0:
                return PPolynomial((F.one,), L.p)
            M = [[chain[i][r] for i in range(m)] for r in range(L.dim)]
            beta = solve(F, M, chain[-1])
            return PPolynomial(tuple(F.neg(b) for b in beta) + (F.one,), L.p)
        chain.append(p_power(L, chain[-1]))


def is_p_nilpotent(L: RestrictedLieAlgebra, v: Sequence) -> bool:
    return p_polynomial(L, v).is_pure_power(L.field)


# ---------------------------------------------------------------------------
# P(L)


@dataclass
class PSet:
    """The p-nilpotent elements; ``subspace`` is set when they form a restricted subalgebra."""

    subspace: Subspace | None
    elements: list
    exact: bool
    closure_witness: tuple | None = None
    note: str | None = None

    @property
    def is_subspace(self) -> bool:
        return self.subspace is not None

    def to_json(self) -> dict:
        return {
            "is_subspace": self.is_subspace,
            "dim": self.subspace.dim if self.subspace is not None else None,
            "count": len(self.elements),
            "exact": self.exact,
        }


def _p_nilpotent_mask_fp(L: RestrictedLieAlgebra, D: np.ndarray) -> np.ndarray:
    """Vectorised p-nilpotency test on digit rows of L (finite fields)."""
    U = L.u
    fp = U.fp
    k = L.field.k
    idx = np.array([L.p**i * k + a for i in range(L.dim) for a in range(k)])
    X = np.zeros((len(D), fp.N), dtype=np.int64)
    X[:, idx] = D
    for _ in range(L.dim):
        X = fp.power(X, L.p)
    return ~X.any(axis=1)


def compute_P(L: RestrictedLieAlgebra, limit: int = 1 << 16) -> PSet:
    F = L.field
    if F.is_finite:
        if L.cardinality > limit:
            raise TooLarge(f"|L| = {L.cardinality} exceeds {limit}")
        fp_L = L.field.order
        k = F.k
        codes = np.arange(fp_L**L.dim, dtype=np.int64)
        coords = np.stack([(codes // fp_L ** (L.dim - 1 - i)) % fp_L for i in range(L.dim)], axis=1)
        D = np.zeros((len(codes), L.dim * k), dtype=np.int64)
        for i in range(L.dim):
            for a in range(k):
                D[:, i * k + a] = (coords[:, i] // L.p**a) % L.p
        mask = _p_nilpotent_mask_fp(L, D)
        elems = [
            tuple(F.from_digits([int(d) for d in D[r, i * k : (i + 1) * k]]) for i in range(L.dim))
            for r in np.nonzero(mask)[0]
        ]
        exact, note = True, None
    else:
        # spanning search over prime-field combinations of the basis
        primes = range(L.p)
        elems = [v for v in itertools.product([F.from_int(c) for c in primes], repeat=L.dim) if is_p_nilpotent(L, v)]
        exact, note = False, "searched prime-field combinations of the basis only"
    S = Subspace(F, L.dim, elems)
    witness = None
    elem_set = set(elems)
    closed = F.is_finite and len(elems) == F.order**S.dim
    if not F.is_finite:
        closed = all(is_p_nilpotent(L, b) for b in S.basis)
    if not closed and F.is_finite:
        witness = next(((a, b) for a in elems for b in elems if L.add(a, b) not in elem_set), None)
    if closed:
        for a in S.basis:
            for b in S.basis:
                if not S.contains(L.lie(a, b)):
                    closed, witness = False, (a, b)
                    break
            if not closed:
                break
    return PSet(S if closed else None, elems, exact, witness, note)


def pl_ideal(L: RestrictedLieAlgebra, P: PSet | None = None) -> Subspace:
    """The subspace ``P(L) u(L)`` of u(L)."""
    P = compute_P(L) if P is None else P
    if not P.is_subspace:
        raise PNotSubspace("P(L) is not a subspace")
    U = L.u
    gens = [embed(L, z, U) for z in P.subspace.basis]
    return span(U, [U.multiply(g, U.basis(m)) for g in gens for m in range(U.dim)])


# ---------------------------------------------------------------------------
# substructures


def restricted_subalgebra(L: RestrictedLieAlgebra, gens: Sequence) -> Subspace:
    S = Subspace(L.field, L.dim, gens)
    while True:
        new = S.span_with([L.lie(a, b) for a in S.basis for b in S.basis])
        new = new.span_with([p_power(L, a) for a in S.basis])
        if new == S:
            return S
        S = new


def derived_subalgebra(L: RestrictedLieAlgebra) -> Subspace:
    return Subspace(L.field, L.dim, [L.bracket[i][j] for i in range(L.dim) for j in range(i + 1, L.dim)])


def lower_central_series_L(L: RestrictedLieAlgebra) -> list[Subspace]:
    full = Subspace.full(L.field, L.dim)
    terms = [full]
    while not terms[-1].is_zero():
        nxt = Subspace(L.field, L.dim, [L.lie(a, b) for a in terms[-1].basis for b in full.basis])
        terms.append(nxt)
        if nxt == terms[-2]:
            break
    return terms


def lie_nilpotent_L(L: RestrictedLieAlgebra) -> tuple[bool, int | None]:
    terms = lower_central_series_L(L)
    if terms[-1].is_zero():
        return True, len(terms) - 1
    return False, None


def is_restricted_ideal(L: RestrictedLieAlgebra, I: Subspace) -> bool:
    return all(I.contains(L.lie(a, L.basis(j))) for a in I.basis for j in range(L.dim)) and all(
        I.contains(p_power(L, a)) for a in I.basis
    )


def quotient_L(L: RestrictedLieAlgebra, I: Subspace) -> RestrictedLieAlgebra:
    if not is_restricted_ideal(L, I):
        raise NotRestrictedIdeal("subspace is not stable under bracket and p-map")
    comp = I.complement_indices()

    def proj(v):
        r = I.reduce(v)
        return tuple(r[c] for c in comp)

    bracket = [[proj(L.bracket[a][b]) for b in comp] for a in comp]
    pmap = [proj(L.pmap[a]) for a in comp]
    return RestrictedLieAlgebra(L.field, bracket, pmap, labels=[L.labels[c] for c in comp])


def is_p_nil_subspace(L: RestrictedLieAlgebra, S: Subspace, P: PSet | None = None) -> bool:
    """Every element of ``S`` is p-nilpotent (exhaustive over finite fields)."""
    if L.field.is_finite:
        P = compute_P(L) if P is None else P
        pset = set(P.elements)
        return all(tuple(v) in pset for v in S.elements())
    return all(is_p_nilpotent(L, b) for b in S.basis)


# ---------------------------------------------------------------------------
# lemma checks


def _nilpotent_set(U: Algebra, limit: int) -> np.ndarray:
    return U.fp.nilpotent_codes(limit)


def lemma_3_2_check(L: RestrictedLieAlgebra, limit: int = 1 << 16) -> TheoremVerdict:
    v = TheoremVerdict("lem3.2")
    F = L.field
    P = compute_P(L)
    v.set("lem3.2.P", P.to_json()["dim"] if P.is_subspace else "not-a-subspace", count=len(P.elements))
    perfect = F.is_perfect
    D = derived_subalgebra(L)
    derived_in_P = P.is_subspace and D.is_subspace_of(P.subspace) if F.is_finite else is_p_nil_subspace(L, D)
    v.set("lem3.2.hyp.perfect", perfect)
    v.set("lem3.2.hyp.derived_in_P", bool(derived_in_P))
    v.in_hypothesis = bool(perfect and derived_in_P)
    if not F.is_finite:
        return _lemma_3_2_witness_path(L, P, v)
    U = L.u
    if F.order**U.dim > limit:
        v.set("lem3.2.N_equals_PLu", SKIPPED)
        return v
    N_codes = _nilpotent_set(U, limit)
    if P.is_subspace:
        I = pl_ideal(L, P)
        I_codes = np.sort(U.fp.encode(U.fp.subspace_to_fp(I).elements()))
        equal = np.array_equal(N_codes, I_codes)
        v.set("lem3.2.N_equals_PLu", bool(equal), nilpotent_count=len(N_codes), ideal_dim=I.dim)
    else:
        equal = None
        v.set("lem3.2.N_equals_PLu", "P(L) not a subspace", nilpotent_count=len(N_codes))
    if v.in_hypothesis:
        v.consistent = bool(equal)
    return v


def _lemma_3_2_witness_path(L: RestrictedLieAlgebra, P: PSet, v: TheoremVerdict) -> TheoremVerdict:
    """Non-perfect field: look for the square-zero element ``x^(p-1) y - y``."""
    F = L.field
    U = L.u
    p_zero = P.is_subspace and P.subspace.is_zero()
    v.set("lem3.2.P_zero", bool(p_zero), exact=P.exact)
    v.notes.append("field is not perfect; checking the square-zero witness")
    found = None
    for i in range(L.dim):
        if L.pmap[i] != L.basis(i):
            continue
        x = embed(L, L.basis(i), U)
        xp = U.power(x, L.p - 1)
        for j in range(L.dim):
            if j == i:
                continue
            y = embed(L, L.basis(j), U)
            z = U.sub(U.multiply(xp, y), y)
            if not U.is_zero(z) and U.is_zero(U.multiply(z, z)):
                found = (i, j, z)
                break
        if found:
            break
    if found is None:
        v.set("lem3.2.witness", False)
        return v
    i, j, z = found
    v.set("lem3.2.witness", True, x=L.labels[i], y=L.labels[j], z=U.fmt(z))
    v.set("lem3.2.witness_nonzero", True)
    v.set("lem3.2.witness_square_zero", True)
    return v


def is_reduced(U: Algebra, limit: int = 1 << 16) -> bool:
    return len(_nilpotent_set(U, limit)) == 1


def lemma_3_5_witness_check(L: RestrictedLieAlgebra, x_idx: int, y_idx: int) -> Verdict:
    """Rebuild ``w = [x,y] * sum alpha_i x^(p^i - 1)`` and check ``w^2 = 0``."""
    U = L.u
    x, y = L.basis(x_idx), L.basis(y_idx)
    pp = p_polynomial(L, x)
    ex = embed(L, x, U)
    g = U.zero()
    for i, a in enumerate(pp.coefficients):
        g = U.add(g, U.scale(a, U.power(ex, L.p**i - 1)))
    w = U.multiply(embed(L, L.lie(x, y), U), g)
    square_zero = U.is_zero(U.multiply(w, w))
    branch = "alpha0 != 0" if not L.field.is_zero(pp.coefficients[0]) else "alpha0 = 0"
    notes = [f"p-polynomial degree p^{pp.m}", branch]
    holds = square_zero
    if U.field.is_finite and U.cardinality <= 1 << 16:
        reduced = is_reduced(U)
        if reduced:
            in_xp = restricted_subalgebra(L, [x]).contains(L.lie(x, y))
            holds = holds and U.is_zero(w) and in_xp
            notes.append("u(L) reduced: w = 0 and [x,y] in <x>_p" if holds else "u(L) reduced but conclusion fails")
        else:
            notes.append("hypothesis (reduced) fails")
    counter = None if holds else (x, y)
    return Verdict(holds, counter, 1, "witness", "; ".join(notes))


# ---------------------------------------------------------------------------
# corollaries


def corollary_evaluate(L: RestrictedLieAlgebra, which: str, cap: int = limits.DEFAULT_ENGEL_CAP) -> TheoremVerdict:
    from .liestruct import engel_degree, is_lie_nilpotent, is_lie_solvable
    from .unitgroup import enumerate_units, is_nilpotent_group, is_solvable
    from .verdicts import NOT_WITHIN_CAP

    which = str(which)
    if which not in ("3.8", "3.9", "3.10"):
        raise BadInput(f"unknown corollary {which!r}")
    v = TheoremVerdict(f"cor{which}")
    F = L.field
    if which == "3.8":
        ok = F.is_finite and F.p % 2 == 1 and F.order >= 5
        constraint = "odd characteristic with at least 5 elements"
    else:
        ok = F.is_perfect and F.is_finite and F.order >= 3
        constraint = "perfect field with at least 3 elements"
    v.in_hypothesis = ok
    if not ok:
        v.notes.append(f"field constraint violated: needs {constraint}")
    U = L.u
    G = enumerate_units(U)
    P = compute_P(L)
    D = derived_subalgebra(L)
    derived_pnil = is_p_nil_subspace(L, D, P)
    L_nil, L_class = lie_nilpotent_L(L)
    key = f"cor{which}"
    if which == "3.8":
        c1 = is_solvable(G)[0]
        c2 = is_lie_solvable(U)[0]
        c3 = derived_pnil
        v.set(f"{key}.cond1", c1, group_order=G.order)
        v.set(f"{key}.cond2", c2)
        v.set(f"{key}.cond3", c3)
    elif which == "3.9":
        c1 = is_nilpotent_group(G)[0]  # finite groups: bounded Engel <=> nilpotent
        deg = engel_degree(U, cap)
        c2 = True if (deg != NOT_WITHIN_CAP or is_lie_nilpotent(U)[0]) else NOT_WITHIN_CAP
        c3 = L_nil and derived_pnil
        v.set(f"{key}.cond1", c1, group_order=G.order)
        v.set(f"{key}.cond2", c2, engel_length=deg)
        v.set(f"{key}.cond3", c3, L_nilpotent=L_nil, derived_p_nil=derived_pnil, ideal="I = L")
    else:
        c1, g_class = is_nilpotent_group(G)
        c2, u_class = is_lie_nilpotent(U)
        c3 = L_nil and derived_pnil
        v.set(f"{key}.cond1", c1, group_order=G.order, nilpotency_class=g_class)
        v.set(f"{key}.cond2", c2, nilpotency_class=u_class)
        v.set(f"{key}.cond3", c3, L_nilpotent=L_nil, L_class=L_class, derived_p_nil=derived_pnil)
    vals = [v.value(f"{key}.cond{i}") for i in (1, 2, 3)]
    if ok and all(isinstance(x, bool) for x in vals):
        v.consistent = len(set(vals)) == 1
    return v


# ---------------------------------------------------------------------------
# built-ins and the sweep corpus


def klein() -> RestrictedLieAlgebra:
    """Over F2: ``[x,y] = x``, ``x^[2] = 0``, ``y^[2] = y``."""
    F = gf(2)
    x, y, z = (1, 0), (0, 1), (0, 0)
    return RestrictedLieAlgebra(F, [[z, x], [x, z]], [z, y], labels=["x", "y"], name="klein")


def lemma32_counterexample(p: int = 2) -> RestrictedLieAlgebra:
    """Abelian over F_p(t): ``x^[p] = x``, ``y^[p] = t x``."""
    F = rational_function_field(p)
    zero, one, t = F.zero, F.one, F.t
    z = (zero, zero)
    return RestrictedLieAlgebra(F, [[z, z], [z, z]], [(one, zero), (t, zero)], labels=["x", "y"], name="lemma32-counterexample")


BUILTINS = {"klein": klein, "lemma32-counterexample": lemma32_counterexample}


def _pmap_choices(F: Field, n: int, bracket) -> list[list[tuple]] | None:
    """For each basis element, every v with ad(v) = (ad e_i)^p."""
    L0 = RestrictedLieAlgebra(F, bracket, [(F.zero,) * n] * n, check=False)
    ad_basis = [L0.ad(L0.basis(l)) for l in range(n)]
    # ad(v) = sum v_l ad(e_l): n*n equations in n unknowns
    M = [[ad_basis[l][r][c] for l in range(n)] for r in range(n) for c in range(n)]
    Z = kernel(F, M, n)
    Zelems = list(Z.elements())
    out = []
    for i in range(n):
        A = L0.ad(L0.basis(i))
        P = A
        for _ in range(F.p - 1):
            P = mat_mul(F, P, A)
        target = [P[r][c] for r in range(n) for c in range(n)]
        try:
            part = solve(F, M, target)
        except NoSolution:
            return None
        out.append([tuple(F.add(a, b) for a, b in zip(part, z)) for z in Zelems])
    return out


def enumerate_presentations(F: Field, max_dim: int, min_dim: int = 1) -> Iterator[RestrictedLieAlgebra]:
    """Every valid (bracket, p-map) table over a finite field with min_dim <= dim <= max_dim.

    Brackets run over all antisymmetric tables satisfying Jacobi; for each,
    the admissible images of ``e_i`` form a coset of the centre.
    """
    elems = list(F.elements())
    for n in range(min_dim, max_dim + 1):
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        for choice in itertools.product(itertools.product(elems, repeat=n), repeat=len(pairs)):
            bracket = [[(F.zero,) * n for _ in range(n)] for _ in range(n)]
            for (i, j), vec in zip(pairs, choice):
                bracket[i][j] = vec
                bracket[j][i] = tuple(F.neg(c) for c in vec)
            try:
                RestrictedLieAlgebra(F, bracket, [(F.zero,) * n] * n, check=False).check_jacobi()
            except JacobiFails:
                continue
            choices = _pmap_choices(F, n, bracket)
            if choices is None:
                continue
            for pmap in itertools.product(*choices):
                yield RestrictedLieAlgebra(F, bracket, list(pmap), check=False)


SWEEP_FAMILIES = {
    "restricted-f2-d3": (2, 3),
    "restricted-f3-d2": (3, 2),
}


def sweep_corpus(family: str) -> list[RestrictedLieAlgebra]:
    if family not in SWEEP_FAMILIES:
        raise BadInput(f"unknown sweep family {family!r}")
    q, d = SWEEP_FAMILIES[family]
    return list(enumerate_presentations(gf(q), d))
