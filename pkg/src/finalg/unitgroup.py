"""Unit groups of finite algebras, stored exhaustively.

A :class:`UnitGroup` is a sorted array of element codes of its parent
algebra (see :mod:`finalg.finite`), so iteration order is lexicographic in
coordinates.  Subgroups are built by breadth-first closure under a small
generating set; commutator subgroups are normal closures of commutators
of generators.
"""

from __future__ import annotations

import functools
import math
from typing import Sequence

import numpy as np

from . import limits
from .algebra import Algebra, make_matrix_algebra
from .errors import NotAnIdeal, NotNil, TooLarge
from .fields import Field
from .linalg import Subspace
from .verdicts import NOT_WITHIN_CAP, Verdict
from .words import GroupWord, derived_word, engel_word

_TUPLE_CHUNK = 1 << 15


class UnitGroup:
    def __init__(self, parent: Algebra, codes: np.ndarray, gens: np.ndarray | None = None, name: str | None = None):
        self.parent = parent
        self.fp = parent.fp
        self.codes = np.unique(np.asarray(codes, dtype=np.int64))
        self.digits = self.fp.decode(self.codes)
        self._gens = None if gens is None else np.asarray(gens, dtype=np.int64).reshape(-1, self.fp.N)
        self.name = name

    def __len__(self) -> int:
        return len(self.codes)

    @property
    def order(self) -> int:
        return len(self.codes)

    def __repr__(self) -> str:
        return f"<UnitGroup {self.name or ''} order={self.order}>"

    def __eq__(self, other) -> bool:
        return isinstance(other, UnitGroup) and np.array_equal(self.codes, other.codes)

    def __hash__(self) -> int:
        return hash(self.codes.tobytes())

    def is_trivial(self) -> bool:
        return self.order == 1

    def index_of(self, codes: np.ndarray) -> np.ndarray:
        codes = np.asarray(codes, dtype=np.int64)
        pos = np.searchsorted(self.codes, codes)
        pos = np.minimum(pos, len(self.codes) - 1)
        return np.where(self.codes[pos] == codes, pos, -1)

    def contains_digits(self, D: np.ndarray) -> np.ndarray:
        return self.index_of(self.fp.encode(D)) >= 0

    def __contains__(self, x) -> bool:
        return bool(self.contains_digits(self.fp.to_digits(x)[None])[0])

    def elements(self) -> list[tuple]:
        return [self.fp.from_digits(d) for d in self.digits]

    @functools.cached_property
    def inverse_digits(self) -> np.ndarray:
        return self.fp.invert(self.digits)[1]

    @property
    def gens(self) -> np.ndarray:
        if self._gens is None:
            self._gens = _greedy_generators(self.fp, self.digits)[0]
        return self._gens

    def is_abelian(self) -> bool:
        g = self.gens
        if len(g) == 0:
            return True
        a = np.repeat(g, len(g), axis=0)
        b = np.tile(g, (len(g), 1))
        return bool((self.fp.mul(a, b) == self.fp.mul(b, a)).all())

    def element_orders(self) -> np.ndarray:
        fp = self.fp
        orders = np.zeros(self.order, dtype=np.int64)
        cur = self.digits.copy()
        step = 1
        pending = np.ones(self.order, dtype=bool)
        while pending.any():
            done = pending & fp.is_one(cur)
            orders[done] = step
            pending &= ~done
            if pending.any():
                cur[pending] = fp.mul(cur[pending], self.digits[pending])
                step += 1
        return orders

    def exponent(self) -> int:
        return functools.reduce(math.lcm, (int(o) for o in np.unique(self.element_orders())), 1)

    def fingerprint(self) -> dict:
        return {"order": self.order, "abelian": self.is_abelian(), "exponent": self.exponent()}


# ---------------------------------------------------------------------------
# closures


def _closure_codes(fp, gens: np.ndarray) -> np.ndarray:
    """Sorted codes of the subgroup generated by ``gens`` (digit rows)."""
    one_code = fp.encode(fp.one[None])
    elems = one_code
    gens = np.asarray(gens, dtype=np.int64).reshape(-1, fp.N)
    if len(gens) == 0:
        return elems
    frontier = fp.one[None]
    while len(frontier):
        prods = fp.mul(frontier[:, None, :], gens[None, :, :]).reshape(-1, fp.N)
        codes, first = np.unique(fp.encode(prods), return_index=True)
        fresh = ~np.isin(codes, elems, assume_unique=True)
        elems = np.union1d(elems, codes[fresh])
        frontier = prods[first[fresh]]
    return elems


def _greedy_generators(fp, candidates: np.ndarray, start: np.ndarray | None = None):
    """Pick candidates (in order) not yet generated; returns (gens, subgroup codes)."""
    gens = np.zeros((0, fp.N), dtype=np.int64) if start is None else np.asarray(start).reshape(-1, fp.N)
    H = _closure_codes(fp, gens)
    cand_codes = fp.encode(candidates)
    while True:
        outside = np.nonzero(~np.isin(cand_codes, H))[0]
        if len(outside) == 0:
            return gens, H
        gens = np.vstack([gens, candidates[outside[0]][None]])
        H = _closure_codes(fp, gens)


def subgroup_closure(G: UnitGroup, gens: Sequence) -> UnitGroup:
    """Least subgroup of ``G`` containing ``gens`` (element tuples or digit rows)."""
    fp = G.fp
    D = _as_digits(fp, gens)
    if len(D) and not G.contains_digits(D).all():
        raise ValueError("generators must lie in the group")
    gens_d, codes = _greedy_generators(fp, D)
    return UnitGroup(G.parent, codes, gens_d)


def _as_digits(fp, xs) -> np.ndarray:
    if isinstance(xs, np.ndarray):
        return xs.reshape(-1, fp.N).astype(np.int64)
    rows = [fp.to_digits(x) for x in xs]
    return np.array(rows, dtype=np.int64).reshape(-1, fp.N)


def _commutators(fp, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Batch of ``x^-1 y^-1 x y``."""
    xi = fp.invert(X)[1]
    yi = fp.invert(Y)[1]
    return fp.mul(fp.mul(xi, yi), fp.mul(X, Y))


def normal_closure(G: UnitGroup, X: np.ndarray) -> UnitGroup:
    """Smallest normal subgroup of ``G`` containing the digit rows ``X``."""
    fp = G.fp
    gens, H = _greedy_generators(fp, np.asarray(X, dtype=np.int64).reshape(-1, fp.N))
    Gg = G.gens
    Gi = fp.invert(Gg)[1] if len(Gg) else Gg
    while True:
        if len(gens) == 0 or len(Gg) == 0:
            break
        h = np.repeat(gens, len(Gg), axis=0)
        g = np.tile(Gg, (len(gens), 1))
        gi = np.tile(Gi, (len(gens), 1))
        conj = fp.mul(fp.mul(gi, h), g)
        missing = ~np.isin(fp.encode(conj), H)
        if not missing.any():
            break
        gens, H = _greedy_generators(fp, conj[missing], start=gens)
    return UnitGroup(G.parent, H, gens)


def _pairs(X: np.ndarray, Y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return np.repeat(X, len(Y), axis=0), np.tile(Y, (len(X), 1))


def derived_subgroup(G: UnitGroup) -> UnitGroup:
    g = G.gens
    if len(g) == 0:
        return G
    a, b = _pairs(g, g)
    return normal_closure(G, _commutators(G.fp, a, b))


def commutator_with(G: UnitGroup, H: UnitGroup) -> UnitGroup:
    """``[H, G]`` for a normal subgroup ``H`` of ``G``."""
    if len(H.gens) == 0 or len(G.gens) == 0:
        return UnitGroup(G.parent, G.fp.encode(G.fp.one[None]), np.zeros((0, G.fp.N), np.int64))
    a, b = _pairs(H.gens, G.gens)
    return normal_closure(G, _commutators(G.fp, a, b))


# ---------------------------------------------------------------------------
# constructors


def enumerate_units(A: Algebra, limit: int | None = None) -> UnitGroup:
    """All units of a finite algebra, found by testing every element."""
    if not A.field.is_finite:
        raise TooLarge("unit enumeration needs a finite field")
    codes = A.fp.unit_codes(limits.max_card(limit))
    return UnitGroup(A, codes, name=f"{A.name}^x" if A.name else None)


def make_gl(field: Field, n: int, limit: int | None = None) -> UnitGroup:
    A = make_matrix_algebra(field, n)
    G = enumerate_units(A, limit)
    G.name = f"GL{n}({field.name})"
    return G


def adjoint_group(A: Algebra, N: Subspace, limit: int | None = None) -> UnitGroup:
    """The group ``1 + N`` for a nil subspace closed under multiplication."""
    fp = A.fp
    for v in N.basis:
        if not A.is_nilpotent_elem(v):
            raise NotNil(f"basis element {A.fmt(v)} is not nilpotent")
        for w in N.basis:
            if not N.contains(A.multiply(v, w)):
                raise NotAnIdeal("subspace is not closed under multiplication")
    size = A.field.order**N.dim
    if size > limits.max_card(limit):
        raise TooLarge(f"|N| = {size} exceeds the enumeration bound")
    elems = fp.subspace_to_fp(N).elements()
    if not fp.is_nilpotent(elems).all():
        raise NotNil("subspace contains a non-nilpotent element")
    return UnitGroup(A, fp.encode((elems + fp.one) % fp.p))


# ---------------------------------------------------------------------------
# series


def _series(G: UnitGroup, step) -> list[UnitGroup]:
    terms = [G]
    while not terms[-1].is_trivial():
        nxt = step(terms[-1])
        terms.append(nxt)
        if nxt == terms[-2]:
            break
    return terms


def derived_series(G: UnitGroup) -> list[UnitGroup]:
    """``G, G', G'', ...`` ending at the trivial group or repeating the stable term once."""
    return _series(G, derived_subgroup)


def lower_central_series(G: UnitGroup) -> list[UnitGroup]:
    return _series(G, lambda H: commutator_with(G, H))


def is_solvable(G: UnitGroup) -> tuple[bool, int | None]:
    terms = derived_series(G)
    if terms[-1].is_trivial():
        return True, len(terms) - 1
    return False, None


def is_nilpotent_group(G: UnitGroup) -> tuple[bool, int | None]:
    terms = lower_central_series(G)
    if terms[-1].is_trivial():
        return True, len(terms) - 1
    return False, None


# ---------------------------------------------------------------------------
# identities


def check_word_identity(
    G: UnitGroup,
    w: GroupWord,
    mode: str = "exhaustive",
    seed: int = 0,
    count: int = 1000,
    max_tuples: int = limits.MAX_TUPLES,
) -> Verdict:
    """Evaluate ``w`` on all (or ``count`` sampled) tuples of group elements.

    Exhaustive tuples are scanned in lexicographic order of element codes,
    first variable most significant; the first failing tuple is returned.
    """
    fp = G.fp
    k, m = w.arity, G.order
    inv = G.inverse_digits

    def evaluate(idx: np.ndarray) -> np.ndarray:
        acc = np.broadcast_to(fp.one, (len(idx), fp.N)).copy()
        for v, e in w.letters:
            acc = fp.mul(acc, (G.digits if e > 0 else inv)[idx[:, v]])
        return fp.is_one(acc)

    def witness(row) -> tuple:
        return tuple(fp.from_digits(G.digits[i]) for i in row)

    if mode == "exhaustive":
        total = m**k
        if total > max_tuples:
            raise TooLarge(f"{m}^{k} tuples exceed the bound {max_tuples}")
        radix = m ** np.arange(k - 1, -1, -1, dtype=np.int64)
        for s in range(0, total, _TUPLE_CHUNK):
            flat = np.arange(s, min(s + _TUPLE_CHUNK, total), dtype=np.int64)
            idx = (flat[:, None] // radix) % m
            ok = evaluate(idx)
            if not ok.all():
                first = int(np.argmin(ok))
                return Verdict(False, witness(idx[first]), s + first + 1, mode)
        return Verdict(True, None, total, mode)
    if mode == "sample":
        rng = np.random.default_rng(seed)
        idx = rng.integers(m, size=(count, k))
        ok = evaluate(idx)
        if not ok.all():
            first = int(np.argmin(ok))
            return Verdict(False, witness(idx[first]), first + 1, mode)
        return Verdict(True, None, count, mode)
    raise ValueError(f"unknown mode {mode!r}")


def is_bounded_engel_group(G: UnitGroup, cap: int = limits.DEFAULT_ENGEL_CAP):
    """(nilpotent?, least Engel length n <= cap) for a finite group.

    Finite Engel groups are nilpotent, so the verdict is the nilpotency
    verdict; a class-c group is c-Engel, which bounds the search.
    """
    nilpotent, cls = is_nilpotent_group(G)
    if not nilpotent:
        return False, None
    for n in range(1, min(max(cls, 1), cap) + 1):
        if n == cls or check_word_identity(G, engel_word(n)).holds:
            return True, n
    return True, NOT_WITHIN_CAP


def satisfies_derived_word(G: UnitGroup, d: int) -> Verdict:
    return check_word_identity(G, derived_word(d))
