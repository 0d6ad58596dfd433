"""Lie structure of associative algebras, identity checkers and theorem evaluators.

Series are computed on subspaces (field-size independent); the identity
checkers enumerate the algebra through its F_p view and report the first
counterexample in scan order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import limits
from .algebra import (
    Algebra,
    center,
    nilpotency_index,
    nilpotent_set_span,
    span,
    subalgebra_generated,
)
from .errors import FinalgError, HypothesisFailed, TooLarge, UnsupportedField
from .finite import CHUNK, FpSubspace, rref_mod_p
from .linalg import Subspace
from .unitgroup import enumerate_units, is_bounded_engel_group, is_nilpotent_group, is_solvable
from .verdicts import NOT_WITHIN_CAP, SKIPPED, UNEVALUATED, TheoremVerdict, Verdict


@dataclass
class SeriesReport:
    kind: str
    terms: list
    stabilized: bool
    length_or_class: int | None

    @property
    def reaches_zero(self) -> bool:
        return self.length_or_class is not None

    def dims(self) -> list[int]:
        return [t.dim if isinstance(t, Subspace) else int(t) for t in self.terms]

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "dims": self.dims(),
            "stabilized": self.stabilized,
            "length_or_class": self.length_or_class,
        }


def bracket_span(A: Algebra, U: Subspace, V: Subspace) -> Subspace:
    return span(A, [A.bracket(u, v) for u in U.basis for v in V.basis])


def _run_series(kind: str, first: Subspace, step) -> SeriesReport:
    terms = [first]
    while not terms[-1].is_zero():
        nxt = step(terms[-1])
        terms.append(nxt)
        if nxt == terms[-2]:
            return SeriesReport(kind, terms, True, None)
    return SeriesReport(kind, terms, False, len(terms) - 1)


def lie_derived_series(A: Algebra, L: Subspace | None = None) -> SeriesReport:
    """``L, [L,L], [[L,L],[L,L]], ...``; length = number of steps down to 0."""
    L = Subspace.full(A.field, A.dim) if L is None else L
    return _run_series("lie_derived", L, lambda D: bracket_span(A, D, D))


def lie_lower_central_series(A: Algebra, L: Subspace | None = None) -> SeriesReport:
    """``L_1 = L``, ``L_{k+1} = [L_k, L]``; class c means ``L_{c+1} = 0``."""
    L = Subspace.full(A.field, A.dim) if L is None else L
    return _run_series("lie_lower_central", L, lambda D: bracket_span(A, D, L))


def is_lie_solvable(A: Algebra, L: Subspace | None = None) -> tuple[bool, int | None]:
    r = lie_derived_series(A, L)
    return r.reaches_zero, r.length_or_class


def is_lie_nilpotent(A: Algebra, L: Subspace | None = None) -> tuple[bool, int | None]:
    r = lie_lower_central_series(A, L)
    return r.reaches_zero, r.length_or_class


# ---------------------------------------------------------------------------
# identity checkers


def _scan_set(A: Algebra, over: Subspace | None, limit: int) -> tuple[np.ndarray, np.ndarray]:
    """(codes, digits) of the elements of ``over`` (or A) in scan order."""
    if not A.field.is_finite:
        raise UnsupportedField("exhaustive identity checks need a finite field")
    fp = A.fp
    if over is None:
        fp.check_card(limit)
        codes = np.arange(fp.card, dtype=np.int64)
        return codes, fp.decode(codes)
    size = A.field.order**over.dim
    if size > limit:
        raise TooLarge(f"|S| = {size} exceeds the enumeration bound {limit}")
    codes = np.sort(fp.encode(fp.subspace_to_fp(over).elements()))
    return codes, fp.decode(codes)


def _engel_mats(fp, Y: np.ndarray, n: int) -> np.ndarray:
    """Matrices of ``x -> [x, y, ..., y]`` (n copies of y)."""
    ad = (fp.right_mats(Y) - fp.left_mats(Y)) % fp.p
    M = ad
    for _ in range(n - 1):
        M = np.matmul(ad, M) % fp.p
    return M


def _iterated_bracket(A: Algebra, x, y, n: int):
    v = x
    for _ in range(n):
        v = A.bracket(v, y)
    return v


def check_engel_identity(
    A: Algebra,
    n: int,
    mode: str = "exhaustive",
    over: Subspace | None = None,
    witnesses: Sequence[tuple] | None = None,
    seed: int = 0,
    count: int = 1000,
    limit: int | None = None,
) -> Verdict:
    """Check ``[x, y, ..., y] = 0`` (n copies of y) on A, or on a subspace ``over``.

    Exhaustive mode uses linearity in ``x``: the failing ``x`` are those
    outside the joint kernel of the maps ``(ad y)^n``, so the first
    counterexample in scan order is found without scanning all pairs.
    """
    if n < 1:
        raise ValueError("Engel length must be >= 1")
    if mode == "witness":
        pairs = list(witnesses or [])
        for i, (x, y) in enumerate(pairs):
            if not A.is_zero(_iterated_bracket(A, x, y, n)):
                return Verdict(False, (tuple(x), tuple(y)), i + 1, mode)
        return Verdict(True, None, len(pairs), mode)
    codes, D = _scan_set(A, over, limits.max_card(limit))
    fp = A.fp
    m = len(codes)
    if mode == "sample":
        rng = np.random.default_rng(seed)
        idx = rng.integers(m, size=(count, 2))
        for t, (i, j) in enumerate(idx):
            x, y = fp.from_digits(D[i]), fp.from_digits(D[j])
            if not A.is_zero(_iterated_bracket(A, x, y, n)):
                return Verdict(False, (x, y), t + 1, mode)
        return Verdict(True, None, count, mode)
    if mode != "exhaustive":
        raise ValueError(f"unknown mode {mode!r}")
    if m * m > limits.MAX_TUPLES:
        raise TooLarge(f"{m}^2 pairs exceed the bound {limits.MAX_TUPLES}")
    R = np.zeros((0, fp.N), dtype=np.int64)
    for s in range(0, m, CHUNK):
        M = _engel_mats(fp, D[s : s + CHUNK], n).reshape(-1, fp.N)
        R = rref_mod_p(np.vstack([R, M]), fp.p)[0]
        if len(R) == fp.N:
            break
    if len(R) == 0:
        return Verdict(True, None, m * m, mode)
    bad = ((D @ R.T) % fp.p).any(axis=1)
    if not bad.any():
        return Verdict(True, None, m * m, mode)
    ix = int(np.argmax(bad))
    x = D[ix]
    for s in range(0, m, CHUNK):
        Y = D[s : s + CHUNK]
        v = np.broadcast_to(x, Y.shape).copy()
        for _ in range(n):
            v = fp.bracket(v, Y)
        nz = v.any(axis=1)
        if nz.any():
            iy = s + int(np.argmax(nz))
            return Verdict(False, (fp.from_digits(x), fp.from_digits(D[iy])), ix * m + iy + 1, mode)
    raise AssertionError("kernel test and direct evaluation disagree")  # pragma: no cover


def engel_degree(A: Algebra, cap: int = limits.DEFAULT_ENGEL_CAP, over: Subspace | None = None, limit: int | None = None):
    """Least n <= cap for which the n-Engel identity holds, else NOT_WITHIN_CAP."""
    for n in range(1, cap + 1):
        if check_engel_identity(A, n, over=over, limit=limit).holds:
            return n
    return NOT_WITHIN_CAP


def check_nonmatrix_pi(
    A: Algebra,
    t: int,
    mode: str = "exhaustive",
    seed: int = 0,
    count: int = 1000,
    limit: int | None = None,
) -> Verdict:
    """Check ``([x,y] z)^(p^t) = 0`` on all (or sampled) triples."""
    codes, D = _scan_set(A, None, limits.max_card(limit))
    fp = A.fp
    e = fp.p**t
    m = len(codes)

    def bad_values(C: np.ndarray, Z: np.ndarray) -> np.ndarray:
        return fp.power(fp.mul(C, Z), e).any(axis=-1)

    if mode == "sample":
        rng = np.random.default_rng(seed)
        idx = rng.integers(m, size=(count, 3))
        c = fp.bracket(D[idx[:, 0]], D[idx[:, 1]])
        bad = bad_values(c, D[idx[:, 2]])
        if bad.any():
            i = int(np.argmax(bad))
            return Verdict(False, tuple(fp.from_digits(D[j]) for j in idx[i]), i + 1, mode)
        return Verdict(True, None, count, mode)
    if mode != "exhaustive":
        raise ValueError(f"unknown mode {mode!r}")
    if m**3 > limits.MAX_TUPLES:
        raise TooLarge(f"{m}^3 triples exceed the bound {limits.MAX_TUPLES}")
    # only the distinct commutator values matter
    comm_codes = np.empty(m * m, dtype=np.int64)
    for s in range(0, m * m, CHUNK):
        flat = np.arange(s, min(s + CHUNK, m * m))
        comm_codes[s : s + len(flat)] = fp.encode(fp.bracket(D[flat // m], D[flat % m]))
    uniq = np.unique(comm_codes)
    bad_code = np.zeros(len(uniq), dtype=bool)
    C = fp.decode(uniq)
    for i in range(len(uniq)):
        bad_code[i] = bad_values(np.broadcast_to(C[i], D.shape), D).any()
    bad_pair = bad_code[np.searchsorted(uniq, comm_codes)]
    if not bad_pair.any():
        return Verdict(True, None, m**3, mode)
    first = int(np.argmax(bad_pair))
    ix, iy = divmod(first, m)
    c = fp.bracket(D[ix], D[iy])
    iz = int(np.argmax(bad_values(np.broadcast_to(c, D.shape), D)))
    witness = tuple(fp.from_digits(D[j]) for j in (ix, iy, iz))
    return Verdict(False, witness, first * m + iz + 1, mode)


def zn_decomposition_check(A: Algebra, limit: int = limits.ORACLE_MAX_CARD) -> Verdict:
    """Is ``N(A)`` an ideal with ``A = Z(A) + N(A)``?"""
    if not A.field.is_finite or A.cardinality > limit:
        raise TooLarge("the Z+N check needs an exhaustively enumerable algebra")
    ns = nilpotent_set_span(A, limit)
    N = ns.subspace
    failures = []
    if not ns.is_subspace:
        failures.append("N(A) not closed under addition")
    else:
        for v in N.basis:
            for k in range(A.dim):
                e = A.basis(k)
                if not (N.contains(A.multiply(e, v)) and N.contains(A.multiply(v, e))):
                    failures.append("N(A) does not absorb multiplication")
                    break
            if failures and failures[-1].startswith("N(A) does not"):
                break
    ZN = center(A) + N
    missing = next((k for k in range(A.dim) if not ZN.contains(A.basis(k))), None)
    counter = None
    if missing is not None:
        failures.append(f"basis element {A.labels[missing]} not in Z(A) + N(A)")
        counter = (A.basis(missing),)
    return Verdict(not failures, counter, A.cardinality, "exhaustive", "; ".join(failures) or None)


# ---------------------------------------------------------------------------
# theorem evaluators


def _unit_group_or_none(A: Algebra, limit: int | None):
    try:
        return enumerate_units(A, limit)
    except (TooLarge, FinalgError):
        return None


def _quotient_commutative(A: Algebra, J: Subspace) -> bool:
    n = A.dim
    return all(J.contains(A.bracket(A.basis(i), A.basis(j))) for i in range(n) for j in range(i + 1, n))


def _ideal_of(A: Algebra, I: Subspace, R: Subspace) -> bool:
    """``I`` is a two-sided ideal of the (non-unital) algebra ``R``."""
    return all(I.contains(A.multiply(r, v)) and I.contains(A.multiply(v, r)) for v in I.basis for r in R.basis)


def check_chain_witness(A: Algebra, J: Subspace, chain: Sequence[tuple[Subspace, Sequence[Subspace]]]) -> tuple[bool, str | None]:
    """Verify ``0 = J_0 <= ... <= J_m = J`` with each ``J_i/J_{i-1}`` a sum of
    commutative ideals of ``J/J_{i-1}``; witnesses are given as subspaces of A."""
    prev = Subspace.zero(A.field, A.dim)
    for i, (Ji, parts) in enumerate(chain, start=1):
        if not prev.is_subspace_of(Ji) or not Ji.is_subspace_of(J):
            return False, f"J_{i} does not extend J_{i - 1} inside J"
        if not _ideal_of(A, Ji, J):
            return False, f"J_{i} is not an ideal of J"
        total = prev
        for w, W in enumerate(parts):
            W = W + prev
            if not W.is_subspace_of(J):
                return False, f"witness {w} of J_{i} leaves J"
            if not _ideal_of(A, W, J):
                return False, f"witness {w} of J_{i} is not an ideal of J/J_{i - 1}"
            if not bracket_span(A, W, W).is_subspace_of(prev):
                return False, f"witness {w} of J_{i} is not commutative modulo J_{i - 1}"
            total = total + W
        if total != Ji:
            return False, f"witnesses of J_{i} do not sum to J_{i}"
        prev = Ji
    if prev != J:
        return False, "chain does not end at J(A)"
    return True, None


def theorem_2_1_evaluate(
    A: Algebra,
    chain_witness: Sequence[tuple[Subspace, Sequence[Subspace]]] | None = None,
    group_limit: int | None = None,
) -> TheoremVerdict:
    from .radical import radical

    v = TheoremVerdict("thm2.1")
    F = A.field
    v.in_hypothesis = (not F.is_finite) or F.order >= 4
    if not v.in_hypothesis:
        v.notes.append(f"|F| = {F.order} < 4")
    G = _unit_group_or_none(A, group_limit) if F.is_finite else None
    if G is None:
        v.set("thm2.1.cond1", SKIPPED if F.is_finite else UNEVALUATED)
        c1 = None
    else:
        c1, length = is_solvable(G)
        v.set("thm2.1.cond1", c1, group_order=G.order, derived_length=length)
    c2, length = is_lie_solvable(A)
    v.set("thm2.1.cond2", c2, lie_derived_length=length)
    try:
        J = radical(A).radical
        c3 = _quotient_commutative(A, J)
        v.set("thm2.1.cond3", c3, radical_dim=J.dim)
    except UnsupportedField:
        J, c3 = None, None
        v.set("thm2.1.cond3", UNEVALUATED)
    c4 = None
    if chain_witness is None or J is None:
        v.set("thm2.1.cond4", UNEVALUATED)
    else:
        c4, why = check_chain_witness(A, J, chain_witness)
        v.set("thm2.1.cond4", c4, **({"reason": why} if why else {}))
    if c2 is False or c3 is False:
        rhs = False
    elif c3 is None or c4 is None:
        rhs = None
    else:
        rhs = c4
    if v.in_hypothesis and c1 is not None and rhs is not None:
        v.consistent = c1 == rhs
    return v


def theorem_2_2_evaluate(
    A: Algebra,
    cap: int = limits.DEFAULT_ENGEL_CAP,
    group_limit: int | None = None,
) -> TheoremVerdict:
    v = TheoremVerdict("thm2.2")
    F = A.field
    v.in_hypothesis = F.is_perfect and F.order != 2
    if not v.in_hypothesis:
        v.notes.append(f"field {F.name} is excluded (needs perfect and not F2)")
    G = _unit_group_or_none(A, group_limit)
    if G is None:
        v.set("thm2.2.cond1.units_engel", SKIPPED)
        v.set("thm2.2.cond2.units_nilpotent", SKIPPED)
        units_nil, units_class = None, None
    else:
        units_nil, n = is_bounded_engel_group(G, cap)
        units_class = is_nilpotent_group(G)[1]
        v.set("thm2.2.cond1.units_engel", units_nil, engel_length=n, group_order=G.order)
        v.set("thm2.2.cond2.units_nilpotent", units_nil, nilpotency_class=units_class)
    lie_nil, lie_class = is_lie_nilpotent(A)
    try:
        deg = engel_degree(A, cap)
        v.set("thm2.2.cond1.algebra_engel", True if deg != NOT_WITHIN_CAP else NOT_WITHIN_CAP, engel_length=deg)
    except TooLarge:
        deg = None
        v.set("thm2.2.cond1.algebra_engel", SKIPPED)
    v.set("thm2.2.cond2.lie_nilpotent", lie_nil, nilpotency_class=lie_class)
    # a Lie nilpotent algebra of class c is c-Engel
    alg_engel = True if (lie_nil or isinstance(deg, int)) else None
    if deg == NOT_WITHIN_CAP:
        v.notes.append(f"no Engel length <= {cap} for the algebra")
    if units_nil and lie_nil:
        v.set("thm2.2.classes_equal", units_class == lie_class)
    if units_nil:
        try:
            zn = zn_decomposition_check(A)
            v.set("thm2.2.cond1.z_plus_n", zn.holds, **({"note": zn.note} if zn.note else {}))
        except TooLarge:
            v.set("thm2.2.cond1.z_plus_n", SKIPPED)
    if not v.in_hypothesis or units_nil is None:
        return v
    checks = [units_nil == lie_nil]
    if alg_engel is not None:
        checks.append(units_nil == alg_engel)
    elif units_nil:
        return v
    if units_nil and lie_nil:
        checks.append(units_class == lie_class)
    zn_val = v.conditions.get("thm2.2.cond1.z_plus_n", {}).get("value")
    if units_nil and isinstance(zn_val, bool):
        checks.append(zn_val)
    v.consistent = all(checks)
    return v


def lie_closure(A: Algebra, gens: Sequence) -> Subspace:
    L = span(A, gens)
    while True:
        new = L + bracket_span(A, L, L)
        if new == L:
            return L
        L = new


def theorem_2_4_evaluate(
    A: Algebra,
    lie_gens: Sequence,
    strict: bool = False,
    group_limit: int | None = None,
    cap: int = limits.DEFAULT_ENGEL_CAP,
) -> TheoremVerdict:
    """Is the associative subalgebra generated by a nil Lie set nilpotent?

    Hypothesis violations are recorded as ``in_hypothesis = False``; with
    ``strict=True`` they raise :class:`HypothesisFailed` instead.
    """
    v = TheoremVerdict("thm2.4")
    L = lie_closure(A, lie_gens)
    nil = all(A.is_nilpotent_elem(b) for b in L.basis)
    if nil and A.field.is_finite and A.field.order**L.dim <= 1 << 16:
        fp = A.fp
        nil = bool(fp.is_nilpotent(fp.subspace_to_fp(L).elements()).all())
    v.set("thm2.4.hyp.nil_lie_set", nil, lie_dim=L.dim)
    G = _unit_group_or_none(A, group_limit) if A.field.is_finite else None
    if G is None:
        v.set("thm2.4.hyp.units", SKIPPED)
        units_ok = None
    else:
        solv = is_solvable(G)[0]
        engel = is_bounded_engel_group(G, cap)[0]
        units_ok = solv or engel
        v.set("thm2.4.hyp.units", units_ok, solvable=solv, bounded_engel=engel)
    S = subalgebra_generated(A, L.basis, unital=False)
    index = nilpotency_index(A, S)
    v.set("thm2.4.conclusion", index is not None, subalgebra_dim=S.dim, nilpotency_index=index)
    failed = [name for name, ok in (("nil_lie_set", nil), ("units", units_ok)) if ok is False]
    if failed:
        if strict:
            raise HypothesisFailed(failed[0], f"hypothesis {failed[0]} does not hold")
        v.in_hypothesis = False
        v.notes.append("hypothesis fails: " + ", ".join(failed))
        return v
    if units_ok is not None:
        v.consistent = index is not None
    return v
