"""Jacobson radical of a finite-dimensional algebra over a finite field.

The main route works in the left regular representation over the prime
field.  With ``X^`` the integer lift of a matrix ``X`` and
``g_l(X) = Tr(X^ ** p**l) / p**l  (mod p)``, the chain

    I_{-1} = A,   I_l = {a in I_{l-1} : g_l(a b) = 0 for all b in A}

consists of ideals, each ``g_l`` is linear on ``I_{l-1}``, and the chain
reaches the radical at ``l = floor(log_p N)`` where ``N`` is the size of the
representation.  The independent oracle enumerates the algebra and keeps
the elements ``x`` for which every ``1 - a x`` is a unit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import limits
from .algebra import Algebra, nilpotency_index
from .errors import TooLarge, UnsupportedField
from .finite import CHUNK, FpSubspace, kernel_mod_p, rref_mod_p
from .linalg import Subspace


@dataclass(frozen=True)
class RadicalReport:
    radical: Subspace
    method: str
    nilpotency_index: int

    @property
    def dim(self) -> int:
        return self.radical.dim


def _matpow_mod(M: np.ndarray, e: int, mod: int) -> np.ndarray:
    n = M.shape[-1]
    result = np.broadcast_to(np.eye(n, dtype=np.int64), M.shape).copy()
    base = M % mod
    while e:
        if e & 1:
            result = np.matmul(result, base) % mod
        e >>= 1
        if e:
            base = np.matmul(base, base) % mod
    return result


def _trace_functional(mats: np.ndarray, p: int, l: int) -> np.ndarray:
    """``Tr(X**(p**l)) / p**l mod p`` for a stack of integer-lifted matrices."""
    mod = p ** (l + 1)
    tr = np.trace(_matpow_mod(mats, p**l, mod), axis1=1, axis2=2) % mod
    if (tr % p**l).any():
        raise ArithmeticError("trace not divisible by p^l; the chain invariant is broken")
    return tr // p**l


def trace_chain(A: Algebra) -> np.ndarray:
    """RREF F_p-basis (digit rows) of J(A) via the trace chain."""
    if not A.field.is_finite:
        raise UnsupportedField(f"trace-chain radical needs a finite field, got {A.field.name}")
    fp = A.fp
    p, N = fp.p, fp.N
    basis = np.eye(N, dtype=np.int64)
    top = 0
    while p ** (top + 1) <= N:
        top += 1
    eye = np.eye(N, dtype=np.int64)
    for l in range(top + 1):
        r = len(basis)
        if r == 0:
            break
        # G[t, s] = g_l(b_s * f_t)
        prods = fp.mul(np.repeat(basis, N, axis=0), np.tile(eye, (r, 1)))
        vals = np.concatenate(
            [_trace_functional(fp.left_mats(prods[s : s + CHUNK]), p, l) for s in range(0, len(prods), CHUNK)]
        )
        G = vals.reshape(r, N).T
        coeffs = kernel_mod_p(G, p, r)
        basis = rref_mod_p(coeffs @ basis % p, p)[0] if len(coeffs) else np.zeros((0, N), np.int64)
    return basis


def radical(A: Algebra) -> RadicalReport:
    """Largest nilpotent ideal (= Jacobson = prime radical in finite dimension)."""
    if not A.field.is_finite:
        raise UnsupportedField(f"trace-chain radical needs a finite field, got {A.field.name}")
    J = A.fp.subspace_from_fp(trace_chain(A))
    index = nilpotency_index(A, J)
    return RadicalReport(J, "trace_chain", index if index is not None else -1)


def radical_brute_oracle(A: Algebra, limit: int = limits.ORACLE_MAX_CARD) -> Subspace:
    """J(A) = {x : 1 - a x is a unit for every a in A}, by enumeration.

    Uses that J(A) is a subspace: elements of a known part ``S`` of J are
    skipped, and once ``x`` fails so does every ``c (x + s)``.
    """
    if not A.field.is_finite:
        raise UnsupportedField("the brute-force radical needs a finite field")
    fp = A.fp
    if fp.card > limit:
        raise TooLarge(f"|A| = {fp.card} exceeds the oracle bound {limit}")
    p, N = fp.p, fp.N
    all_codes = np.arange(fp.card, dtype=np.int64)
    everything = fp.decode(all_codes)
    unit = np.zeros(fp.card, dtype=bool)
    unit[fp.unit_codes(limit)] = True

    known = FpSubspace(np.zeros((0, N), np.int64), p, N)
    known_codes = np.array([0], dtype=np.int64)
    settled = np.zeros(fp.card, dtype=bool)
    settled[0] = True
    scalars = fp.scalar_mats()
    probe = min(256, fp.card)

    def quasi_regular(x):
        head = (fp.one - fp.mul(everything[:probe], x)) % p
        if not unit[fp.encode(head)].all():
            return False
        rest = (fp.one - fp.mul(everything[probe:], x)) % p
        return bool(unit[fp.encode(rest)].all())

    for code in range(fp.card):
        if settled[code]:
            continue
        x = everything[code]
        if quasi_regular(x):
            known = FpSubspace(np.vstack([known.basis, x[None]]), p, N)
            known_codes = fp.encode(known.elements())
            settled[known_codes] = True
        else:
            coset = (x[None, :] + known.elements()) % p
            multiples = np.einsum("cij,sj->csi", scalars, coset) % p
            settled[fp.encode(multiples.reshape(-1, N))] = True
    return fp.subspace_from_fp(known.basis)
