"""Vectorised view of an algebra over a finite field as an algebra over F_p.

An algebra of dimension ``n`` over ``F_q`` (``q = p**k``) is an algebra of
dimension ``N = n*k`` over ``F_p`` with basis ``u**a * e_i`` (index
``i*k + a``).  Elements become digit vectors in ``[0, p)**N`` and every
product, inverse or power can be evaluated for a whole batch at once with
integer numpy arithmetic.

Every element also has an integer *code*: ``sum(c_i * q**(n-1-i))`` over
its ``F_q`` coordinates ``c_i``, so ascending codes enumerate elements in
lexicographic coordinate order.  This is the deterministic scan order used
by all exhaustive searches.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Iterator, Sequence

import numpy as np

from .errors import TooLarge
from .linalg import Subspace

if TYPE_CHECKING:  # pragma: no cover
    from .algebra import Algebra

CHUNK = 1 << 14
_CODE_LIMIT = 1 << 62


def inverse_table(p: int) -> np.ndarray:
    inv = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        inv[a] = pow(a, p - 2, p)
    return inv


def batch_solve(M: np.ndarray, b: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Solve ``M[i] x = b[i]`` mod p for a stack of square matrices.

    Returns ``(invertible, x)``; rows of ``x`` for singular matrices are junk.
    """
    B, N, _ = M.shape
    inv = inverse_table(p)
    A = np.concatenate([M % p, np.broadcast_to(b % p, (B, N))[:, :, None]], axis=2).astype(np.int64)
    ok = np.ones(B, dtype=bool)
    idx = np.arange(B)
    for c in range(N):
        nz = A[:, c:, c] != 0
        has = nz.any(axis=1)
        ok &= has
        piv = np.argmax(nz, axis=1) + c
        swap = piv != c
        if swap.any():
            rows_c = A[idx, c].copy()
            A[idx, c] = A[idx, piv]
            A[idx[swap], piv[swap]] = rows_c[swap]
        scale = inv[A[:, c, c]]
        A[:, c] = A[:, c] * scale[:, None] % p
        f = A[:, :, c].copy()
        f[:, c] = 0
        A = (A - f[:, :, None] * A[:, c][:, None, :]) % p
    return ok, A[:, :, N]


def rref_mod_p(M: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form over F_p; returns (nonzero rows, pivot columns)."""
    A = np.array(M, dtype=np.int64) % p
    if A.size == 0:
        return A.reshape(0, A.shape[1] if A.ndim == 2 else 0), []
    inv = inverse_table(p)
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = A[r] * inv[A[r, c]] % p
        f = A[:, c].copy()
        f[r] = 0
        A = (A - f[:, None] * A[r][None, :]) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def kernel_mod_p(M: np.ndarray, p: int, ncols: int) -> np.ndarray:
    """Basis (rows) of the right null space of ``M`` over F_p."""
    R, pivots = rref_mod_p(M.reshape(-1, ncols), p)
    free = [c for c in range(ncols) if c not in set(pivots)]
    out = np.zeros((len(free), ncols), dtype=np.int64)
    for t, f in enumerate(free):
        out[t, f] = 1
        for row, c in zip(R, pivots):
            out[t, c] = -row[f] % p
    return out


class FpSubspace:
    """An F_p-subspace of F_p^N kept in RREF, with batched membership tests."""

    def __init__(self, vectors: np.ndarray, p: int, N: int):
        self.p, self.N = p, N
        vectors = np.asarray(vectors, dtype=np.int64).reshape(-1, N)
        self.basis, self.pivots = rref_mod_p(vectors, p) if len(vectors) else (np.zeros((0, N), np.int64), [])

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def reduce(self, X: np.ndarray) -> np.ndarray:
        X = np.array(X, dtype=np.int64) % self.p
        for row, c in zip(self.basis, self.pivots):
            X = (X - X[..., c : c + 1] * row) % self.p
        return X

    def contains(self, X: np.ndarray) -> np.ndarray:
        return ~self.reduce(X).any(axis=-1)

    def elements(self) -> np.ndarray:
        """All p**dim elements as digit rows."""
        d = self.dim
        if d == 0:
            return np.zeros((1, self.N), dtype=np.int64)
        coeffs = np.indices((self.p,) * d).reshape(d, -1).T
        return coeffs @ self.basis % self.p


class FpView:
    def __init__(self, A: "Algebra"):
        F = A.field
        if not F.is_finite:
            raise TypeError("FpView requires a finite base field")
        self.algebra = A
        self.field = F
        self.p, self.k, self.n = F.p, F.k, A.dim
        self.q = F.order
        self.N = N = self.n * self.k
        self.card = self.q ** self.n
        p, k = self.p, self.k
        upow = [F.from_digits([1 if b == a else 0 for b in range(k)]) for a in range(k)]
        C = np.zeros((N, N, N), dtype=np.int64)
        for i in range(self.n):
            for j in range(self.n):
                for l, c in A.terms[i][j]:
                    for a in range(k):
                        for b in range(k):
                            ds = F.digits(F.mul(F.mul(upow[a], upow[b]), c))
                            for m, d in enumerate(ds):
                                if d:
                                    C[i * k + a, j * k + b, l * k + m] += d
        self.C = C % p
        self._C2 = self.C.reshape(N * N, N)
        self.one = self.to_digits(A.one)
        if self.card < _CODE_LIMIT:
            w = [0] * N
            for i in range(self.n):
                for a in range(k):
                    w[i * k + a] = p**a * self.q ** (self.n - 1 - i)
            self.weights = np.array(w, dtype=np.int64)
        else:
            self.weights = None

    # -- conversions ---------------------------------------------------------

    def to_digits(self, v: Sequence) -> np.ndarray:
        F = self.field
        out = np.zeros(self.N, dtype=np.int64)
        for i, c in enumerate(v):
            out[i * self.k : (i + 1) * self.k] = F.digits(c)
        return out

    def from_digits(self, d: np.ndarray) -> tuple:
        F, k = self.field, self.k
        return tuple(F.from_digits([int(x) for x in d[i * k : (i + 1) * k]]) for i in range(self.n))

    def _need_codes(self) -> None:
        if self.weights is None:
            raise TooLarge(f"algebra of cardinality {self.card} is too large to index")

    def encode(self, D: np.ndarray) -> np.ndarray:
        self._need_codes()
        return np.asarray(D, dtype=np.int64) @ self.weights

    def decode(self, codes: np.ndarray) -> np.ndarray:
        self._need_codes()
        codes = np.asarray(codes, dtype=np.int64)
        return (codes[..., None] // self.weights) % self.p

    def code_of(self, v: Sequence) -> int:
        return int(self.encode(self.to_digits(v)))

    def element_of(self, code: int) -> tuple:
        return self.from_digits(self.decode(np.array([code]))[0])

    def subspace_to_fp(self, S: Subspace) -> FpSubspace:
        F, k = self.field, self.k
        rows = []
        for v in S.basis:
            for a in range(k):
                ua = F.from_digits([1 if b == a else 0 for b in range(k)])
                rows.append(self.to_digits([F.mul(ua, c) for c in v]))
        return FpSubspace(np.array(rows, dtype=np.int64).reshape(-1, self.N), self.p, self.N)

    def subspace_from_fp(self, rows: np.ndarray) -> Subspace:
        return Subspace(self.field, self.n, [self.from_digits(r) for r in np.asarray(rows).reshape(-1, self.N)])

    # -- arithmetic ---------------------------------------------------------------

    def mul(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        X, Y = np.broadcast_arrays(np.asarray(X, dtype=np.int64), np.asarray(Y, dtype=np.int64))
        shape = X.shape
        X = X.reshape(-1, self.N)
        Y = Y.reshape(-1, self.N)
        outer = (X[:, :, None] * Y[:, None, :]).reshape(len(X), self.N * self.N)
        return (outer @ self._C2 % self.p).reshape(shape)

    def scalar_mats(self) -> np.ndarray:
        """F_p matrices (q-1, N, N) of multiplication by each nonzero scalar of F_q."""
        F, k = self.field, self.k
        out = np.zeros((self.q - 1, self.N, self.N), dtype=np.int64)
        for idx, c in enumerate(range(1, self.q)):
            block = np.zeros((k, k), dtype=np.int64)
            for a in range(k):
                ua = F.from_digits([1 if b == a else 0 for b in range(k)])
                block[:, a] = F.digits(F.mul(c, ua))
            for i in range(self.n):
                out[idx, i * k : (i + 1) * k, i * k : (i + 1) * k] = block
        return out

    def bracket(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        return (self.mul(X, Y) - self.mul(Y, X)) % self.p

    def left_mats(self, X: np.ndarray) -> np.ndarray:
        """Matrices of y -> x*y (acting on column digit vectors)."""
        return np.einsum("bi,ijk->bkj", np.asarray(X, dtype=np.int64).reshape(-1, self.N), self.C) % self.p

    def right_mats(self, Y: np.ndarray) -> np.ndarray:
        """Matrices of x -> x*y."""
        return np.einsum("bj,ijk->bki", np.asarray(Y, dtype=np.int64).reshape(-1, self.N), self.C) % self.p

    def power(self, X: np.ndarray, e: int) -> np.ndarray:
        X = np.asarray(X, dtype=np.int64)
        result = np.broadcast_to(self.one, X.shape).copy()
        base = X
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def is_nilpotent(self, X: np.ndarray) -> np.ndarray:
        e = 1
        while e < self.n:
            e *= 2
        return ~self.power(X, e).reshape(-1, self.N).any(axis=1)

    def invert(self, X: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """(is_unit mask, inverses) for a batch; x*y = 1 forces y*x = 1 here."""
        X = np.asarray(X, dtype=np.int64).reshape(-1, self.N)
        if len(X) == 0:
            return np.zeros(0, dtype=bool), X.copy()
        oks, invs = [], []
        for s in range(0, len(X), CHUNK):
            ok, y = batch_solve(self.left_mats(X[s : s + CHUNK]), self.one, self.p)
            oks.append(ok)
            invs.append(y)
        return np.concatenate(oks), np.concatenate(invs)

    def is_one(self, X: np.ndarray) -> np.ndarray:
        return (np.asarray(X).reshape(-1, self.N) == self.one).all(axis=1)

    # -- exhaustive enumeration ---------------------------------------------------

    def check_card(self, limit: int) -> None:
        if self.card > limit:
            raise TooLarge(f"|A| = {self.card} exceeds the enumeration bound {limit}")

    def chunks(self, limit: int) -> Iterator[tuple[np.ndarray, np.ndarray]]:
        """Yield (codes, digits) blocks over the whole algebra in scan order."""
        self.check_card(limit)
        for s in range(0, self.card, CHUNK):
            codes = np.arange(s, min(s + CHUNK, self.card), dtype=np.int64)
            yield codes, self.decode(codes)

    def nilpotent_codes(self, limit: int) -> np.ndarray:
        out = [codes[self.is_nilpotent(D)] for codes, D in self.chunks(limit)]
        return np.concatenate(out)

    def unit_codes(self, limit: int) -> np.ndarray:
        out = [codes[self.invert(D)[0]] for codes, D in self.chunks(limit)]
        return np.concatenate(out)
