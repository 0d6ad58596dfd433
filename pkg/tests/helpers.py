"""Shared oracles for the test suite."""

import numpy as np

from finalg.algebra import Algebra
from finalg.linalg import rank, solve, transpose


def random_invertible(F, n, rng):
    while True:
        P = [[F.random(rng) for _ in range(n)] for _ in range(n)]
        if rank(F, P) == n:
            return P


def rebase(A: Algebra, P) -> Algebra:
    """The same algebra written in the basis f_i = sum_k P[i][k] e_k."""
    F, n = A.field, A.dim
    Pt = transpose(P)
    f = [tuple(P[i]) for i in range(n)]
    table = [[solve(F, Pt, A.multiply(f[i], f[j])) for j in range(n)] for i in range(n)]
    return Algebra(F, table, solve(F, Pt, A.one))


def numpy_matmul(X, Y, p):
    return ((np.array(X, dtype=np.int64) @ np.array(Y, dtype=np.int64)) % p).tolist()
