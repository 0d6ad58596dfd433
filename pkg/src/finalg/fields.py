"""Exact arithmetic for F_p, F_{p^k} and the rational function field F_p(t).

Field elements are plain hashable Python values and all arithmetic goes
through the field handle:

* prime field: an ``int`` residue in ``[0, p)``;
* extension field ``F_p[u]/(m)``: an ``int`` code ``sum(c_i * p**i)`` where
  ``c_i`` is the coefficient of ``u**i``;
* ``F_p(t)``: a pair ``(num, den)`` of ascending coefficient tuples over
  F_p, kept reduced with a monic denominator (zero is ``((), (1,))``).

Polynomials over a field (used for minimal polynomials and gcds) are
ascending lists of field elements with no trailing zeros; ``[]`` is the
zero polynomial.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Any, Iterator, Sequence

from .errors import CompositeP, NoPthRoot, ReducibleModulus

PRIME = "prime"
EXTENSION = "extension"
RATIONAL_FUNCTION = "rational_function"

MAX_EXTENSION_DEGREE = 8


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    kind: str
    p: int
    k: int = 1
    modulus: tuple[int, ...] | None = None

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "p": self.p,
            "k": self.k,
            "modulus": list(self.modulus) if self.modulus is not None else None,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "FieldSpec":
        kind = obj["kind"]
        if kind not in (PRIME, EXTENSION, RATIONAL_FUNCTION):
            raise ValueError(f"unknown field kind {kind!r}")
        modulus = obj.get("modulus")
        return cls(
            kind=kind,
            p=int(obj["p"]),
            k=int(obj.get("k") or 1),
            modulus=tuple(int(c) for c in modulus) if modulus is not None else None,
        )


# ---------------------------------------------------------------------------
# polynomials over F_p with int coefficients (tuples, ascending)


def _fp_trim(f: Sequence[int]) -> tuple[int, ...]:
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return tuple(f)


def _fp_add(f, g, p):
    n = max(len(f), len(g))
    return _fp_trim(
        ((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)) % p for i in range(n)
    )


def _fp_scale(f, c, p):
    return _fp_trim(x * c % p for x in f)


def _fp_mul(f, g, p):
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _fp_trim(out)


def _fp_divmod(f, g, p):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(f)
    inv_lead = pow(g[-1], p - 2, p)
    dg = len(g) - 1
    q = [0] * max(len(f) - dg, 0)
    for i in range(len(f) - 1, dg - 1, -1):
        c = f[i] * inv_lead % p
        if c:
            q[i - dg] = c
            for j, b in enumerate(g):
                f[i - dg + j] = (f[i - dg + j] - c * b) % p
    return _fp_trim(q), _fp_trim(f[:dg])


def _fp_monic(f, p):
    if not f:
        return ()
    return _fp_scale(f, pow(f[-1], p - 2, p), p)


def _fp_gcd(f, g, p):
    f, g = _fp_trim(f), _fp_trim(g)
    while g:
        f, g = g, _fp_divmod(f, g, p)[1]
    return _fp_monic(f, p)


def _fp_is_irreducible(m: tuple[int, ...], p: int) -> bool:
    k = len(m) - 1
    for d in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _fp_divmod(m, tuple(low) + (1,), p)[1]:
                return False
    return True


# ---------------------------------------------------------------------------
# field handles


class Field:
    """Common interface; concrete subclasses below."""

    spec: FieldSpec
    p: int
    is_finite: bool
    is_perfect: bool
    order: int | None

    zero: Any
    one: Any

    def __repr__(self) -> str:
        return f"<{self.name}>"

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and other.spec == self.spec

    def __hash__(self) -> int:
        return hash(self.spec)

    @property
    def name(self) -> str:
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == self.zero

    def power(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def frobenius(self, a):
        """Return ``a**p``."""
        return self.power(a, self.p)

    def elements(self) -> Iterator:
        raise TypeError(f"{self.name} is infinite")


class FiniteField(Field):
    is_finite = True
    is_perfect = True

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.p = spec.p
        self.k = spec.k
        self.order = spec.p ** spec.k
        self.zero = 0
        self.one = 1

    def elements(self) -> Iterator[int]:
        return iter(range(self.order))

    def is_zero(self, a) -> bool:
        return a == 0

    def from_int(self, n: int) -> int:
        return n % self.p

    def digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            a, d = divmod(a, self.p)
            out.append(d)
        return out

    def from_digits(self, ds: Sequence[int]) -> int:
        a = 0
        for d in reversed(ds):
            a = a * self.p + d % self.p
        return a

    def pth_root(self, a: int) -> int:
        # b = a^(p^(k-1)) satisfies b^p = a^(p^k) = a
        return self.power(a, self.p ** (self.k - 1))

    def random(self, rng) -> int:
        return int(rng.integers(self.order))


class PrimeField(FiniteField):
    def __init__(self, spec: FieldSpec):
        super().__init__(spec)
        p = self.p
        self._inv = [0] + [pow(a, p - 2, p) for a in range(1, p)]

    @property
    def name(self) -> str:
        return f"F{self.p}"

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._inv[a]

    def frobenius(self, a):
        return a

    def pth_root(self, a):
        return a

    def to_json(self, a) -> int:
        return int(a)

    def from_json(self, obj) -> int:
        return int(obj) % self.p

    def fmt(self, a) -> str:
        return str(a)


class ExtensionField(FiniteField):
    _ADD_TABLE_LIMIT = 729

    def __init__(self, spec: FieldSpec):
        super().__init__(spec)
        self.modulus = spec.modulus
        p, q = self.p, self.order
        self._neg = [self.from_digits([-d % p for d in self.digits(a)]) for a in range(q)]
        self._add_table = None
        if p != 2 and q <= self._ADD_TABLE_LIMIT:
            dig = [self.digits(a) for a in range(q)]
            self._add_table = [
                [self.from_digits([(x + y) % p for x, y in zip(dig[a], dig[b])]) for b in range(q)]
                for a in range(q)
            ]
        self._exp, self._log = self._discrete_log_tables()

    @property
    def name(self) -> str:
        return f"F{self.order}"

    def _poly_mul_mod(self, a: int, b: int) -> int:
        p, k, m = self.p, self.k, self.modulus
        prod = list(_fp_mul(_fp_trim(self.digits(a)), _fp_trim(self.digits(b)), p))
        for i in range(len(prod) - 1, k - 1, -1):
            c = prod[i]
            if c:
                for j in range(k + 1):
                    prod[i - k + j] = (prod[i - k + j] - c * m[j]) % p
        return self.from_digits(prod[:k])

    def _discrete_log_tables(self):
        q = self.order
        for g in range(2, q):
            exp = [1]
            x = g
            while x != 1:
                exp.append(x)
                x = self._poly_mul_mod(x, g)
            if len(exp) == q - 1:
                log = [0] * q
                for i, v in enumerate(exp):
                    log[v] = i
                return exp, log
        raise ReducibleModulus(f"no primitive element modulo {self.modulus}")  # pragma: no cover

    def add(self, a, b):
        if self.p == 2:
            return a ^ b
        if self._add_table is not None:
            return self._add_table[a][b]
        p = self.p
        return self.from_digits([(x + y) % p for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a):
        return self._neg[a]

    def sub(self, a, b):
        return self.add(a, self._neg[b])

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[-self._log[a] % (self.order - 1)]

    def power(self, a, e: int):
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 if e == 0 else 0
        return self._exp[self._log[a] * e % (self.order - 1)]

    def to_json(self, a) -> list[int]:
        return self.digits(a)

    def from_json(self, obj) -> int:
        if isinstance(obj, int):
            return obj % self.p
        ds = list(obj)
        if len(ds) > self.k:
            raise ValueError(f"coefficient array too long for {self.name}: {obj}")
        return self.from_digits(ds + [0] * (self.k - len(ds)))

    def fmt(self, a) -> str:
        terms = []
        for i, d in enumerate(self.digits(a)):
            if d:
                mono = "" if i == 0 else ("u" if i == 1 else f"u^{i}")
                coef = "" if (d == 1 and mono) else str(d)
                terms.append(coef + mono)
        return "+".join(reversed(terms)) or "0"


class RationalFunctionField(Field):
    is_finite = False
    is_perfect = False
    order = None

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.p = spec.p
        self.zero = ((), (1,))
        self.one = ((1,), (1,))
        self.t = ((0, 1), (1,))

    @property
    def name(self) -> str:
        return f"F{self.p}(t)"

    def element(self, num: Sequence[int], den: Sequence[int] = (1,)):
        p = self.p
        num = _fp_trim(c % p for c in num)
        den = _fp_trim(c % p for c in den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return self.zero
        g = _fp_gcd(num, den, p)
        if g != (1,):
            num = _fp_divmod(num, g, p)[0]
            den = _fp_divmod(den, g, p)[0]
        lead_inv = pow(den[-1], p - 2, p)
        return _fp_scale(num, lead_inv, p), _fp_scale(den, lead_inv, p)

    def from_int(self, n: int):
        return self.element((n,))

    def add(self, a, b):
        p = self.p
        (an, ad), (bn, bd) = a, b
        if ad == bd:
            return self.element(_fp_add(an, bn, p), ad)
        return self.element(_fp_add(_fp_mul(an, bd, p), _fp_mul(bn, ad, p), p), _fp_mul(ad, bd, p))

    def neg(self, a):
        return _fp_scale(a[0], self.p - 1, self.p), a[1]

    def mul(self, a, b):
        if not a[0] or not b[0]:
            return self.zero
        p = self.p
        return self.element(_fp_mul(a[0], b[0], p), _fp_mul(a[1], b[1], p))

    def inv(self, a):
        if not a[0]:
            raise ZeroDivisionError("inverse of zero")
        return self.element(a[1], a[0])

    def is_zero(self, a) -> bool:
        return not a[0]

    def frobenius(self, a):
        p = self.p

        def spread(f):
            out = [0] * ((len(f) - 1) * p + 1) if f else []
            for i, c in enumerate(f):
                out[i * p] = c
            return tuple(out)

        # coefficients lie in F_p, so f(t)^p = f(t^p)
        return spread(a[0]), spread(a[1])

    def pth_root(self, a):
        p = self.p
        for f in a:
            if any(c for i, c in enumerate(f) if i % p):
                raise NoPthRoot(f"{self.fmt(a)} has no {p}-th root in {self.name}")
        return tuple(a[0][::p]), tuple(a[1][::p])

    def in_frobenius_image(self, a) -> bool:
        """Membership test for the subfield F_p(t^p)."""
        return all(not c for f in a for i, c in enumerate(f) if i % self.p)

    def random(self, rng, degree: int = 2):
        num = [int(c) for c in rng.integers(self.p, size=degree + 1)]
        den = [int(c) for c in rng.integers(self.p, size=degree)] + [1]
        return self.element(num, den)

    def to_json(self, a) -> list[list[int]]:
        return [list(a[0]), list(a[1])]

    def from_json(self, obj):
        if isinstance(obj, int):
            return self.from_int(obj)
        num, den = obj
        return self.element(num, den)

    def fmt(self, a) -> str:
        def show(f):
            terms = []
            for i, c in enumerate(f):
                if c:
                    mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
                    terms.append(("" if c == 1 and mono else str(c)) + mono)
            return "+".join(reversed(terms)) or "0"

        if a[1] == (1,):
            return show(a[0])
        return f"({show(a[0])})/({show(a[1])})"


@functools.lru_cache(maxsize=None)
def make_field(spec: FieldSpec) -> Field:
    if not is_prime(spec.p):
        raise CompositeP(f"characteristic {spec.p} is not prime")
    if spec.kind == PRIME:
        return PrimeField(FieldSpec(PRIME, spec.p))
    if spec.kind == RATIONAL_FUNCTION:
        return RationalFunctionField(FieldSpec(RATIONAL_FUNCTION, spec.p))
    if spec.kind != EXTENSION:
        raise ValueError(f"unknown field kind {spec.kind!r}")
    k, m = spec.k, spec.modulus
    if k < 1:
        raise ValueError("extension degree must be >= 1")
    if k > MAX_EXTENSION_DEGREE:
        raise ValueError(f"extension degree {k} > {MAX_EXTENSION_DEGREE} is not supported")
    if m is None or len(m) != k + 1 or m[-1] != 1 or any(not 0 <= c < spec.p for c in m):
        raise ReducibleModulus(f"modulus {m} is not a monic degree-{k} polynomial over F{spec.p}")
    if not _fp_is_irreducible(tuple(m), spec.p):
        raise ReducibleModulus(f"modulus {m} is reducible over F{spec.p}")
    if k == 1:
        return PrimeField(FieldSpec(PRIME, spec.p))
    return ExtensionField(FieldSpec(EXTENSION, spec.p, k, tuple(m)))


# default irreducible moduli, ascending coefficients
DEFAULT_MODULI: dict[int, tuple[int, int, tuple[int, ...]]] = {
    4: (2, 2, (1, 1, 1)),  # u^2 + u + 1
    8: (2, 3, (1, 1, 0, 1)),  # u^3 + u + 1
    9: (3, 2, (1, 0, 1)),  # u^2 + 1
    16: (2, 4, (1, 1, 0, 0, 1)),  # u^4 + u + 1
    25: (5, 2, (3, 0, 1)),  # u^2 + 3
    27: (3, 3, (1, 2, 0, 1)),  # u^3 + 2u + 1
}


def gf(q: int) -> Field:
    """Finite field of order ``q`` (prime, or one of the shipped default moduli)."""
    if is_prime(q):
        return make_field(FieldSpec(PRIME, q))
    if q not in DEFAULT_MODULI:
        raise ValueError(f"no default modulus for F{q}; pass a FieldSpec explicitly")
    p, k, m = DEFAULT_MODULI[q]
    return make_field(FieldSpec(EXTENSION, p, k, m))


def rational_function_field(p: int) -> RationalFunctionField:
    return make_field(FieldSpec(RATIONAL_FUNCTION, p))  # type: ignore[return-value]


def frobenius(F: Field, a):
    return F.frobenius(a)


def pth_root(F: Field, a):
    return F.pth_root(a)


# ---------------------------------------------------------------------------
# polynomials over an arbitrary field handle


def poly_trim(F: Field, f: Sequence) -> list:
    f = list(f)
    while f and F.is_zero(f[-1]):
        f.pop()
    return f


def poly_add(F: Field, f, g) -> list:
    n = max(len(f), len(g))
    z = F.zero
    return poly_trim(F, [F.add(f[i] if i < len(f) else z, g[i] if i < len(g) else z) for i in range(n)])


def poly_sub(F: Field, f, g) -> list:
    return poly_add(F, f, [F.neg(c) for c in g])


def poly_scale(F: Field, f, c) -> list:
    return poly_trim(F, [F.mul(a, c) for a in f])


def poly_mul(F: Field, f, g) -> list:
    if not f or not g:
        return []
    out = [F.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if F.is_zero(a):
            continue
        for j, b in enumerate(g):
            out[i + j] = F.add(out[i + j], F.mul(a, b))
    return poly_trim(F, out)


def poly_divmod(F: Field, f, g) -> tuple[list, list]:
    g = poly_trim(F, g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(poly_trim(F, f))
    dg = len(g) - 1
    inv_lead = F.inv(g[-1])
    q = [F.zero] * max(len(f) - dg, 0)
    for i in range(len(f) - 1, dg - 1, -1):
        c = F.mul(f[i], inv_lead)
        if not F.is_zero(c):
            q[i - dg] = c
            for j, b in enumerate(g):
                f[i - dg + j] = F.sub(f[i - dg + j], F.mul(c, b))
    return poly_trim(F, q), poly_trim(F, f[:dg])


def poly_monic(F: Field, f) -> list:
    f = poly_trim(F, f)
    if not f:
        return []
    return poly_scale(F, f, F.inv(f[-1]))


def poly_gcd(F: Field, f, g) -> list:
    """Monic gcd by Euclid's algorithm; ``gcd(f, 0) = monic(f)``."""
    f, g = poly_trim(F, f), poly_trim(F, g)
    while g:
        f, g = g, poly_divmod(F, f, g)[1]
    return poly_monic(F, f)


def poly_derivative(F: Field, f) -> list:
    return poly_trim(F, [F.mul(F.from_int(i), c) for i, c in enumerate(f)][1:])


def poly_from_ints(F: Field, coeffs: Sequence[int]) -> list:
    return poly_trim(F, [F.from_int(c) for c in coeffs])


def is_separable(F: Field, f) -> bool:
    return len(poly_gcd(F, f, poly_derivative(F, f))) == 1


def squarefree_radical(F: Field, f) -> list:
    """Product of the distinct monic irreducible factors of ``f``.

    Needs p-th roots of coefficients when ``f' = 0``, so only perfect fields
    are guaranteed to succeed.
    """
    f = poly_monic(F, f)
    if len(f) <= 2:
        return f
    df = poly_derivative(F, f)
    if not df:
        # f(T) = h(T^p) = (h^{1/p}(T))^p
        root = [F.pth_root(c) for c in f[:: F.p]]
        return squarefree_radical(F, root)
    g = poly_gcd(F, f, df)
    if len(g) == 1:
        return f
    # factors of multiplicity prime to p survive in f/g; the rest divide g
    r1 = poly_divmod(F, f, g)[0]
    r2 = squarefree_radical(F, g)
    common = poly_gcd(F, r1, r2)
    return poly_monic(F, poly_mul(F, r1, poly_divmod(F, r2, common)[0]))
