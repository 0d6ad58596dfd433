"""Named algebras and the small-algebra corpus used by sweeps and tests."""

from __future__ import annotations

import re
from typing import Iterator

from .algebra import (
    Algebra,
    cyclic_group_table,
    dihedral_group_table,
    direct_product_table,
    dual_numbers,
    field_as_algebra,
    make_group_algebra,
    make_matrix_algebra,
    make_triangular,
    quaternion_group_table,
)
from .errors import BadInput
from .fields import DEFAULT_MODULI, gf, is_prime

FIELD_ORDERS = sorted([q for q in range(2, 28) if is_prime(q)] + list(DEFAULT_MODULI))


def small_groups() -> list[tuple[str, list[list[int]]]]:
    """Groups of order <= 8 up to isomorphism, as Cayley tables."""
    out = [(f"C{m}", cyclic_group_table(m)) for m in range(1, 9)]
    c2 = cyclic_group_table(2)
    out.append(("C2xC2", direct_product_table(c2, c2)))
    out.append(("C2xC4", direct_product_table(c2, cyclic_group_table(4))))
    out.append(("C2xC2xC2", direct_product_table(direct_product_table(c2, c2), c2)))
    out.append(("D3", dihedral_group_table(3)))
    out.append(("D4", dihedral_group_table(4)))
    out.append(("Q8", quaternion_group_table()))
    return out


def algebra_corpus(max_card: int = 1 << 12) -> Iterator[Algebra]:
    """Matrix, triangular, group and dual-number algebras with ``|A| <= max_card``."""
    for q in FIELD_ORDERS:
        F = gf(q)
        for n in range(1, 5):
            if q ** (n * n) <= max_card:
                A = make_matrix_algebra(F, n)
                A.name = f"M{n}(F{q})"
                yield A
        for n in range(2, 5):
            if q ** (n * (n + 1) // 2) <= max_card:
                A = make_triangular(F, n)
                A.name = f"T{n}(F{q})"
                yield A
        for gname, table in small_groups():
            if q ** len(table) <= max_card and len(table) > 1:
                yield make_group_algebra(F, table, name=f"F{q}[{gname}]")
        if q * q <= max_card:
            A = dual_numbers(F)
            A.name = f"F{q}[e]"
            yield A


_NAMED = re.compile(r"^(m|t)(\d)f(\d+)$")


def named_algebra(name: str) -> Algebra:
    """``m2f3`` = M_2(F_3), ``t3f2`` = T_3(F_2), ``f4`` = F_4, ``dualf3`` = F_3[e]."""
    m = _NAMED.match(name)
    try:
        if m:
            kind, n, q = m.group(1), int(m.group(2)), int(m.group(3))
            A = (make_matrix_algebra if kind == "m" else make_triangular)(gf(q), n)
            A.name = f"{kind.upper()}{n}(F{q})"
            return A
        if name.startswith("dualf"):
            q = int(name[5:])
            A = dual_numbers(gf(q))
            A.name = f"F{q}[e]"
            return A
        if re.fullmatch(r"f\d+", name):
            A = field_as_algebra(gf(int(name[1:])))
            A.name = name.upper()
            return A
    except ValueError as exc:
        raise BadInput(str(exc)) from exc
    raise BadInput(f"unknown built-in algebra {name!r}")
