"""Built-in scenarios: named bundles of checks with expected outcomes."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from . import limits
from .algebra import jordan_chevalley, make_matrix_algebra, make_triangular
from .corpus import named_algebra
from .errors import FinalgError, TooLarge, UnknownScenario
from .fields import gf, poly_derivative, poly_gcd, poly_trim
from .liestruct import (
    check_engel_identity,
    is_lie_nilpotent,
    lie_derived_series,
    theorem_2_1_evaluate,
    theorem_2_2_evaluate,
    theorem_2_4_evaluate,
    zn_decomposition_check,
)
from .radical import radical
from .restricted import (
    compute_P,
    corollary_evaluate,
    klein,
    lemma32_counterexample,
    lemma_3_2_check,
    make_restricted,
)
from .unitgroup import (
    adjoint_group,
    derived_series,
    enumerate_units,
    is_bounded_engel_group,
    is_nilpotent_group,
    is_solvable,
)
from .verdicts import SKIPPED, _jsonable

PASS, FAIL, OUTSIDE = "pass", "fail", "outside-hypothesis"


@dataclass
class Context:
    seed: int = 0
    max_card: int | None = None
    max_group_card: int | None = None
    engel_cap: int = limits.DEFAULT_ENGEL_CAP
    timing: bool = False


@dataclass
class Recorder:
    scenario: str
    ctx: Context
    records: list[dict] = field(default_factory=list)

    def check(self, name: str, observed: Any, expected: Any, witness: Any = None) -> None:
        rec = {
            "scenario": self.scenario,
            "check": name,
            "outcome": PASS if observed == expected else FAIL,
            "observed": _jsonable(observed),
            "expected": _jsonable(expected),
        }
        if witness is not None:
            rec["witness"] = _jsonable(witness)
        self.records.append(rec)

    def verdict(self, name: str, v, expect: str = PASS) -> None:
        """Record a TheoremVerdict; ``expect`` is the outcome the scenario predicts."""
        observed = v.outcome
        rec = {
            "scenario": self.scenario,
            "check": name,
            "outcome": observed if observed == expect and observed != "undetermined" else FAIL,
            "observed": observed,
            "expected": expect,
            "verdict": v.to_json(),
        }
        self.records.append(rec)

    def skipped(self, name: str, reason: str) -> None:
        self.records.append({"scenario": self.scenario, "check": name, "outcome": SKIPPED, "reason": reason})

    def guarded(self, name: str, fn: Callable[[], None]) -> None:
        try:
            fn()
        except TooLarge as exc:
            self.skipped(name, str(exc))


def _group(A, ctx: Context):
    G = enumerate_units(A, ctx.max_card)
    if ctx.max_group_card is not None and G.order > ctx.max_group_card:
        raise TooLarge(f"|G| = {G.order} exceeds --max-group-card {ctx.max_group_card}")
    return G


# ---------------------------------------------------------------------------


def sc_m2f3(r: Recorder) -> None:
    def gl2f3():
        G = _group(make_matrix_algebra(gf(3), 2), r.ctx)
        r.check("gl2f3.order", G.order, 48)
        r.check("gl2f3.derived_orders", [H.order for H in derived_series(G)], [48, 24, 8, 2, 1])
        r.check("gl2f3.solvable", list(is_solvable(G)), [True, 4])

    def m2f3_lie():
        rep = lie_derived_series(make_matrix_algebra(gf(3), 2))
        r.check("m2f3.lie_solvable", rep.reaches_zero, False)
        r.check("m2f3.lie_derived_stabilizes_nonzero", rep.stabilized and rep.terms[-1].dim > 0, True, rep.dims())

    def gl2f4():
        G = _group(make_matrix_algebra(gf(4), 2), r.ctx)
        orders = [H.order for H in derived_series(G)]
        r.check("gl2f4.order", G.order, 180)
        r.check("gl2f4.solvable", is_solvable(G)[0], False)
        r.check("gl2f4.stable_term_order", orders[-1], 60, orders)

    r.guarded("gl2f3", gl2f3)
    m2f3_lie()
    r.guarded("gl2f4", gl2f4)
    r.guarded("thm2.1.m2f3", lambda: r.verdict("thm2.1.m2f3", theorem_2_1_evaluate(make_matrix_algebra(gf(3), 2)), OUTSIDE))


def sc_gl2f4(r: Recorder) -> None:
    A = make_matrix_algebra(gf(4), 2)
    r.guarded("thm2.1.m2f4", lambda: r.verdict("thm2.1.m2f4", theorem_2_1_evaluate(A, group_limit=r.ctx.max_card)))


def sc_klein(r: Recorder) -> None:
    L = klein()
    U = L.u
    r.check("u.dim", U.dim, 4)

    def units():
        G = _group(U, r.ctx)
        r.check("units.order", G.order, 4)
        r.check("units.abelian", G.is_abelian(), True)
        r.check("units.exponent", G.exponent(), 2)

    r.guarded("units", units)
    failing = [n for n in range(1, r.ctx.engel_cap + 1) if not check_engel_identity(U, n).holds]
    r.check("engel.fails_all_n", failing, list(range(1, r.ctx.engel_cap + 1)))
    r.check("u.lie_nilpotent", is_lie_nilpotent(U)[0], False)
    zn = zn_decomposition_check(U)
    r.check("u.z_plus_n", zn.holds, False, zn.note)
    r.check("radical.dim", radical(U).dim, 2)
    r.verdict("lem3.2", lemma_3_2_check(L))
    r.verdict("cor3.10", corollary_evaluate(L, "3.10"), OUTSIDE)


def sc_lemma32(r: Recorder) -> None:
    L = lemma32_counterexample()
    P = compute_P(L)
    r.check("P.zero", P.is_subspace and P.subspace.is_zero(), True)
    U = L.u
    x, y = U.basis(1), U.basis(2)
    z = U.sub(U.multiply(U.power(x, L.p - 1), y), y)
    r.check("z.nonzero", not U.is_zero(z), True, U.fmt(z))
    r.check("z.square_zero", U.is_zero(U.multiply(z, z)), True)
    v = lemma_3_2_check(L)
    r.check("lem3.2.witness", v.value("lem3.2.witness"), True)


def sc_t2f4(r: Recorder) -> None:
    A = make_triangular(gf(4), 2)
    J = radical(A).radical
    r.guarded("thm2.1", lambda: r.verdict("thm2.1", theorem_2_1_evaluate(A, [(J, [J])], group_limit=r.ctx.max_card)))


def sc_t4f2(r: Recorder) -> None:
    A = make_triangular(gf(2), 4)
    J = radical(A).radical

    def run():
        v = theorem_2_4_evaluate(A, J.basis, group_limit=r.ctx.max_card, cap=r.ctx.engel_cap)
        r.verdict("thm2.4", v)
        r.check("thm2.4.nilpotency_index", v.conditions["thm2.4.conclusion"]["nilpotency_index"], 4)

    r.guarded("thm2.4", run)


def jc_violations(A, xs) -> list:
    """Elements whose Jordan-Chevalley parts break the contract."""
    F = A.field
    bad = []
    for x in xs:
        xs_, xn = jordan_chevalley(A, x)
        f = A.minimal_polynomial(xs_)
        ok = (
            A.add(xs_, xn) == x
            and A.is_zero(A.bracket(xs_, xn))
            and len(poly_trim(F, poly_gcd(F, f, poly_derivative(F, f)))) == 1
            and A.is_nilpotent_elem(xn)
        )
        if not ok:
            bad.append(x)
    return bad


def sc_jordan_chevalley(r: Recorder) -> None:
    for A in (named_algebra("m2f2"), named_algebra("t2f3")):
        fp = A.fp
        xs = [fp.element_of(c) for c in range(fp.card)]
        bad = jc_violations(A, xs)
        r.check(f"exhaustive.{A.name}", len(bad), 0, bad[:1] or None)
    A = named_algebra("m3f4")
    rng = np.random.default_rng(r.ctx.seed)
    xs = [tuple(int(c) for c in rng.integers(4, size=A.dim)) for _ in range(200)]
    bad = jc_violations(A, xs)
    r.check(f"sampled.{A.name}", len(bad), 0, bad[:1] or None)


def sc_heisenberg(r: Recorder) -> None:
    A = make_triangular(gf(2), 3)
    U = adjoint_group(A, radical(A).radical)
    r.check("order", U.order, 8)
    r.check("abelian", U.is_abelian(), False)
    r.check("nilpotent", list(is_nilpotent_group(U)), [True, 2])
    r.check("engel", list(is_bounded_engel_group(U, r.ctx.engel_cap)), [True, 2])


def sc_thm22_f3(r: Recorder) -> None:
    F = gf(3)
    z, x, y = (0, 0), (1, 0), (0, 1)
    neg_x = (2, 0)
    L = make_restricted(F, [[z, x], [neg_x, z]], [z, y], name="f3-affine")
    v = theorem_2_2_evaluate(L.u, cap=r.ctx.engel_cap, group_limit=r.ctx.max_card)
    r.verdict("thm2.2", v)
    r.check("units_nilpotent", v.value("thm2.2.cond2.units_nilpotent"), False)
    r.check("lie_nilpotent", v.value("thm2.2.cond2.lie_nilpotent"), False)


SCENARIOS: dict[str, tuple[str, Callable[[Recorder], None]]] = {
    "m2f3": ("GL2(F3) solvable while M2(F3) is not Lie solvable; GL2(F4) not solvable", sc_m2f3),
    "gl2f4": ("unit solvability vs Lie solvability on M2(F4)", sc_gl2f4),
    "klein": ("u(L) over F2 with Klein-four units that is not bounded Engel", sc_klein),
    "lemma32-counterexample": ("P(L) = 0 over F2(t) yet xy - y is square-zero", sc_lemma32),
    "t2f4-thm2.1": ("unit solvability with a chain witness on T2(F4)", sc_t2f4),
    "t4f2-thm2.4": ("bounded Engel Lie set of strict upper triangulars in T4(F2)", sc_t4f2),
    "jordan-chevalley": ("Jordan-Chevalley decomposition contract", sc_jordan_chevalley),
    "heisenberg": ("adjoint group of T3(F2)", sc_heisenberg),
    "thm2.2-f3": ("class coincidence on a non-nilpotent u(L) over F3", sc_thm22_f3),
}


def run_scenario(sid: str, ctx: Context) -> list[dict]:
    if sid not in SCENARIOS:
        raise UnknownScenario(f"unknown scenario {sid!r}; known: {', '.join(SCENARIOS)}")
    r = Recorder(sid, ctx)
    start = time.perf_counter()
    try:
        SCENARIOS[sid][1](r)
    except FinalgError as exc:
        r.records.append({"scenario": sid, "check": "error", "outcome": FAIL, "error": f"{type(exc).__name__}: {exc}"})
    if ctx.timing:
        elapsed = round(time.perf_counter() - start, 3)
        for rec in r.records:
            rec["scenario_seconds"] = elapsed
    return r.records


def describe_builtin(name: str):
    """Resolve a describe target: restricted built-ins map to u(L)."""
    from .restricted import BUILTINS

    if name in BUILTINS:
        return BUILTINS[name]()
    return named_algebra(name)
