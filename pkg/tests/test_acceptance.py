"""The ten acceptance criteria, each at its stated tolerance and time budget."""

import subprocess
import sys
import time

import numpy as np
import pytest

from finalg.corpus import algebra_corpus
from finalg.liestruct import check_engel_identity, is_lie_solvable, theorem_2_1_evaluate
from finalg.radical import radical, radical_brute_oracle
from finalg.restricted import (
    build_u,
    compute_P,
    embed,
    lemma32_counterexample,
    lemma_3_2_check,
    p_polynomial,
    sweep_corpus,
)
from finalg.scenarios import Context, run_scenario
from finalg.sweeps import sweep
from finalg.unitgroup import enumerate_units, is_solvable

pytestmark = pytest.mark.acceptance


@pytest.fixture(scope="module")
def corpus_f2():
    return sweep_corpus("restricted-f2-d3")


@pytest.fixture(scope="module")
def corpus_f3():
    return sweep_corpus("restricted-f3-d2")


def _scenario_ok(sid):
    recs = run_scenario(sid, Context(seed=0))
    bad = [r for r in recs if r["outcome"] not in ("pass", "outside-hypothesis")]
    return recs, bad


def test_1_radical_oracle(record_acceptance, corpus_f2, corpus_f3):
    start = time.perf_counter()
    algebras = list(algebra_corpus(1 << 12))
    algebras += [L.u for L in corpus_f2 + corpus_f3 if L.p ** (L.p**L.dim) <= 1 << 12]
    mismatches = [A for A in algebras if radical(A).radical != radical_brute_oracle(A)]
    elapsed = time.perf_counter() - start
    ok = not mismatches and elapsed < 60
    record_acceptance(1, f"radical = oracle on {len(algebras)} algebras in {elapsed:.1f}s", ok)
    assert not mismatches
    assert elapsed < 60


def test_2_m2f3_sharpness(record_acceptance):
    start = time.perf_counter()
    recs, bad = _scenario_ok("m2f3")
    elapsed = time.perf_counter() - start
    by_check = {r["check"]: r for r in recs}
    ok = (
        not bad
        and by_check["gl2f3.derived_orders"]["observed"] == [48, 24, 8, 2, 1]
        and by_check["gl2f4.order"]["observed"] == 180
        and by_check["gl2f4.stable_term_order"]["observed"] == 60
        and by_check["m2f3.lie_solvable"]["observed"] is False
        and elapsed < 10
    )
    record_acceptance(2, f"m2f3 scenario ({elapsed:.1f}s)", ok)
    assert ok, bad


def test_3_klein(record_acceptance):
    start = time.perf_counter()
    recs, bad = _scenario_ok("klein")
    from finalg.restricted import klein

    U = klein().u
    G = enumerate_units(U)
    engel_fail = all(not check_engel_identity(U, n).holds for n in range(1, 11))
    elapsed = time.perf_counter() - start
    ok = not bad and G.order == 4 and G.is_abelian() and G.exponent() == 2 and engel_fail and elapsed < 1
    record_acceptance(3, f"Klein four units, Engel fails for n <= 10 ({elapsed:.2f}s)", ok)
    assert ok, bad


def test_4_lemma_3_2(record_acceptance, corpus_f2, corpus_f3):
    start = time.perf_counter()
    applicable = violations = 0
    for L in corpus_f2 + corpus_f3:
        v = lemma_3_2_check(L)
        if v.in_hypothesis:
            applicable += 1
            violations += v.outcome != "pass"
    elapsed = time.perf_counter() - start

    L = lemma32_counterexample()
    U = L.u
    x, y = U.basis(1), U.basis(2)
    z = U.sub(U.multiply(x, y), y)
    counter_ok = (
        compute_P(L).subspace.is_zero()
        and not U.is_zero(z)
        and U.is_zero(U.multiply(z, z))
    )
    ok = violations == 0 and applicable > 0 and counter_ok and elapsed < 120
    record_acceptance(4, f"square-zero lemma on {applicable} instances, F2(t) witness ({elapsed:.1f}s)", ok)
    assert violations == 0 and applicable > 0
    assert counter_ok
    assert elapsed < 120


def test_5_class_coincidence(record_acceptance):
    start = time.perf_counter()
    flagged, summary = sweep("restricted-f3-d2", "thm2.2-class")
    elapsed = time.perf_counter() - start
    ok = summary["inconsistencies"] == 0 and summary["counts"].get("pass", 0) > 0 and elapsed < 300
    record_acceptance(5, f"class coincidence over {summary['instances']} presentations ({elapsed:.1f}s)", ok)
    assert summary["inconsistencies"] == 0, flagged[:3]
    assert elapsed < 300


def test_6_theorem_2_1_forward(record_acceptance):
    start = time.perf_counter()
    violations, checked = [], 0
    for A in algebra_corpus(1 << 12):
        if A.field.order < 4:
            continue
        G = enumerate_units(A)
        if not is_solvable(G)[0]:
            continue
        checked += 1
        J = radical(A).radical
        if not is_lie_solvable(A)[0] or not _quotient_commutative(A, J):
            violations.append(A.name)
    from finalg.algebra import make_triangular
    from finalg.fields import gf

    T = make_triangular(gf(4), 2)
    J = radical(T).radical
    v = theorem_2_1_evaluate(T, [(J, [J])])
    elapsed = time.perf_counter() - start
    ok = not violations and checked > 0 and v.value("thm2.1.cond4") is True and v.outcome == "pass" and elapsed < 60
    record_acceptance(6, f"solvable units force Lie solvable, A/J commutative ({checked} algebras, {elapsed:.1f}s)", ok)
    assert not violations
    assert v.value("thm2.1.cond4") is True and v.outcome == "pass"
    assert elapsed < 60


def _quotient_commutative(A, J):
    from finalg.algebra import commutator_ideal, quotient

    return commutator_ideal(quotient(A, J)).is_zero()


def test_7_jordan_chevalley(record_acceptance):
    start = time.perf_counter()
    recs, bad = _scenario_ok("jordan-chevalley")
    elapsed = time.perf_counter() - start
    checks = {r["check"] for r in recs}
    ok = not bad and {"exhaustive.M2(F2)", "exhaustive.T2(F3)", "sampled.M3(F4)"} <= checks and elapsed < 30
    record_acceptance(7, f"Jordan-Chevalley contract ({elapsed:.1f}s)", ok)
    assert ok, bad


def test_8_theorem_2_4(record_acceptance):
    start = time.perf_counter()
    recs, bad = _scenario_ok("t4f2-thm2.4")
    elapsed = time.perf_counter() - start
    idx = {r["check"]: r for r in recs}["thm2.4.nilpotency_index"]["observed"]
    ok = not bad and idx == 4 and elapsed < 1
    record_acceptance(8, f"T4(F2) strict uppers generate a nilpotent S of index {idx} ({elapsed:.2f}s)", ok)
    assert ok, bad


def test_9_pbw_certificate(record_acceptance, corpus_f2, corpus_f3):
    start = time.perf_counter()
    presentations = corpus_f2 + corpus_f3
    # fresh builds: build_u runs the associativity and relation certificate
    dim_bad = [L for L in presentations if build_u(L).dim != L.p**L.dim]
    rng = np.random.default_rng(0)
    mismatches = 0
    for _ in range(500):
        L = presentations[int(rng.integers(len(presentations)))]
        v = tuple(int(c) for c in rng.integers(L.p, size=L.dim))
        F, U = L.field, L.u
        assoc = p_polynomial(L, v).associative(F)
        minpoly = U.minimal_polynomial(embed(L, v, U))
        mismatches += list(assoc) != list(minpoly)
    elapsed = time.perf_counter() - start
    ok = not dim_bad and mismatches == 0 and elapsed < 120
    record_acceptance(9, f"PBW on {len(presentations)} presentations, 500 p-polynomials ({elapsed:.1f}s)", ok)
    assert not dim_bad
    assert mismatches == 0
    assert elapsed < 120


def test_10_determinism(record_acceptance):
    cmd = [sys.executable, "-m", "finalg.cli", "run", "--all", "--seed", "0"]
    first = subprocess.run(cmd, capture_output=True, check=False)
    second = subprocess.run(cmd, capture_output=True, check=False)
    ok = first.returncode == 0 and first.stdout == second.stdout and len(first.stdout) > 0
    record_acceptance(10, "two `finalg run --all --seed 0` reports are byte-identical", ok)
    assert first.returncode == 0, first.stderr.decode()
    assert first.stdout == second.stdout
