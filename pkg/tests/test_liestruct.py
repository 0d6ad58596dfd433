import itertools

import numpy as np
import pytest

from finalg.algebra import dual_numbers, make_matrix_algebra, make_triangular, matrix_element, span
from finalg.corpus import algebra_corpus, named_algebra
from finalg.errors import HypothesisFailed, TooLarge
from finalg.fields import gf
from finalg.liestruct import (
    check_chain_witness,
    check_engel_identity,
    check_nonmatrix_pi,
    engel_degree,
    is_lie_nilpotent,
    is_lie_solvable,
    lie_derived_series,
    lie_lower_central_series,
    theorem_2_1_evaluate,
    theorem_2_2_evaluate,
    theorem_2_4_evaluate,
    zn_decomposition_check,
)
from finalg.radical import radical
from finalg.restricted import klein, make_restricted
from finalg.unitgroup import enumerate_units, is_nilpotent_group
from finalg.verdicts import NOT_WITHIN_CAP

from helpers import random_invertible, rebase

CORPUS = list(algebra_corpus())


def E(A, i, j, n):
    rows = [[0] * n for _ in range(n)]
    rows[i - 1][j - 1] = 1
    return matrix_element(A, rows)


def brute_engel(A, n, elems):
    for x in elems:
        for y in elems:
            v = x
            for _ in range(n):
                v = A.bracket(v, y)
            if not A.is_zero(v):
                return (x, y)
    return None


def brute_nonmatrix(A, t, elems):
    e = A.field.p**t
    for x, y, z in itertools.product(elems, repeat=3):
        if not A.is_zero(A.power(A.multiply(A.bracket(x, y), z), e)):
            return (x, y, z)
    return None


def scan(A):
    return [A.fp.element_of(c) for c in range(A.fp.card)]


def test_series_examples(f2, f3):
    D = dual_numbers(f3)
    assert lie_derived_series(D).terms[1].is_zero()
    assert is_lie_nilpotent(D) == (True, 1)
    assert is_lie_solvable(make_triangular(f3, 2)) == (True, 2)
    rep = lie_derived_series(make_matrix_algebra(f3, 2))
    assert not rep.reaches_zero and rep.stabilized and rep.terms[-1].dim > 0
    assert rep.terms[-1] == rep.terms[-2]
    T = make_triangular(f2, 2)
    ok, _ = is_lie_nilpotent(T)
    lcs = lie_lower_central_series(T)
    assert not ok and lcs.terms[-1] == span(T, [E(T, 1, 2, 2)])
    assert is_lie_nilpotent(klein().u)[0] is False


def test_engel_examples(f2, f3):
    assert check_engel_identity(dual_numbers(f3), 1).holds
    assert not check_engel_identity(make_matrix_algebra(f2, 2), 3).holds
    T3 = make_triangular(f2, 3)
    strict = radical(T3).radical
    assert check_engel_identity(T3, 2, over=strict).holds
    assert not check_engel_identity(T3, 1, over=strict).holds


def test_engel_witness_mode(f2):
    M = make_matrix_algebra(f2, 2)
    e11, e12 = E(M, 1, 1, 2), E(M, 1, 2, 2)
    v = check_engel_identity(M, 4, mode="witness", witnesses=[(e12, e12), (e12, e11)])
    assert not v.holds and v.counterexample == (e12, e11) and v.checked == 2


@pytest.mark.parametrize("name", ["m2f2", "t2f2", "t2f3", "t3f2", "dualf4"])
def test_engel_matches_pairwise_oracle(name):
    A = named_algebra(name)
    elems = scan(A)
    for n in (1, 2, 3):
        v = check_engel_identity(A, n)
        expect = brute_engel(A, n, elems)
        assert v.holds == (expect is None)
        if expect is not None:
            assert v.counterexample == expect


@pytest.mark.parametrize("name", ["m2f2", "t2f2", "dualf3"])
def test_nonmatrix_matches_triple_oracle(name):
    A = named_algebra(name)
    elems = scan(A)
    for t in (0, 1):
        v = check_nonmatrix_pi(A, t)
        expect = brute_nonmatrix(A, t, elems)
        assert v.holds == (expect is None)
        if expect is not None:
            assert v.counterexample == expect


def test_nonmatrix_examples(f2, f3):
    assert check_nonmatrix_pi(dual_numbers(f3), 0).holds
    assert check_nonmatrix_pi(make_triangular(f2, 2), 1).holds
    M = make_matrix_algebra(f2, 2)
    assert all(not check_nonmatrix_pi(M, t).holds for t in range(4))
    # pure witness from the matrix-unit calculus
    w = M.multiply(M.bracket(E(M, 1, 1, 2), E(M, 1, 2, 2)), E(M, 2, 1, 2))
    assert w == E(M, 1, 1, 2) and M.power(w, 8) == w


def test_identity_guards(f3):
    with pytest.raises(TooLarge):
        check_nonmatrix_pi(make_matrix_algebra(f3, 2), 0, limit=10)


def test_zn_examples(f2, f3):
    assert zn_decomposition_check(dual_numbers(f3)).holds
    v = zn_decomposition_check(make_triangular(f2, 2))
    assert not v.holds and v.note
    assert not zn_decomposition_check(klein().u).holds


@pytest.mark.parametrize("A", CORPUS, ids=[A.name for A in CORPUS])
def test_lie_solvability_invariant_under_basis_change(A):
    rng = np.random.default_rng(A.dim * 101 + A.field.order)
    expect = is_lie_solvable(A)
    for _ in range(20):
        B = rebase(A, random_invertible(A.field, A.dim, rng))
        assert is_lie_solvable(B) == expect


@pytest.mark.parametrize("A", CORPUS, ids=[A.name for A in CORPUS])
def test_lie_nilpotent_class_gives_engel(A):
    ok, c = is_lie_nilpotent(A)
    if not ok or A.cardinality > 1 << 12:
        return
    for n in range(max(c, 1), c + 3):
        assert check_engel_identity(A, n).holds


def test_engel_degree(f2, f3):
    assert engel_degree(dual_numbers(f3)) == 1
    assert engel_degree(klein().u, cap=4) == NOT_WITHIN_CAP


def test_theorem_2_1_examples(f3, f4):
    T = make_triangular(f4, 2)
    J = radical(T).radical
    v = theorem_2_1_evaluate(T, [(J, [J])])
    assert [v.value(f"thm2.1.cond{i}") for i in range(1, 5)] == [True, True, True, True]
    assert v.outcome == "pass"
    v = theorem_2_1_evaluate(make_matrix_algebra(f4, 2))
    assert v.value("thm2.1.cond1") is False and v.value("thm2.1.cond3") is False
    assert v.outcome == "pass"
    v = theorem_2_1_evaluate(make_matrix_algebra(f3, 2))
    assert v.value("thm2.1.cond1") is True and v.value("thm2.1.cond2") is False
    assert v.outcome == "outside-hypothesis"


def test_chain_witness_rejections(f4):
    T = make_triangular(f4, 2)
    J = radical(T).radical
    zero = span(T, [])
    assert check_chain_witness(T, J, [(J, [J])]) == (True, None)
    assert check_chain_witness(T, J, [(zero, [])])[0] is False
    e11 = E(T, 1, 1, 2)
    assert check_chain_witness(T, J, [(J, [span(T, [e11])])])[0] is False


def test_theorem_2_2_examples(f3):
    v = theorem_2_2_evaluate(dual_numbers(f3))
    assert v.outcome == "pass"
    assert v.value("thm2.2.classes_equal") is True
    z, x, y = (0, 0), (1, 0), (0, 1)
    L = make_restricted(f3, [[z, x], [(2, 0), z]], [z, y])
    v = theorem_2_2_evaluate(L.u)
    assert v.value("thm2.2.cond2.units_nilpotent") is False
    assert v.value("thm2.2.cond2.lie_nilpotent") is False
    assert v.outcome == "pass"
    L1 = make_restricted(f3, [[(0,)]], [(0,)])
    v = theorem_2_2_evaluate(L1.u)
    assert v.value("thm2.2.classes_equal") is True and v.outcome == "pass"
    assert theorem_2_2_evaluate(klein().u).outcome == "outside-hypothesis"


def test_theorem_2_2_class_property_on_corpus():
    checked = 0
    for A in CORPUS:
        F = A.field
        if F.order < 3 or A.cardinality > 1 << 10:
            continue
        G = enumerate_units(A)
        nil, cls = is_nilpotent_group(G)
        if nil:
            checked += 1
            assert is_lie_nilpotent(A) == (True, cls), A.name
    assert checked > 0


def test_theorem_2_4_examples(f2):
    T3 = make_triangular(f2, 3)
    v = theorem_2_4_evaluate(T3, radical(T3).radical.basis)
    c = v.conditions["thm2.4.conclusion"]
    assert v.outcome == "pass" and c["nilpotency_index"] == 3
    M = make_matrix_algebra(f2, 2)
    v = theorem_2_4_evaluate(M, [E(M, 1, 2, 2)])
    c = v.conditions["thm2.4.conclusion"]
    assert v.value("thm2.4.hyp.units") is True and c["subalgebra_dim"] == 1 and c["nilpotency_index"] == 2
    v = theorem_2_4_evaluate(M, [])
    assert v.conditions["thm2.4.conclusion"]["nilpotency_index"] == 0
    T2 = make_triangular(f2, 2)
    v = theorem_2_4_evaluate(T2, [E(T2, 1, 1, 2)])
    assert v.outcome == "outside-hypothesis"
    with pytest.raises(HypothesisFailed):
        theorem_2_4_evaluate(T2, [E(T2, 1, 1, 2)], strict=True)
