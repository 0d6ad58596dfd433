import itertools
import json

import numpy as np
import pytest

from finalg.algebra import dual_numbers, span
from finalg.errors import (
    JacobiFails,
    NotAntisymmetric,
    NotInL,
    NotRestricted,
    NotRestrictedIdeal,
    StraighteningInconsistent,
)
from finalg.fields import gf
from finalg.linalg import Subspace
from finalg.restricted import (
    RestrictedLieAlgebra,
    build_u,
    compute_P,
    corollary_evaluate,
    derived_subalgebra,
    embed,
    is_p_nilpotent,
    is_reduced,
    klein,
    lemma32_counterexample,
    lemma_3_2_check,
    lemma_3_5_witness_check,
    lie_nilpotent_L,
    lower_central_series_L,
    make_restricted,
    p_polynomial,
    p_power,
    pl_ideal,
    project_to_L,
    quotient_L,
    restricted_subalgebra,
    sweep_corpus,
)

X, Y, XY = 1, 2, 3  # PBW indices in u(L) for dim 2 over F2


@pytest.fixture(scope="module")
def corpus():
    return sweep_corpus("restricted-f2-d3") + sweep_corpus("restricted-f3-d2")


def unit(U, i):
    return U.basis(i)


def jacobson_pmap(L, v):
    """v^[p] from the basis p-map by semilinearity and Jacobson's sum formula (p = 2, 3)."""
    F, p = L.field, L.p
    s, sp = L.zero(), L.zero()
    for i, c in enumerate(v):
        if F.is_zero(c):
            continue
        y = L.scale(c, L.basis(i))
        yp = L.scale(F.power(c, p), L.pmap[i])
        if p == 2:
            extra = L.lie(s, y)
        elif p == 3:
            yx = L.lie(y, s)
            extra = L.add(L.lie(y, yx), L.scale(F.from_int(2), L.lie(s, yx)))
        else:  # pragma: no cover
            raise NotImplementedError
        sp = L.add(L.add(sp, yp), extra)
        s = L.add(s, y)
    return sp


def test_validation_examples(f2):
    z = (0, 0)
    assert make_restricted(f2, [[z, z], [z, z]], [z, z]).is_abelian()
    klein()
    with pytest.raises(NotRestricted):
        make_restricted(f2, [[z, (1, 0)], [(1, 0), z]], [(0, 1), (0, 1)])
    with pytest.raises(NotAntisymmetric):
        make_restricted(gf(3), [[z, (1, 0)], [(1, 0), z]], [z, z])


def test_jacobi_failure_detected(f2):
    elems = list(itertools.product(range(2), repeat=3))
    failures = 0
    for a, b, c in itertools.product(elems, repeat=3):
        zero = (0, 0, 0)
        br = [[zero, a, b], [a, zero, c], [b, c, zero]]
        try:
            RestrictedLieAlgebra(f2, br, [zero] * 3, check=False).check_jacobi()
        except JacobiFails:
            failures += 1
    assert failures > 0


def test_straightening_rejects_unrestricted_table(f2):
    z = (0, 0)
    L = RestrictedLieAlgebra(f2, [[z, (1, 0)], [(1, 0), z]], [(0, 1), (0, 1)], check=False)
    with pytest.raises(StraighteningInconsistent):
        build_u(L)


def test_build_u_examples(f2, f3):
    U = make_restricted(f2, [[(0,)]], [(0,)]).u
    assert U.table == dual_numbers(f2).table
    U = klein().u
    x, y, xy = unit(U, X), unit(U, Y), unit(U, XY)
    assert U.multiply(x, y) == xy
    assert U.multiply(y, x) == U.add(xy, x)
    assert U.is_zero(U.multiply(x, x))
    assert U.multiply(y, y) == y
    V = make_restricted(f3, [[(0,)]], [(1,)]).u
    t = unit(V, 1)
    assert V.dim == 3 and V.power(t, 3) == t


def test_embed_and_project(f2):
    L = klein()
    U = L.u
    assert U.is_zero(embed(L, L.zero(), U))
    rng = np.random.default_rng(0)
    for _ in range(100):
        v = tuple(int(c) for c in rng.integers(2, size=2))
        assert project_to_L(L, embed(L, v, U), U) == v
    with pytest.raises(NotInL):
        project_to_L(L, unit(U, XY), U)


def test_p_power_examples():
    L = klein()
    assert p_power(L, (1, 0)) == (0, 0)
    assert p_power(L, (0, 1)) == (0, 1)
    assert p_power(L, (1, 1)) == (1, 1)


def test_p_polynomial_examples():
    L = klein()
    assert p_polynomial(L, (1, 0)).coefficients == (0, 1)
    assert p_polynomial(L, (0, 1)).coefficients == (1, 1)
    C = lemma32_counterexample()
    F = C.field
    pp = p_polynomial(C, (F.zero, F.one))
    # y^[4] = t^2 x = t * y^[2]
    assert pp.coefficients == (F.zero, F.t, F.one)


def test_compute_P_examples(f2):
    z = (0, 0)
    L0 = make_restricted(f2, [[z, z], [z, z]], [z, z])
    assert compute_P(L0).subspace == Subspace.full(f2, 2)
    P = compute_P(klein())
    assert P.subspace == Subspace(f2, 2, [(1, 0)]) and sorted(P.elements) == [(0, 0), (1, 0)]
    C = compute_P(lemma32_counterexample())
    assert C.subspace.is_zero() and not C.exact


def test_pl_ideal_examples(f2):
    L = make_restricted(gf(3), [[(0,)]], [(1,)])
    assert pl_ideal(L).is_zero()
    K = klein()
    U = K.u
    assert pl_ideal(K) == span(U, [unit(U, X), unit(U, XY)])
    D = make_restricted(f2, [[(0,)]], [(0,)])
    assert pl_ideal(D) == span(D.u, [(0, 1)])


def test_lemma_3_2_examples(f3):
    v = lemma_3_2_check(klein())
    assert v.outcome == "pass" and v.value("lem3.2.N_equals_PLu") is True
    L = make_restricted(f3, [[(0,)]], [(1,)])
    assert compute_P(L).subspace.is_zero() and is_reduced(L.u)
    assert lemma_3_2_check(L).outcome == "pass"
    v = lemma_3_2_check(lemma32_counterexample())
    assert v.value("lem3.2.P_zero") is True and v.value("lem3.2.witness") is True


def test_lemma_3_5_examples(f2, f3):
    z = (0, 0)
    ab = make_restricted(f2, [[z, z], [z, z]], [z, z])
    assert lemma_3_5_witness_check(ab, 0, 1).holds
    v = lemma_3_5_witness_check(klein(), 1, 0)
    assert v.holds and "reduced) fails" in v.note
    L = make_restricted(f3, [[z, z], [z, z]], [(1, 0), (0, 1)])
    v = lemma_3_5_witness_check(L, 0, 1)
    assert v.holds and "u(L) reduced" in v.note


def test_substructures(f2):
    L = klein()
    x = Subspace(f2, 2, [(1, 0)])
    assert restricted_subalgebra(L, [(1, 0)]) == x
    assert derived_subalgebra(L) == x
    terms = lower_central_series_L(L)
    assert terms[1] == x and terms[2] == x
    assert lie_nilpotent_L(L) == (False, None)
    Q = quotient_L(L, x)
    assert Q.dim == 1 and Q.pmap == ((1,),)
    with pytest.raises(NotRestrictedIdeal):
        quotient_L(L, Subspace(f2, 2, [(0, 1)]))


def test_corollary_examples():
    v = corollary_evaluate(klein(), "3.10")
    assert v.outcome == "outside-hypothesis"
    assert v.value("cor3.10.cond1") is True and v.value("cor3.10.cond2") is False
    L = make_restricted(gf(5), [[(0,)]], [(0,)])
    v = corollary_evaluate(L, "3.8")
    assert v.outcome == "pass" and all(v.value(f"cor3.8.cond{i}") is True for i in (1, 2, 3))


def test_json_round_trip():
    for L in (klein(), lemma32_counterexample()):
        text = json.dumps(L.to_json())
        M = RestrictedLieAlgebra.from_json(json.loads(text))
        assert M == L and json.dumps(M.to_json()) == text


def test_pbw_dimension_and_certificate(corpus):
    for L in corpus[::7]:
        U = build_u(L)  # associativity and relation checks run inside
        assert U.dim == L.p**L.dim


def test_embed_is_lie_and_pmap_homomorphism(corpus):
    rng = np.random.default_rng(5)
    for L in corpus[::11]:
        U = L.u
        e = [embed(L, L.basis(i), U) for i in range(L.dim)]
        for i, j in itertools.product(range(L.dim), repeat=2):
            assert embed(L, L.lie(L.basis(i), L.basis(j)), U) == U.bracket(e[i], e[j])
        for i in range(L.dim):
            assert embed(L, L.pmap[i], U) == U.power(e[i], L.p)
        for _ in range(100):
            v = tuple(int(c) for c in rng.integers(L.p, size=L.dim))
            assert p_power(L, v) == jacobson_pmap(L, v)


def test_p_polynomial_matches_minimal_polynomial(corpus):
    rng = np.random.default_rng(9)
    for L in corpus[::13]:
        U = L.u
        for _ in range(5):
            v = tuple(int(c) for c in rng.integers(L.p, size=L.dim))
            pp = p_polynomial(L, v)
            f = pp.associative(L.field)
            assert U.is_zero(U.evaluate_poly(f, embed(L, v, U)))
            assert f == U.minimal_polynomial(embed(L, v, U))
            assert is_p_nilpotent(L, v) == pp.is_pure_power(L.field)


def test_corpus_counts(corpus):
    f2 = [L for L in corpus if L.p == 2]
    f3 = [L for L in corpus if L.p == 3]
    assert (len(f2), len(f3)) == (932, 92)
    assert len(set(corpus)) == len(corpus)
