import itertools

import pytest

from finalg.errors import WordSyntaxError
from finalg.words import commutator_power_word, derived_word, engel_word, free_reduce, parse_word

PERMS = list(itertools.permutations(range(3)))


def compose(a, b):
    # left-to-right product, matching word evaluation
    return tuple(b[a[i]] for i in range(3))


def inverse(a):
    out = [0] * 3
    for i, v in enumerate(a):
        out[v] = i
    return tuple(out)


ONE = (0, 1, 2)


def ev(w, values):
    return w.evaluate(values, compose, inverse, ONE)


def test_free_reduction():
    assert free_reduce([(0, 1), (1, 1), (1, -1), (0, -1)]) == ()
    assert free_reduce([(0, 1), (0, 1)]) == ((0, 1), (0, 1))


def test_parse_commutator_convention():
    w = parse_word("(x1, x2)")
    assert w.arity == 2 and w.letters == ((0, -1), (1, -1), (0, 1), (1, 1))
    assert parse_word("x1^2 x2'").letters == ((0, 1), (0, 1), (1, -1))
    assert parse_word("(x1,x2,x2)").letters == engel_word(2).letters
    assert parse_word("(x1,x2)^4").letters == commutator_power_word(4).letters
    assert parse_word("x1", arity=3).arity == 3


@pytest.mark.parametrize("text", ["", "x1 x1'", "(x1", "x1 )", "y1", "x2", "x1^"])
def test_parse_errors(text):
    with pytest.raises(WordSyntaxError):
        parse_word(text, arity=1 if text == "x2" else None)


def test_words_on_s3():
    # S3 is nonabelian, metabelian, and not nilpotent
    comm = parse_word("(x1,x2)")
    assert any(ev(comm, (a, b)) != ONE for a in PERMS for b in PERMS)
    d2 = derived_word(2)
    assert d2.arity == 4
    assert all(ev(d2, vals) == ONE for vals in itertools.product(PERMS, repeat=4))
    for n in range(1, 5):
        assert any(ev(engel_word(n), (a, b)) != ONE for a in PERMS for b in PERMS)
