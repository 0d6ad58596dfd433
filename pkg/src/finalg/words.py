"""Words in the free group on ``x1, x2, ...`` and their compact string syntax.

Grammar (whitespace is ignored)::

    word    := term (["*"] term)*
    term    := atom ("'" | "^" ["-"] digits)*
    atom    := "x" digits | "1" | "(" word ("," word)* ")"

Juxtaposition is the group product, ``'`` the inverse and ``^n`` an
integer power.  A parenthesised list with commas is a left-normed
commutator with ``(a, b) = a' b' a b`` and ``(a, b, c) = ((a, b), c)``;
without commas the parentheses only group.  Words are freely reduced
and the trivial word is rejected.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Sequence, TypeVar

from .errors import WordSyntaxError

T = TypeVar("T")
Letters = tuple[tuple[int, int], ...]


def free_reduce(letters) -> Letters:
    out: list[tuple[int, int]] = []
    for v, e in letters:
        if out and out[-1][0] == v and out[-1][1] == -e:
            out.pop()
        else:
            out.append((v, e))
    return tuple(out)


def _inverse(letters: Letters) -> Letters:
    return tuple((v, -e) for v, e in reversed(letters))


def _power(letters: Letters, n: int) -> Letters:
    if n < 0:
        letters, n = _inverse(letters), -n
    return free_reduce(letters * n)


def _commutator(a: Letters, b: Letters) -> Letters:
    return free_reduce(_inverse(a) + _inverse(b) + a + b)


@dataclass(frozen=True)
class GroupWord:
    arity: int
    letters: Letters

    def __post_init__(self):
        letters = free_reduce(self.letters)
        if not letters:
            raise WordSyntaxError("the trivial word is not a group identity")
        if any(not 0 <= v < self.arity or e not in (1, -1) for v, e in letters):
            raise WordSyntaxError(f"letters out of range for arity {self.arity}")
        object.__setattr__(self, "letters", letters)

    def __str__(self) -> str:
        return " ".join(f"x{v + 1}" + ("'" if e < 0 else "") for v, e in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def evaluate(self, values: Sequence[T], mul: Callable[[T, T], T], inv: Callable[[T], T], one: T) -> T:
        acc = one
        for v, e in self.letters:
            acc = mul(acc, values[v] if e > 0 else inv(values[v]))
        return acc


def commutator_word(a: GroupWord, b: GroupWord) -> GroupWord:
    return GroupWord(max(a.arity, b.arity), _commutator(a.letters, b.letters))


def engel_word(n: int) -> GroupWord:
    """``(x1, x2, ..., x2)`` with ``n`` copies of ``x2``."""
    if n < 1:
        raise ValueError("Engel length must be >= 1")
    w: Letters = ((0, 1),)
    y: Letters = ((1, 1),)
    for _ in range(n):
        w = _commutator(w, y)
    return GroupWord(2, w)


def commutator_power_word(e: int) -> GroupWord:
    """``(x1, x2)^e``."""
    return GroupWord(2, _power(_commutator(((0, 1),), ((1, 1),)), e))


def derived_word(d: int) -> GroupWord:
    """The word of arity ``2**d`` vanishing exactly on groups of derived length <= d."""
    if d < 1:
        raise ValueError("depth must be >= 1")
    words: list[Letters] = [((i, 1),) for i in range(2**d)]
    while len(words) > 1:
        words = [_commutator(words[i], words[i + 1]) for i in range(0, len(words), 2)]
    return GroupWord(2**d, words[0])


_TOKEN = re.compile(r"\s*(x\d+|\d+|\^|'|\(|\)|,|\*|-)")


def _tokenize(text: str) -> list[str]:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise WordSyntaxError(f"unexpected character at {pos}: {text[pos:pos + 5]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens: list[str]):
        self.tokens = tokens
        self.i = 0
        self.max_var = -1

    def peek(self) -> str | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise WordSyntaxError(f"expected {expected or 'a token'} but found {tok!r}")
        self.i += 1
        return tok

    def word(self) -> Letters:
        letters = self.term()
        while True:
            tok = self.peek()
            if tok == "*":
                self.take()
                letters = letters + self.term()
            elif tok is not None and (tok.startswith("x") or tok == "(" or tok == "1"):
                letters = letters + self.term()
            else:
                return free_reduce(letters)

    def term(self) -> Letters:
        letters = self.atom()
        while self.peek() in ("'", "^"):
            if self.take() == "'":
                letters = _inverse(letters)
            else:
                sign = -1 if self.peek() == "-" else 1
                if sign < 0:
                    self.take()
                tok = self.take()
                if not tok.isdigit():
                    raise WordSyntaxError(f"exponent must be an integer, got {tok!r}")
                letters = _power(letters, sign * int(tok))
        return letters

    def atom(self) -> Letters:
        tok = self.take()
        if tok.startswith("x"):
            v = int(tok[1:]) - 1
            if v < 0:
                raise WordSyntaxError("variables are numbered from x1")
            self.max_var = max(self.max_var, v)
            return ((v, 1),)
        if tok == "1":
            return ()
        if tok == "(":
            parts = [self.word()]
            while self.peek() == ",":
                self.take()
                parts.append(self.word())
            self.take(")")
            acc = parts[0]
            for b in parts[1:]:
                acc = _commutator(acc, b)
            return acc
        raise WordSyntaxError(f"unexpected token {tok!r}")


def parse_word(text: str, arity: int | None = None) -> GroupWord:
    tokens = _tokenize(text)
    if not tokens:
        raise WordSyntaxError("empty word")
    parser = _Parser(tokens)
    letters = parser.word()
    if parser.peek() is not None:
        raise WordSyntaxError(f"trailing input at token {parser.peek()!r}")
    k = parser.max_var + 1
    if arity is not None:
        if arity < k:
            raise WordSyntaxError(f"word uses x{k} but arity is {arity}")
        k = arity
    return GroupWord(k, letters)
