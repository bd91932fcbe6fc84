"""Signed-letter words over a finite alphabet.

Text format: a lowercase name is a generator, the uppercase name its
inverse.  Words are stored exactly as written; reduction is explicit.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np


class UnknownSymbol(ValueError):
    def __init__(self, position: int, symbol: str = ""):
        super().__init__(f"unknown symbol {symbol!r} at position {position}")
        self.position = position
        self.symbol = symbol


class AlphabetMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Alphabet:
    names: str

    def __post_init__(self):
        if len(self.names) < 1:
            raise ValueError("alphabet needs at least one generator")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"repeated generator names in {self.names!r}")
        if not all(c.isalpha() and c.islower() for c in self.names):
            raise ValueError(f"generator names must be lowercase letters: {self.names!r}")

    @property
    def rank(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)


class Letter(NamedTuple):
    gen: int
    sign: int = 1

    def inverse(self) -> "Letter":
        return Letter(self.gen, -self.sign)

    @property
    def code(self) -> int:
        # 2*gen for x, 2*gen+1 for x^-1; inverse is code ^ 1
        return 2 * self.gen + (self.sign < 0)

    @classmethod
    def from_code(cls, code: int) -> "Letter":
        return cls(code >> 1, -1 if code & 1 else 1)


@dataclass(frozen=True)
class Word:
    letters: tuple[Letter, ...]
    alphabet: Alphabet

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self.letters[item], self.alphabet)
        return self.letters[item]

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"

    def __mul__(self, other: "Word") -> "Word":
        return concat(self, other)

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return Word(invert(self).letters * -n, self.alphabet)
        return Word(self.letters * n, self.alphabet)

    def codes(self) -> np.ndarray:
        """Letters as an int32 array of codes (see ``Letter.code``)."""
        return np.fromiter((l.code for l in self.letters), dtype=np.int32, count=len(self.letters))

    def exponent_sums(self) -> list[int]:
        sums = [0] * self.alphabet.rank
        for l in self.letters:
            sums[l.gen] += l.sign
        return sums


def make_word(letters: Iterable[Letter], alphabet: Alphabet) -> Word:
    return Word(tuple(letters), alphabet)


def parse_word(text: str, alphabet: Alphabet | str) -> Word:
    if isinstance(alphabet, str):
        alphabet = Alphabet(alphabet)
    letters = []
    for pos, ch in enumerate(text):
        if ch.isspace():
            continue
        lower = ch.lower()
        if lower not in alphabet.names:
            raise UnknownSymbol(pos, ch)
        letters.append(Letter(alphabet.index(lower), 1 if ch.islower() else -1))
    return Word(tuple(letters), alphabet)


def format_word(w: Word) -> str:
    names = w.alphabet.names
    return "".join(names[l.gen] if l.sign > 0 else names[l.gen].upper() for l in w.letters)


def free_reduce(w: Word) -> Word:
    stack: list[Letter] = []
    for l in w.letters:
        if stack and stack[-1].gen == l.gen and stack[-1].sign == -l.sign:
            stack.pop()
        else:
            stack.append(l)
    return Word(tuple(stack), w.alphabet)


def is_freely_trivial(w: Word) -> bool:
    return len(free_reduce(w)) == 0


def invert(w: Word) -> Word:
    return Word(tuple(l.inverse() for l in reversed(w.letters)), w.alphabet)


def concat(*words: Word) -> Word:
    if not words:
        raise ValueError("concat needs at least one word")
    alphabet = words[0].alphabet
    for w in words[1:]:
        if w.alphabet != alphabet:
            raise AlphabetMismatch(f"{alphabet.names!r} vs {w.alphabet.names!r}")
    return Word(tuple(l for w in words for l in w.letters), alphabet)


def cyclic_reduce(w: Word) -> tuple[Word, Word]:
    """Split ``w`` as conjugator * core * conjugator^-1 (freely).

    The core is cyclically reduced.
    """
    r = free_reduce(w).letters
    i, j = 0, len(r) - 1
    while i < j and r[i].gen == r[j].gen and r[i].sign == -r[j].sign:
        i += 1
        j -= 1
    return Word(r[i:j + 1], w.alphabet), Word(r[:i], w.alphabet)


def is_cyclically_reduced(w: Word) -> bool:
    if len(free_reduce(w)) != len(w):
        return False
    return len(w) < 2 or w.letters[0] != w.letters[-1].inverse()


def random_word(length: int, alphabet: Alphabet | str, seed: int, reduced: bool = True) -> Word:
    if isinstance(alphabet, str):
        alphabet = Alphabet(alphabet)
    rng = random.Random(seed)
    all_letters = [Letter(g, s) for g in range(alphabet.rank) for s in (1, -1)]
    letters: list[Letter] = []
    for _ in range(length):
        if reduced and letters:
            bad = letters[-1].inverse()
            choices = [l for l in all_letters if l != bad]
        else:
            choices = all_letters
        letters.append(rng.choice(choices))
    return Word(tuple(letters), alphabet)


def empty_word(alphabet: Alphabet | str) -> Word:
    if isinstance(alphabet, str):
        alphabet = Alphabet(alphabet)
    return Word((), alphabet)
