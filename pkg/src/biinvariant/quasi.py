"""Brooks counting quasimorphisms on free groups.

``H_p(w)`` counts overlapping occurrences of a reduced pattern ``p`` in the
reduced form of ``w`` minus occurrences of ``p^-1``.  Homogenization is done
exactly: on a cyclically reduced core ``r`` the increment
``H(r^(N+1)) - H(r^N)`` is constant once ``N`` exceeds the pattern length,
and that constant is the homogeneous value.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .freenorm import cancelation_norm
from .words import Alphabet, Word, concat, cyclic_reduce, free_reduce, invert, parse_word, random_word


class NonStabilized(ArithmeticError):
    pass


class NonpositiveDefect(ValueError):
    pass


@dataclass(frozen=True)
class BrooksQuasimorphism:
    pattern: Word

    def __post_init__(self):
        if len(self.pattern) < 2:
            raise ValueError("pattern must have length at least 2")
        if len(free_reduce(self.pattern)) != len(self.pattern):
            raise ValueError(f"pattern {self.pattern} is not reduced")

    @classmethod
    def from_text(cls, text: str, alphabet: Alphabet | str = "ab") -> "BrooksQuasimorphism":
        return cls(parse_word(text, alphabet))

    @property
    def alphabet(self) -> Alphabet:
        return self.pattern.alphabet

    @property
    def degenerate(self) -> bool:
        """True if the pattern equals its inverse, making the count vanish."""
        return invert(self.pattern).letters == self.pattern.letters

    def __call__(self, w: Word) -> int:
        return brooks_value(self, w)


@dataclass(frozen=True)
class QmEvaluation:
    value: Fraction
    defect_estimate: Fraction
    empirical: bool = True


def count_occurrences(pattern: Word, w: Word) -> int:
    p, s = pattern.letters, w.letters
    m = len(p)
    if m == 0:
        return len(s) + 1
    return sum(1 for i in range(len(s) - m + 1) if s[i:i + m] == p)


def brooks_value(q: BrooksQuasimorphism, w: Word) -> int:
    r = free_reduce(w)
    return count_occurrences(q.pattern, r) - count_occurrences(invert(q.pattern), r)


def _increment(q: BrooksQuasimorphism, core: Word, N: int) -> int:
    return brooks_value(q, core ** (N + 1)) - brooks_value(q, core ** N)


def homogenize(q: BrooksQuasimorphism, g: Word) -> Fraction:
    """Homogeneous value ``lim H(g^n)/n`` as an exact rational."""
    core, _ = cyclic_reduce(g)
    if not len(core):
        return Fraction(0)
    m = len(q.pattern)
    for N in (m + 2, 4 * m):
        d1, d2 = _increment(q, core, N), _increment(q, core, N + 1)
        if d1 == d2:
            return Fraction(d1)
    raise NonStabilized(f"increments of {q.pattern} on powers of {core} did not settle")


def defect_at(q: BrooksQuasimorphism, g: Word, h: Word) -> int:
    return abs(brooks_value(q, concat(g, h)) - brooks_value(q, g) - brooks_value(q, h))


def defect_estimate(q: BrooksQuasimorphism, trials: int, max_len: int, seed: int) -> Fraction:
    """Largest ``|H(gh) - H(g) - H(h)|`` over random reduced pairs.

    This is a lower bound on the true defect.  Each trial draws its words
    from a seed derived from ``seed`` and the trial index.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = random.Random(seed)
    worst = 0
    for _ in range(trials):
        s = rng.getrandbits(63)
        g = random_word(rng.randint(0, max_len), q.alphabet, s, reduced=True)
        h = random_word(rng.randint(0, max_len), q.alphabet, s ^ 0x5DEECE66D, reduced=True)
        worst = max(worst, defect_at(q, g, h))
    return Fraction(worst)


def evaluate(q: BrooksQuasimorphism, g: Word, trials: int = 1000, max_len: int = 20,
             seed: int = 0) -> QmEvaluation:
    return QmEvaluation(homogenize(q, g), defect_estimate(q, trials, max_len, seed))


def dual_family_check(qs: Sequence[BrooksQuasimorphism], gs: Sequence[Word]) -> list[list[Fraction]]:
    if len(qs) != len(gs):
        raise ValueError("need as many elements as quasimorphisms")
    return [[homogenize(q, g) for g in gs] for q in qs]


def is_identity(matrix: Sequence[Sequence[Fraction]]) -> bool:
    return all(v == (1 if i == j else 0) for i, row in enumerate(matrix) for j, v in enumerate(row))


def power_product(gs: Sequence[Word], kvec: Sequence[int]) -> Word:
    """``g_1^k_1 ... g_n^k_n``, freely reduced."""
    if len(gs) != len(kvec):
        raise ValueError("kvec length differs from number of elements")
    return free_reduce(concat(*(g ** k for g, k in zip(gs, kvec))))


def qi_sandwich_check(qs: Sequence[BrooksQuasimorphism], gs: Sequence[Word], kvec: Sequence[int],
                      C, D) -> bool:
    """Whether ``(1/C) sum|k_i| - D <= ||prod g_i^k_i|| <= C sum|k_i|``."""
    if not is_identity(dual_family_check(qs, gs)):
        raise ValueError("quasimorphisms are not dual to the elements")
    C, D = Fraction(C), Fraction(D)
    m = cancelation_norm(power_product(gs, kvec))
    total = sum(abs(k) for k in kvec)
    return total / C - D <= m <= C * total


def sandwich_constants(qs: Sequence[BrooksQuasimorphism], gs: Sequence[Word], defects: Sequence,
                       lipschitz: Sequence | None = None) -> tuple[Fraction, Fraction]:
    """Constants ``(C, D)`` assembled as in the ℤ^n embedding argument.

    ``C = max(max ||g_i||, n c_1, ..., n c_n)`` and ``D = C n sum d_i`` where
    ``c_i`` are Lipschitz constants (default 1) and ``d_i`` defects.
    """
    n = len(gs)
    lipschitz = [Fraction(1)] * n if lipschitz is None else [Fraction(c) for c in lipschitz]
    c = max(cancelation_norm(free_reduce(g)) for g in gs)
    C = Fraction(max([c] + [n * ci for ci in lipschitz]))
    D = C * n * sum(Fraction(d) for d in defects)
    return C, D


def norm_lower_bound(q_value, defect) -> Fraction:
    """``1 + |q(g)|/D``: bounds ``||g||`` below when ``D`` bounds the defect.

    Valid for quasimorphisms vanishing on generators: a product of ``k``
    conjugates of generators has ``|q| <= (k - 1) D``.
    """
    defect = Fraction(defect)
    if defect <= 0:
        raise NonpositiveDefect(f"defect must be positive, got {defect}")
    return 1 + abs(Fraction(q_value)) / defect


DEFAULT_PATTERNS = ("ab", "aB")
DEFAULT_ELEMENTS = ("ab", "aB")


def default_dual_family(alphabet: Alphabet | str = "ab"):
    qs = [BrooksQuasimorphism.from_text(t, alphabet) for t in DEFAULT_PATTERNS]
    gs = [parse_word(t, alphabet) for t in DEFAULT_ELEMENTS]
    return qs, gs
