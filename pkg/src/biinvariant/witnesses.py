"""Exact models in which bounded-cyclic-subgroup identities can be checked.

* lamplighter ``Z wr Z``: ``t`` shifts, and ``t f t^-1`` is ``i -> f(i+1)``;
* Heisenberg group of upper unitriangular integer matrices;
* affine maps ``x -> s x + c`` over the rationals, carrying
  ``BS(p, q) = <a, t | t a^p t^-1 = a^q>`` via ``t: x -> (q/p) x``,
  ``a: x -> x + 1``.

Commutators are ``[x, y] = x y x^-1 y^-1`` throughout.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, TypeVar

G = TypeVar("G")


def commutator(x, y):
    return x * y * x.inverse() * y.inverse()


def power(x: G, n: int, identity: G) -> G:
    if n < 0:
        x, n = x.inverse(), -n
    result = identity
    while n:
        if n & 1:
            result = result * x
        x = x * x
        n >>= 1
    return result


# --- lamplighter --------------------------------------------------------------


@dataclass(frozen=True)
class LampSequence:
    """Integer sequence equal to 0 for ``i < start`` and to ``tail`` from
    ``start + len(values)`` on; ``values`` covers the window in between.

    Finitely supported sequences are those with ``tail == 0``; the eventually
    constant ones are needed for prefix-sum witnesses.
    """

    start: int = 0
    values: tuple[int, ...] = ()
    tail: int = 0

    @classmethod
    def from_dict(cls, f: Mapping[int, int], tail: int = 0) -> "LampSequence":
        keys = [i for i, v in f.items() if v]
        if not keys:
            return cls(0, (), tail).normalized()
        lo, hi = min(keys), max(keys)
        return cls(lo, tuple(f.get(i, 0) for i in range(lo, hi + 1)), tail).normalized()

    def __call__(self, i: int) -> int:
        if i < self.start:
            return 0
        k = i - self.start
        return self.values[k] if k < len(self.values) else self.tail

    @property
    def end(self) -> int:
        return self.start + len(self.values)

    def normalized(self) -> "LampSequence":
        """Canonical form: no leading zeros, no trailing copies of ``tail``."""
        vals = list(self.values)
        while vals and vals[-1] == self.tail:
            vals.pop()
        lead = 0
        while lead < len(vals) and vals[lead] == 0:
            lead += 1
        start = self.start + lead
        if not vals[lead:] and self.tail == 0:
            start = 0
        return LampSequence(start, tuple(vals[lead:]), self.tail)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LampSequence):
            return NotImplemented
        a, b = self.normalized(), other.normalized()
        return (a.start, a.values, a.tail) == (b.start, b.values, b.tail)

    def __hash__(self) -> int:
        n = self.normalized()
        return hash((n.start, n.values, n.tail))

    def __add__(self, other: "LampSequence") -> "LampSequence":
        lo = min(self.start, other.start)
        hi = max(self.end, other.end)
        vals = tuple(self(i) + other(i) for i in range(lo, hi))
        return LampSequence(lo, vals, self.tail + other.tail).normalized()

    def __neg__(self) -> "LampSequence":
        return LampSequence(self.start, tuple(-v for v in self.values), -self.tail)

    def __sub__(self, other: "LampSequence") -> "LampSequence":
        return self + (-other)

    def shifted(self, s: int) -> "LampSequence":
        """``i -> f(i + s)``."""
        return LampSequence(self.start - s, self.values, self.tail)

    def support_bounds(self) -> tuple[int, int] | None:
        n = self.normalized()
        if not n.values and n.tail == 0:
            return None
        return n.start, n.end

    @property
    def finitely_supported(self) -> bool:
        return self.tail == 0

    def as_dict(self) -> dict[int, int]:
        if self.tail:
            raise ValueError("sequence is not finitely supported")
        return {i: v for i, v in zip(range(self.start, self.end), self.values) if v}


ZERO_LAMPS = LampSequence()


@dataclass(frozen=True, eq=False)
class LamplighterElement:
    shift: int = 0
    lamps: LampSequence = ZERO_LAMPS

    def __mul__(self, other: "LamplighterElement") -> "LamplighterElement":
        return LamplighterElement(self.shift + other.shift, self.lamps + other.lamps.shifted(self.shift))

    def inverse(self) -> "LamplighterElement":
        return LamplighterElement(-self.shift, (-self.lamps).shifted(-self.shift))

    def __eq__(self, other) -> bool:
        if not isinstance(other, LamplighterElement):
            return NotImplemented
        return self.shift == other.shift and self.lamps == other.lamps

    def __hash__(self) -> int:
        return hash((self.shift, self.lamps))


LAMP_IDENTITY = LamplighterElement()
LAMP_T = LamplighterElement(1, ZERO_LAMPS)
LAMP_X = LamplighterElement(0, LampSequence(0, (1,)))


def lamps(f: Mapping[int, int] | LampSequence) -> LamplighterElement:
    if isinstance(f, LampSequence):
        return LamplighterElement(0, f)
    return LamplighterElement(0, LampSequence.from_dict(f))


def lamplighter_identity_check(n: int) -> bool:
    """``[x, t]^n == [x^n, t]`` with ``x`` one lamp at 0 and ``t`` the shift."""
    if n < 1:
        raise ValueError("n must be positive")
    lhs = power(commutator(LAMP_X, LAMP_T), n, LAMP_IDENTITY)
    rhs = commutator(power(LAMP_X, n, LAMP_IDENTITY), LAMP_T)
    return lhs == rhs


def lamplighter_relation_holds() -> bool:
    """``[x, t x t^-1] = 1`` in the model."""
    tx = LAMP_T * LAMP_X * LAMP_T.inverse()
    return commutator(LAMP_X, tx) == LAMP_IDENTITY


def lamplighter_commutator_witness(a: Mapping[int, int] | LampSequence) -> LampSequence:
    """``b`` with ``b(i+1) - b(i) = a(i)``, so that ``a = t b t^-1 b^-1``.

    ``b(i)`` is the sum of ``a(j)`` over ``j < i``; it vanishes below the
    support of ``a`` and is eventually constant above it (finitely supported
    exactly when the entries of ``a`` sum to zero).
    """
    if not isinstance(a, LampSequence):
        a = LampSequence.from_dict(a)
    if not a.finitely_supported:
        raise ValueError("a must be finitely supported")
    bounds = a.support_bounds()
    if bounds is None:
        b = ZERO_LAMPS
    else:
        lo, hi = bounds
        acc, vals = 0, []
        for i in range(lo, hi + 1):
            vals.append(acc)
            acc += a(i)
        b = LampSequence(lo, tuple(vals), acc).normalized()
    lhs = lamps(a)
    rhs = commutator(LAMP_T, lamps(b))
    if lhs != rhs:  # pragma: no cover - construction guarantees equality
        raise AssertionError("prefix-sum witness failed the commutator identity")
    return b


# --- Heisenberg ---------------------------------------------------------------


@dataclass(frozen=True)
class HeisenbergElement:
    """Matrix ``[[1, a, c], [0, 1, b], [0, 0, 1]]``."""

    a: int = 0
    b: int = 0
    c: int = 0

    def __mul__(self, o: "HeisenbergElement") -> "HeisenbergElement":
        return HeisenbergElement(self.a + o.a, self.b + o.b, self.c + o.c + self.a * o.b)

    def inverse(self) -> "HeisenbergElement":
        return HeisenbergElement(-self.a, -self.b, self.a * self.b - self.c)

    def matrix(self) -> list[list[int]]:
        return [[1, self.a, self.c], [0, 1, self.b], [0, 0, 1]]


HEIS_IDENTITY = HeisenbergElement()
HEIS_X = HeisenbergElement(1, 0, 0)
HEIS_Y = HeisenbergElement(0, 1, 0)


def heisenberg_identity_check(n: int) -> bool:
    """``z^n == [x^n, y]`` where ``z = [x, y]`` is central."""
    if n < 1:
        raise ValueError("n must be positive")
    z = commutator(HEIS_X, HEIS_Y)
    return power(z, n, HEIS_IDENTITY) == commutator(power(HEIS_X, n, HEIS_IDENTITY), HEIS_Y)


# --- affine model of Baumslag-Solitar ----------------------------------------


@dataclass(frozen=True)
class AffineMap:
    """``x -> scale * x + offset``; ``f * g`` is ``f`` after ``g``."""

    scale: Fraction = Fraction(1)
    offset: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "scale", Fraction(self.scale))
        object.__setattr__(self, "offset", Fraction(self.offset))
        if self.scale == 0:
            raise ValueError("scale must be nonzero")

    def __mul__(self, o: "AffineMap") -> "AffineMap":
        return AffineMap(self.scale * o.scale, self.scale * o.offset + self.offset)

    def inverse(self) -> "AffineMap":
        return AffineMap(1 / self.scale, -self.offset / self.scale)

    def __call__(self, x):
        return self.scale * x + self.offset


AFFINE_IDENTITY = AffineMap()


@dataclass
class BSReport:
    p: int
    q: int
    relation_holds: bool
    commutator_exponent: int | None
    ok: bool


def translation_exponent(f: AffineMap) -> int | None:
    """``m`` if ``f`` is ``a^m`` (translation by an integer), else None."""
    if f.scale != 1 or f.offset.denominator != 1:
        return None
    return int(f.offset)


def bs_affine_check(p: int, q: int) -> BSReport:
    """Check ``t a^p t^-1 = a^q`` and find ``m`` with ``[t, a^p] = a^m``."""
    if p < 1 or q < 1:
        raise ValueError("p and q must be positive")
    t = AffineMap(Fraction(q, p), 0)
    a = AffineMap(1, 1)
    ap = power(a, p, AFFINE_IDENTITY)
    relation = t * ap * t.inverse() == power(a, q, AFFINE_IDENTITY)
    m = translation_exponent(commutator(t, ap))
    ok = relation and m is not None and commutator(t, ap) == power(a, m, AFFINE_IDENTITY)
    return BSReport(p, q, relation, m, ok)


def random_lamplighter(rng: random.Random, width: int = 5, size: int = 5) -> LamplighterElement:
    f = {rng.randint(-width, width): rng.randint(-size, size) for _ in range(rng.randint(0, 4))}
    return LamplighterElement(rng.randint(-width, width), LampSequence.from_dict(f))


def random_heisenberg(rng: random.Random, size: int = 20) -> HeisenbergElement:
    return HeisenbergElement(*(rng.randint(-size, size) for _ in range(3)))


def random_affine(rng: random.Random, size: int = 9) -> AffineMap:
    num = rng.choice([i for i in range(-size, size + 1) if i])
    return AffineMap(Fraction(num, rng.randint(1, size)), Fraction(rng.randint(-size, size), rng.randint(1, size)))


SAMPLERS: dict[str, tuple[Callable, object]] = {
    "lamplighter": (random_lamplighter, LAMP_IDENTITY),
    "heisenberg": (random_heisenberg, HEIS_IDENTITY),
    "affine": (random_affine, AFFINE_IDENTITY),
}
