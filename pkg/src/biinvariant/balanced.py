"""Right-angled Artin and Coxeter groups given by a commutation graph.

All defining relations (``st = ts`` for edges, plus ``s = s^-1`` in the
Coxeter case) are balanced, so the cancelation length of a word depends
only on the group element it represents.  The search here is exponential;
it is meant for words of a couple dozen letters.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Sequence

from .freenorm import TooLarge
from .words import Alphabet, Letter, Word, parse_word

SEARCH_LENGTH_LIMIT = 24
DEFAULT_BUDGET = 2_000_000


class Kind(str, Enum):
    ARTIN = "artin"
    COXETER = "coxeter"


class BudgetExceeded(RuntimeError):
    pass


class LettersOutsideSubset(ValueError):
    pass


@dataclass(frozen=True)
class GraphPresentation:
    vertices: tuple[str, ...]
    edges: frozenset[frozenset[str]]
    kind: Kind = Kind.ARTIN
    _commute: tuple[tuple[bool, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "kind", Kind(self.kind))
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("vertex names must be distinct")
        edges = set()
        for e in self.edges:
            e = frozenset(e)
            if len(e) != 2:
                raise ValueError(f"loop or malformed edge {sorted(e)}")
            if not e <= set(self.vertices):
                raise ValueError(f"edge {sorted(e)} uses an unknown vertex")
            edges.add(e)
        object.__setattr__(self, "edges", frozenset(edges))
        idx = {v: i for i, v in enumerate(self.vertices)}
        m = [[False] * len(self.vertices) for _ in self.vertices]
        for e in edges:
            u, v = (idx[x] for x in e)
            m[u][v] = m[v][u] = True
        object.__setattr__(self, "_commute", tuple(map(tuple, m)))

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet("".join(self.vertices))

    def commute(self, g: int, h: int) -> bool:
        """Whether distinct generators ``g`` and ``h`` are joined by an edge."""
        return self._commute[g][h]

    def induced(self, sub: Iterable[str]) -> "GraphPresentation":
        keep = [v for v in self.vertices if v in set(sub)]
        return GraphPresentation(
            tuple(keep), frozenset(e for e in self.edges if e <= set(keep)), self.kind
        )

    def word(self, w: Word | str) -> Word:
        """Coerce ``w`` into this presentation's alphabet, normalized for the kind."""
        if isinstance(w, str):
            w = parse_word(w, self.alphabet)
        elif w.alphabet != self.alphabet:
            w = parse_word(str(w), self.alphabet)
        if self.kind is Kind.COXETER:
            w = Word(tuple(Letter(l.gen, 1) for l in w.letters), w.alphabet)
        return w


def path_graph(names: str, kind: Kind | str = Kind.ARTIN) -> GraphPresentation:
    return GraphPresentation(
        tuple(names), frozenset(frozenset(p) for p in zip(names, names[1:])), Kind(kind)
    )


def complete_graph(names: str, kind: Kind | str = Kind.ARTIN) -> GraphPresentation:
    return GraphPresentation(
        tuple(names),
        frozenset(frozenset((u, v)) for i, u in enumerate(names) for v in names[i + 1:]),
        Kind(kind),
    )


def parse_graph(text: str, kind: Kind | str = Kind.ARTIN) -> GraphPresentation:
    """Read either the two-line text format or its JSON equivalent.

    Text::

        vertices: a b c
        edges: a-b b-c

    JSON: ``{"vertices": [...], "edges": [["a","b"], ...], "kind": "artin"}``;
    a ``kind`` field in the JSON wins over the argument.
    """
    stripped = text.strip()
    if stripped.startswith("{"):
        data = json.loads(stripped)
        edges = [e.split("-") if isinstance(e, str) else e for e in data.get("edges", [])]
        return GraphPresentation(
            tuple(data["vertices"]),
            frozenset(frozenset(e) for e in edges),
            Kind(data.get("kind", kind)),
        )
    fields = {}
    for line in stripped.splitlines():
        if not line.strip():
            continue
        key, _, rest = line.partition(":")
        fields[key.strip().lower()] = rest.split()
    if "vertices" not in fields:
        raise ValueError("graph text needs a 'vertices:' line")
    edges = []
    for tok in fields.get("edges", []):
        parts = tok.split("-")
        if len(parts) != 2:
            raise ValueError(f"bad edge token {tok!r}")
        edges.append(frozenset(parts))
    return GraphPresentation(tuple(fields["vertices"]), frozenset(edges), Kind(kind))


def load_graph(path: str | Path, kind: Kind | str = Kind.ARTIN) -> GraphPresentation:
    return parse_graph(Path(path).read_text(), kind)


# --- normal forms on letter codes (2*gen + inverted) ---------------------------


def _cancels(p: GraphPresentation, d: int, c: int) -> bool:
    return d == c if p.kind is Kind.COXETER else d == c ^ 1


def _append_reduced(p: GraphPresentation, reduced: list[int], c: int) -> None:
    # cancel c against the last letter of its vertex if everything after it commutes
    g = c >> 1
    for k in range(len(reduced) - 1, -1, -1):
        d = reduced[k]
        if d >> 1 == g:
            if _cancels(p, d, c):
                del reduced[k]
                return
            break
        if not p.commute(d >> 1, g):
            break
    reduced.append(c)


def _shortlex(p: GraphPresentation, reduced: Sequence[int]) -> tuple[int, ...]:
    rest = list(reduced)
    out = []
    while rest:
        best = None
        for i, c in enumerate(rest):
            if best is not None and c >= rest[best]:
                continue
            g = c >> 1
            if all(d >> 1 != g and p.commute(d >> 1, g) for d in rest[:i]):
                best = i
        out.append(rest.pop(best))
    return tuple(out)


def _normal_codes(p: GraphPresentation, codes: Iterable[int]) -> tuple[int, ...]:
    reduced: list[int] = []
    for c in codes:
        _append_reduced(p, reduced, c)
    return _shortlex(p, reduced)


def _codes(w: Word) -> list[int]:
    return [l.code for l in w.letters]


def _from_codes(codes: Iterable[int], alphabet: Alphabet) -> Word:
    return Word(tuple(Letter.from_code(c) for c in codes), alphabet)


def normal_form(p: GraphPresentation, w: Word | str) -> Word:
    """Shortlex-least reduced word for the element ``w`` represents."""
    w = p.word(w)
    return _from_codes(_normal_codes(p, _codes(w)), w.alphabet)


def is_trivial(p: GraphPresentation, w: Word | str) -> bool:
    return len(normal_form(p, w)) == 0


def group_inverse(p: GraphPresentation, w: Word | str) -> Word:
    w = p.word(w)
    out = Word(tuple(l.inverse() for l in reversed(w.letters)), w.alphabet)
    return p.word(out)


def same_element(p: GraphPresentation, u: Word | str, v: Word | str) -> bool:
    return normal_form(p, u) == normal_form(p, v)


# --- cancelation length -------------------------------------------------------


class _Search:
    def __init__(self, p: GraphPresentation, codes: list[int], budget: int):
        self.p = p
        self.codes = codes
        self.budget = budget
        self.nodes = 0
        self.failed: dict[tuple[int, tuple[int, ...]], int] = {}
        rank = len(p.vertices)
        n = len(codes)
        # exponent vector (Artin) or parity vector (Coxeter) of each suffix
        self.suffix = [[0] * rank for _ in range(n + 1)]
        for pos in range(n - 1, -1, -1):
            vec = list(self.suffix[pos + 1])
            g = codes[pos] >> 1
            vec[g] += -1 if codes[pos] & 1 else 1
            self.suffix[pos] = vec
        self.coxeter = p.kind is Kind.COXETER

    def lower_bound(self, pos: int, vec: Sequence[int]) -> int:
        # each deleted letter moves one abelianization coordinate by one
        suf = self.suffix[pos]
        if self.coxeter:
            return sum((a + b) % 2 for a, b in zip(vec, suf))
        return sum(abs(a + b) for a, b in zip(vec, suf))

    def dfs(self, pos: int, nf: tuple[int, ...], vec: tuple[int, ...], remaining: int,
            deleted: list[int]) -> bool:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(f"search exceeded {self.budget} nodes")
        n = len(self.codes)
        if pos == n:
            return not nf
        if len(nf) > n - pos or self.lower_bound(pos, vec) > remaining:
            return False
        key = (pos, nf)
        if self.failed.get(key, -1) >= remaining:
            return False
        c = self.codes[pos]
        reduced = list(nf)
        _append_reduced(self.p, reduced, c)
        vec2 = list(vec)
        vec2[c >> 1] += -1 if c & 1 else 1
        if self.dfs(pos + 1, _shortlex(self.p, reduced), tuple(vec2), remaining, deleted):
            return True
        if remaining > 0:
            deleted.append(pos)
            if self.dfs(pos + 1, nf, vec, remaining - 1, deleted):
                return True
            deleted.pop()
        self.failed[key] = remaining
        return False


def cancelation_search(p: GraphPresentation, w: Word | str, budget: int | None = None
                       ) -> tuple[int, list[int]]:
    """Cancelation length of ``w`` and the deleted positions realizing it.

    Iterative deepening on the number of deletions, memoizing failed
    (position, survivor normal form) states and pruning with the
    abelianization bound.
    """
    w = p.word(w)
    if budget is None:
        if len(w) > SEARCH_LENGTH_LIMIT:
            raise TooLarge(
                f"word of length {len(w)} exceeds search limit {SEARCH_LENGTH_LIMIT}; pass a budget"
            )
        budget = DEFAULT_BUDGET
    codes = _codes(w)
    search = _Search(p, codes, budget)
    zero = (0,) * len(p.vertices)
    k = search.lower_bound(0, zero)
    while True:
        deleted: list[int] = []
        if search.dfs(0, (), zero, k, deleted):
            return len(deleted), deleted
        k += 2


def cancelation_length(p: GraphPresentation, w: Word | str, budget: int | None = None) -> int:
    return cancelation_search(p, w, budget)[0]


# --- balanced rewriting -------------------------------------------------------


def rewrite_moves(p: GraphPresentation, w: Word | str, max_length: int | None = None):
    """All single balanced moves available on ``w``.

    Yields ``("swap", i, None)``, ``("delete", i, None)`` and
    ``("insert", i, code)`` triples.
    """
    w = p.word(w)
    codes = _codes(w)
    n = len(codes)
    for i in range(n - 1):
        a, b = codes[i] >> 1, codes[i + 1] >> 1
        if a != b and p.commute(a, b):
            yield ("swap", i, None)
        if _cancels(p, codes[i], codes[i + 1]):
            yield ("delete", i, None)
    if max_length is None or n + 2 <= max_length:
        signs = (0,) if p.kind is Kind.COXETER else (0, 1)
        for i in range(n + 1):
            for g in range(len(p.vertices)):
                for s in signs:
                    yield ("insert", i, 2 * g + s)


def apply_move(p: GraphPresentation, w: Word | str, move) -> Word:
    w = p.word(w)
    kind, i, code = move
    codes = _codes(w)
    if kind == "swap":
        a, b = codes[i] >> 1, codes[i + 1] >> 1
        if a == b or not p.commute(a, b):
            raise ValueError(f"letters at {i}, {i + 1} do not commute")
        codes[i], codes[i + 1] = codes[i + 1], codes[i]
    elif kind == "delete":
        if not _cancels(p, codes[i], codes[i + 1]):
            raise ValueError(f"letters at {i}, {i + 1} do not cancel")
        del codes[i:i + 2]
    elif kind == "insert":
        partner = code if p.kind is Kind.COXETER else code ^ 1
        codes[i:i] = [code, partner]
    else:
        raise ValueError(f"unknown move {kind!r}")
    return _from_codes(codes, w.alphabet)


def random_balanced_rewrite(p: GraphPresentation, w: Word | str, steps: int, seed: int,
                            max_length: int | None = None) -> Word:
    """Apply ``steps`` random balanced moves; the element is unchanged.

    Each step first picks a move type uniformly among those available
    (swap, delete, insert), then a move of that type uniformly.
    """
    rng = random.Random(seed)
    w = p.word(w)
    for _ in range(steps):
        by_kind: dict[str, list] = {}
        for m in rewrite_moves(p, w, max_length):
            by_kind.setdefault(m[0], []).append(m)
        if not by_kind:
            break
        kind = rng.choice(sorted(by_kind))
        w = apply_move(p, w, rng.choice(by_kind[kind]))
    return w


def parabolic_norm_check(p: GraphPresentation, sub: Iterable[str], w: Word | str,
                         budget: int | None = None) -> tuple[int, int]:
    """Cancelation length of ``w`` in ``p`` and in the parabolic subgroup on ``sub``."""
    sub = set(sub)
    w = p.word(w)
    used = {p.vertices[l.gen] for l in w.letters}
    if not used <= sub:
        raise LettersOutsideSubset(f"letters {sorted(used - sub)} not in {sorted(sub)}")
    q = p.induced(sub)
    return cancelation_length(p, w, budget), cancelation_length(q, q.word(str(w)), budget)


def random_presentation(n_vertices: int, edge_prob: float, kind: Kind | str, seed: int
                        ) -> GraphPresentation:
    rng = random.Random(seed)
    names = "abcdefghijklmnopqrstuvwxyz"[:n_vertices]
    edges = frozenset(
        frozenset((u, v))
        for i, u in enumerate(names) for v in names[i + 1:]
        if rng.random() < edge_prob
    )
    return GraphPresentation(tuple(names), edges, Kind(kind))
