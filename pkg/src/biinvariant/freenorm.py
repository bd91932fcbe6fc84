"""Cancelation norm on free groups.

The norm of a word is the least number of letters whose deletion leaves a
freely trivial word; it coincides with the conjugation-invariant word norm
of the element.  ``cancelation_norm`` fills a triangular table of the norms
of all contiguous subwords, peeling the first letter ``x`` of each subword
``x w``:

    ||x w|| = min(1 + ||w||, min over w = u x^-1 v of ||u|| + ||v||)

which costs O(n^3) time and O(n^2) memory.  ``brute_force_norm`` is an
exhaustive oracle used to check it.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Sequence

import numba
import numpy as np

from .words import Word, concat, free_reduce, invert, is_freely_trivial

BRUTE_FORCE_LIMIT = 20
_NO_MATCH = 1 << 40


class TooLarge(ValueError):
    pass


@numba.njit(cache=True, nogil=True)
def _row_offsets(n):
    # row i holds subwords starting at i, indexed by length-1 (n - i cells)
    off = np.empty(n + 1, dtype=np.int64)
    acc = 0
    for i in range(n + 1):
        off[i] = acc
        acc += n - i
    return off


@numba.njit(cache=True, nogil=True)
def _fill_table(codes, table, off):
    # Column-major sweep: for each end j, starts i descend, so every proper
    # subword is filled first.  col[p] caches ||w[p..j]|| and rows are read
    # contiguously; the match test is branchless (random words mispredict).
    n = codes.shape[0]
    col = np.zeros(n + 2, dtype=np.int64)
    for j in range(n):
        col[j + 1] = 0
        col[j] = 1
        table[off[j]] = 1
        for i in range(j - 1, -1, -1):
            best = 1 + col[i + 1]
            target = codes[i] ^ 1
            if codes[i + 1] == target:
                best = min(best, col[i + 2])
            base = off[i + 1] - (i + 1)
            for p in range(i + 2, j + 1):
                v = np.int64(table[base + p - 1]) + col[p + 1]
                if codes[p] != target:
                    v = _NO_MATCH
                best = min(best, v)
            col[i] = best
            table[off[i] + j - i] = best


def _cell_dtype(n: int):
    return np.uint16 if n < 2**16 else np.uint32


@dataclass(frozen=True)
class NormTable:
    """Norms of all contiguous subwords ``w[i..j]`` (inclusive bounds)."""

    n: int
    data: np.ndarray
    offsets: np.ndarray

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if j < i:
            return 0
        if not (0 <= i <= j < self.n):
            raise IndexError(ij)
        return int(self.data[self.offsets[i] + j - i])

    def cells(self) -> Iterator[tuple[int, int, int]]:
        for i in range(self.n):
            for j in range(i, self.n):
                yield i, j, self[i, j]

    @property
    def ncells(self) -> int:
        return int(self.data.size)

    @property
    def nbytes(self) -> int:
        return int(self.data.nbytes)

    @property
    def norm(self) -> int:
        return self[0, self.n - 1] if self.n else 0


def norm_table(w: Word) -> NormTable:
    n = len(w)
    off = _row_offsets(n)
    data = np.zeros(n * (n + 1) // 2, dtype=_cell_dtype(n))
    if n:
        _fill_table(w.codes(), data, off)
    return NormTable(n, data, off)


def cancelation_norm(w: Word) -> int:
    return norm_table(w).norm


def trivializing_sequence(w: Word) -> list[int]:
    """Positions of a minimal set of letters whose deletion trivializes ``w``.

    Backtracks through the norm table, preferring to delete the first letter
    and otherwise the smallest cancelling partner.
    """
    table = norm_table(w)
    codes = w.codes()
    deleted: list[int] = []
    stack = [(0, table.n - 1)]
    while stack:
        i, j = stack.pop()
        if j < i:
            continue
        target = table[i, j]
        if target == 1 + table[i + 1, j]:
            deleted.append(i)
            stack.append((i + 1, j))
            continue
        inv = codes[i] ^ 1
        for p in range(i + 1, j + 1):
            if codes[p] == inv and table[i + 1, p - 1] + table[p + 1, j] == target:
                stack.append((p + 1, j))
                stack.append((i + 1, p - 1))
                break
        else:  # pragma: no cover - table is internally consistent
            raise AssertionError(f"no backtrack branch at ({i}, {j})")
    deleted.sort()
    drop = set(deleted)
    survivor = Word(tuple(l for k, l in enumerate(w.letters) if k not in drop), w.alphabet)
    if len(deleted) != table.norm or not is_freely_trivial(survivor):
        raise AssertionError("trivializing sequence failed validation")
    return deleted


@numba.njit(cache=True, nogil=True)
def _survivor_trivial(codes, keep, stack):
    top = 0
    for p in range(codes.shape[0]):
        if not keep[p]:
            continue
        c = codes[p]
        if top > 0 and stack[top - 1] == (c ^ 1):
            top -= 1
        else:
            stack[top] = c
            top += 1
    return top == 0


@numba.njit(cache=True, nogil=True)
def _brute_force(codes):
    n = codes.shape[0]
    keep = np.ones(n, dtype=np.bool_)
    stack = np.empty(n, dtype=np.int32)
    idx = np.empty(n, dtype=np.int64)
    for k in range(n % 2, n + 1, 2):
        # lexicographic k-subsets of range(n)
        for t in range(k):
            idx[t] = t
        while True:
            keep[:] = True
            for t in range(k):
                keep[idx[t]] = False
            if _survivor_trivial(codes, keep, stack):
                return k
            t = k - 1
            while t >= 0 and idx[t] == n - k + t:
                t -= 1
            if t < 0:
                break
            idx[t] += 1
            for s in range(t + 1, k):
                idx[s] = idx[s - 1] + 1
    return n


def brute_force_norm(w: Word, force: bool = False) -> int:
    """Least deletion count making ``w`` freely trivial, by exhaustive search."""
    if len(w) > BRUTE_FORCE_LIMIT and not force:
        raise TooLarge(f"word of length {len(w)} exceeds brute-force limit {BRUTE_FORCE_LIMIT}")
    return int(_brute_force(w.codes()))


def biinvariant_distance(g: Word, h: Word) -> int:
    # reduction does not change the norm and keeps the table small
    return cancelation_norm(free_reduce(concat(g, invert(h))))


def distortion_profile(g: Word, N: int, jobs: int = 1) -> list[int]:
    """``[||g||, ||g^2||, ..., ||g^N||]``."""
    if N < 1:
        raise ValueError("N must be positive")
    powers = [free_reduce(g ** n) for n in range(1, N + 1)]
    if jobs > 1:
        with ThreadPoolExecutor(jobs) as pool:
            return list(pool.map(cancelation_norm, powers))
    return [cancelation_norm(p) for p in powers]


def norms(words: Sequence[Word], jobs: int = 1) -> list[int]:
    if jobs > 1:
        with ThreadPoolExecutor(jobs) as pool:
            return list(pool.map(cancelation_norm, words))
    return [cancelation_norm(w) for w in words]
