"""Isometric embeddings of cube vertex sets and trees into F_2 = <a, b>.

Stage ``i`` adds the conjugator ``g_i = b^(4k) a b^(-4k)`` with ``k`` one more
than the longest reduced image of stage ``i - 1``; a vertex with coordinates
``i_1 > ... > i_m`` maps to ``g_(i_1) ... g_(i_m)``.  Trees embed in the cube
by giving every edge its own coordinate.
"""

from __future__ import annotations

from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Hashable, Iterable, Mapping

from .freenorm import biinvariant_distance
from .words import Alphabet, Letter, Word, concat, empty_word, free_reduce

F2 = Alphabet("ab")
MAX_DIM = 4
EXACT_VERIFY_DIM = 3
EXACT_TREE_EDGES = 3


class DimTooLarge(ValueError):
    pass


class CoordOutOfRange(ValueError):
    pass


class NotATree(ValueError):
    pass


CubeVertex = frozenset  # coordinates set to 1


def l1(v: frozenset, w: frozenset) -> int:
    return len(v ^ w)


def conjugator(k: int) -> Word:
    """``b^(4k) a b^(-4k)``."""
    b, B = Letter(1, 1), Letter(1, -1)
    return Word((b,) * (4 * k) + (Letter(0, 1),) + (B,) * (4 * k), F2)


@dataclass(frozen=True)
class CubeEmbedding:
    conjugators: tuple[Word, ...]
    k_values: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.conjugators)

    def vertices(self) -> list[frozenset]:
        return [frozenset(c) for r in range(self.dim + 1) for c in combinations(range(self.dim), r)]

    def restrict(self, dim: int) -> "CubeEmbedding":
        return CubeEmbedding(self.conjugators[:dim], self.k_values[:dim])


def embed_vertex(e: CubeEmbedding, v: Iterable[int]) -> Word:
    coords = sorted(set(v), reverse=True)
    for c in coords:
        if not 0 <= c < e.dim:
            raise CoordOutOfRange(f"coordinate {c} outside dimension {e.dim}")
    if not coords:
        return empty_word(F2)
    return concat(*(e.conjugators[c] for c in coords))


def build_cube_embedding(dim: int) -> CubeEmbedding:
    if dim < 0:
        raise ValueError("dimension must be nonnegative")
    if dim > MAX_DIM:
        raise DimTooLarge(f"dimension {dim} > {MAX_DIM}")
    e = CubeEmbedding((), ())
    for _ in range(dim):
        longest = max(len(free_reduce(embed_vertex(e, v))) for v in e.vertices())
        k = longest + 1
        e = CubeEmbedding(e.conjugators + (conjugator(k),), e.k_values + (k,))
    return e


@dataclass
class IsometryReport:
    checked: int = 0
    violations: list[tuple] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _check_pairs(pairs, images: Mapping, expected, jobs: int) -> IsometryReport:
    pairs = list(pairs)

    def dist(pair):
        u, v = pair
        return biinvariant_distance(images[u], images[v])

    if jobs > 1:
        with ThreadPoolExecutor(jobs) as pool:
            got = list(pool.map(dist, pairs))
    else:
        got = [dist(pq) for pq in pairs]
    report = IsometryReport(checked=len(pairs))
    for (u, v), d in zip(pairs, got):
        want = expected(u, v)
        if d != want:
            report.violations.append((u, v, want, d))
    return report


def verify_cube_isometry(e: CubeEmbedding, slow: bool = False, jobs: int = 1) -> IsometryReport:
    """Compare every pairwise F_2 distance of the images with the l1 distance."""
    if e.dim > EXACT_VERIFY_DIM and not slow:
        raise DimTooLarge(f"exact verification of dimension {e.dim} needs slow=True")
    verts = e.vertices()
    images = {v: embed_vertex(e, v) for v in verts}
    return _check_pairs(combinations(verts, 2), images, l1, jobs)


# --- trees --------------------------------------------------------------------


@dataclass(frozen=True)
class TreeEmbedding:
    adjacency: Mapping[Hashable, tuple]
    root: Hashable
    vertex_map: Mapping[Hashable, frozenset]
    edge_coords: Mapping[frozenset, int]

    @property
    def n_edges(self) -> int:
        return len(self.edge_coords)


def adjacency_from_edges(edges: Iterable[tuple], vertices: Iterable = ()) -> dict:
    adj: dict = {v: [] for v in vertices}
    for u, v in edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    return {v: tuple(sorted(ns)) for v, ns in adj.items()}


def parse_tree(text: str) -> dict:
    """Adjacency from ``u v`` lines with integer vertices (``#`` starts a comment)."""
    edges, vertices = [], []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) == 1:
            vertices.append(int(parts[0]))
        elif len(parts) == 2:
            edges.append((int(parts[0]), int(parts[1])))
        else:
            raise ValueError(f"bad tree line {line!r}")
    if not edges and not vertices:
        vertices = [0]
    return adjacency_from_edges(edges, vertices)


def load_tree(path: str | Path) -> dict:
    return parse_tree(Path(path).read_text())


def tree_distances(adjacency: Mapping, source) -> dict:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in adjacency[u]:
            if v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def tree_to_cube(adjacency: Mapping, root=0) -> TreeEmbedding:
    if root not in adjacency:
        raise NotATree(f"root {root!r} is not a vertex")
    for u, ns in adjacency.items():
        if u in ns:
            raise NotATree(f"loop at {u!r}")
        if len(set(ns)) != len(ns):
            raise NotATree(f"multiple edges at {u!r}")
    n_edges = sum(len(ns) for ns in adjacency.values()) // 2
    if n_edges != len(adjacency) - 1:
        raise NotATree(f"{len(adjacency)} vertices but {n_edges} edges")
    vertex_map = {root: frozenset()}
    edge_coords: dict[frozenset, int] = {}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in adjacency[u]:
            if v in vertex_map:
                continue
            coord = len(edge_coords)
            edge_coords[frozenset((u, v))] = coord
            vertex_map[v] = vertex_map[u] | {coord}
            queue.append(v)
    if len(vertex_map) != len(adjacency):
        raise NotATree("graph is disconnected")
    return TreeEmbedding(dict(adjacency), root, vertex_map, edge_coords)


def verify_tree_isometry(te: TreeEmbedding, through_f2: bool | None = None,
                         jobs: int = 1) -> IsometryReport:
    """Check tree distances against l1 distances of the cube images and, for
    trees with at most three edges, against F_2 distances of the composite.
    """
    if through_f2 is None:
        through_f2 = te.n_edges <= EXACT_TREE_EDGES
    if through_f2 and te.n_edges > EXACT_TREE_EDGES:
        raise DimTooLarge(f"tree with {te.n_edges} edges is too big for the F_2 check")
    dist = {u: tree_distances(te.adjacency, u) for u in te.adjacency}
    pairs = list(combinations(sorted(te.adjacency, key=repr), 2))
    report = IsometryReport(checked=len(pairs))
    for u, v in pairs:
        got = l1(te.vertex_map[u], te.vertex_map[v])
        if got != dist[u][v]:
            report.violations.append((u, v, dist[u][v], got))
    if through_f2 and report.ok:
        e = build_cube_embedding(te.n_edges)
        images = {u: embed_vertex(e, te.vertex_map[u]) for u in te.adjacency}
        report = _check_pairs(pairs, images, lambda u, v: dist[u][v], jobs)
    return report


def embed_tree(te: TreeEmbedding) -> dict:
    e = build_cube_embedding(te.n_edges)
    return {u: embed_vertex(e, te.vertex_map[u]) for u in te.adjacency}
