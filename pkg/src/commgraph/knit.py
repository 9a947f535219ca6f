"""Left paths and knit degree.

A left path a_1 - ... - a_m in the commuting graph has a_1 != a_m and
a_1 a_i = a_m a_i for every i.  Paths are simple and their length counts
edges; the knit degree is the length of a shortest left path.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator, Sequence

from .semigroup import FiniteSemigroup, center


class NotAPath(ValueError):
    pass


@dataclass(frozen=True)
class LeftPath:
    vertices: tuple[int, ...]
    certified: bool

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def names(self, s: FiniteSemigroup) -> list[str]:
        return [s.elements[v] for v in self.vertices]


def _commuting_adjacency(s: FiniteSemigroup) -> dict[int, list[int]]:
    z = set(center(s))
    t = s.table
    verts = [x for x in range(s.order) if x not in z]
    return {x: [y for y in verts if y != x and t[x][y] == t[y][x]] for x in verts}


def certifies(s: FiniteSemigroup, seq: Sequence[int]) -> bool:
    """The left-path product condition, ignoring adjacency."""
    first, last = seq[0], seq[-1]
    if first == last:
        return False
    t = s.table
    return all(t[first][a] == t[last][a] for a in seq)


def is_left_path(s: FiniteSemigroup, path: Sequence[int]) -> bool:
    """Check a simple path in the commuting graph (given by element indices)."""
    path = tuple(path)
    if len(path) < 2:
        raise NotAPath("a path needs at least two vertices")
    if len(set(path)) != len(path):
        raise NotAPath("path repeats a vertex (or starts where it ends)")
    adj = _commuting_adjacency(s)
    for x in path:
        if x not in adj:
            raise NotAPath(f"{s.elements[x]} is central, not a vertex of the commuting graph")
    for x, y in zip(path, path[1:]):
        if y not in adj[x]:
            raise NotAPath(f"{s.elements[x]} and {s.elements[y]} do not commute")
    return certifies(s, path)


def simple_paths(s: FiniteSemigroup, length: int) -> Iterator[tuple[int, ...]]:
    """Every simple path with ``length`` edges, as ordered vertex tuples."""
    adj = _commuting_adjacency(s)

    def extend(path: list[int], on_path: set[int]) -> Iterator[tuple[int, ...]]:
        if len(path) == length + 1:
            yield tuple(path)
            return
        for y in adj[path[-1]]:
            if y not in on_path:
                path.append(y)
                on_path.add(y)
                yield from extend(path, on_path)
                on_path.discard(y)
                path.pop()

    for start in adj:
        yield from extend([start], {start})


def walks(s: FiniteSemigroup, length: int) -> Iterator[tuple[int, ...]]:
    """Every walk with ``length`` edges (vertices may repeat)."""
    adj = _commuting_adjacency(s)

    def extend(path: list[int]) -> Iterator[tuple[int, ...]]:
        if len(path) == length + 1:
            yield tuple(path)
            return
        for y in adj[path[-1]]:
            path.append(y)
            yield from extend(path)
            path.pop()

    for start in adj:
        yield from extend([start])


def shortest_left_path(s: FiniteSemigroup) -> LeftPath | None:
    """A shortest left path, or None.

    For fixed endpoints (a, b) every vertex x of a left path satisfies
    a x = b x, so the shortest one is a breadth-first path inside the subgraph
    induced on those x.  Ties go to the lexicographically first endpoint pair.
    """
    adj = _commuting_adjacency(s)
    t = s.table
    best: tuple[int, ...] | None = None
    for a in adj:
        for b in adj:
            if a == b or t[a][a] != t[b][a] or t[a][b] != t[b][b]:
                continue
            allowed = {x for x in adj if t[a][x] == t[b][x]}
            path = _bfs_path(adj, allowed, a, b)
            if path is not None and (best is None or len(path) < len(best)):
                best = path
    return None if best is None else LeftPath(best, True)


def _bfs_path(adj: dict[int, list[int]], allowed: set[int], a: int, b: int) -> tuple[int, ...] | None:
    prev = {a: a}
    queue = deque([a])
    while queue:
        u = queue.popleft()
        if u == b:
            out = [b]
            while out[-1] != a:
                out.append(prev[out[-1]])
            return tuple(reversed(out))
        for w in adj[u]:
            if w in allowed and w not in prev:
                prev[w] = u
                queue.append(w)
    return None


def shortest_left_path_exhaustive(s: FiniteSemigroup, max_length: int | None = None) -> LeftPath | None:
    """Same question answered by enumerating every simple path by length."""
    n_vertices = len(_commuting_adjacency(s))
    top = n_vertices - 1 if max_length is None else min(max_length, n_vertices - 1)
    for length in range(1, top + 1):
        for path in simple_paths(s, length):
            if certifies(s, path):
                return LeftPath(path, True)
    return None


def knit_degree(s: FiniteSemigroup) -> int | None:
    found = shortest_left_path(s)
    return None if found is None else found.length
