"""Simple undirected graphs and exact invariants (clique, girth, diameter, chromatic number)."""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import TYPE_CHECKING, Iterable, Sequence

if TYPE_CHECKING:
    from .semigroup import FiniteSemigroup

CHROMATIC_LIMIT = 64
ISOMORPHISM_LIMIT = 12


class TooLarge(ValueError):
    """Graph exceeds the size guaranteed by an exact solver."""


class GraphFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class Tag(enum.Enum):
    INFINITE = "infinite"
    DISCONNECTED = "disconnected"

    def __repr__(self) -> str:
        return self.name


INFINITE = Tag.INFINITE
DISCONNECTED = Tag.DISCONNECTED


@dataclass(frozen=True)
class Graph:
    labels: tuple[str, ...]
    adjacency: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        labels = tuple(self.labels)
        if len(set(labels)) != len(labels):
            raise ValueError("vertex labels must be distinct")
        if len(self.adjacency) != len(labels):
            raise ValueError("adjacency size does not match labels")
        adj = tuple(tuple(sorted(set(nb))) for nb in self.adjacency)
        for v, nb in enumerate(adj):
            for u in nb:
                if u == v:
                    raise ValueError(f"self-loop at {labels[v]}")
                if v not in adj[u]:
                    raise ValueError("adjacency is not symmetric")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "adjacency", adj)

    @classmethod
    def from_edges(cls, labels: Sequence[str], edges: Iterable[tuple[int, int]]) -> Graph:
        nbrs: list[set[int]] = [set() for _ in labels]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {labels[u]}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(tuple(labels), tuple(tuple(nb) for nb in nbrs))

    @classmethod
    def from_labeled_edges(cls, labels: Sequence[str], edges: Iterable[tuple[str, str]]) -> Graph:
        pos = {x: i for i, x in enumerate(labels)}
        return cls.from_edges(labels, [(pos[a], pos[b]) for a, b in edges])

    @property
    def order(self) -> int:
        return len(self.labels)

    @property
    def size(self) -> int:
        return sum(len(nb) for nb in self.adjacency) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, nb in enumerate(self.adjacency) for v in nb if u < v]

    def labeled_edges(self) -> frozenset[frozenset[str]]:
        return frozenset(frozenset((self.labels[u], self.labels[v])) for u, v in self.edges())

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.masks[u] >> v & 1)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << u for u in nb) for nb in self.adjacency)

    def same_labeled(self, other: Graph) -> bool:
        """Equal vertex label sets and equal edge sets on labels (order ignored)."""
        return set(self.labels) == set(other.labels) and self.labeled_edges() == other.labeled_edges()

    def relabel(self, labels: Sequence[str]) -> Graph:
        return Graph(tuple(labels), self.adjacency)

    def to_json(self) -> dict:
        return {"vertices": list(self.labels), "edges": [list(e) for e in self.edges()]}

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        for i, lab in enumerate(self.labels):
            lines.append(f'  n{i} [label="{lab}"];')
        for u, v in self.edges():
            lines.append(f"  n{u} -- n{v};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        lines = ["vertices: " + " ".join(self.labels)]
        lines += [f"edge: {self.labels[u]} {self.labels[v]}" for u, v in self.edges()]
        return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    """Read ``vertices: ...`` followed by ``edge: u v`` lines."""
    labels: list[str] | None = None
    edges: list[tuple[int, int]] = []
    pos: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep:
            raise GraphFormatError(f"expected 'key: value', got {line!r}", lineno)
        if labels is None:
            if key != "vertices":
                raise GraphFormatError("first declaration must be 'vertices:'", lineno)
            labels = rest.split()
            if len(set(labels)) != len(labels):
                raise GraphFormatError("duplicate vertex label", lineno)
            pos = {x: i for i, x in enumerate(labels)}
        elif key == "edge":
            ends = rest.split()
            if len(ends) != 2:
                raise GraphFormatError("edge needs two endpoints", lineno)
            try:
                u, v = pos[ends[0]], pos[ends[1]]
            except KeyError as exc:
                raise GraphFormatError(f"unknown vertex {exc.args[0]!r}", lineno) from None
            if u == v:
                raise GraphFormatError("self-loop", lineno)
            edges.append((u, v))
        else:
            raise GraphFormatError(f"unknown declaration {key!r}", lineno)
    if labels is None:
        raise GraphFormatError("missing 'vertices:' line")
    return Graph.from_edges(labels, edges)


def commuting_graph(s: FiniteSemigroup) -> Graph:
    """Non-central elements, joined when they commute."""
    from .semigroup import center

    z = set(center(s))
    t = s.table
    verts = [x for x in range(s.order) if x not in z]
    pos = {x: i for i, x in enumerate(verts)}
    edges = [
        (pos[x], pos[y])
        for i, x in enumerate(verts)
        for y in verts[i + 1:]
        if t[x][y] == t[y][x]
    ]
    return Graph.from_edges([s.elements[x] for x in verts], edges)


def empty_graph(labels: Sequence[str]) -> Graph:
    return Graph(tuple(labels), tuple(() for _ in labels))


def clique_number(g: Graph) -> int:
    return len(max_clique(g))


def max_clique(g: Graph) -> list[int]:
    """Exact maximum clique: Bron-Kerbosch with pivoting plus a size bound."""
    masks = g.masks
    best: list[int] = []

    def expand(r: list[int], p: int, x: int) -> None:
        nonlocal best
        if len(r) > len(best):
            best = list(r)
        if not p:
            return
        if len(r) + p.bit_count() <= len(best):
            return
        # pivot: vertex of P|X with most neighbours in P
        px = p | x
        pivot, most = -1, -1
        while px:
            low = px & -px
            u = low.bit_length() - 1
            c = (masks[u] & p).bit_count()
            if c > most:
                pivot, most = u, c
            px ^= low
        cand = p & ~masks[pivot]
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            r.append(v)
            expand(r, p & masks[v], x & masks[v])
            r.pop()
            p &= ~low
            x |= low
            cand ^= low
            if len(r) + p.bit_count() <= len(best):
                return

    expand([], (1 << g.order) - 1, 0)
    return sorted(best)


def _bfs(g: Graph, root: int) -> list[int]:
    dist = [-1] * g.order
    dist[root] = 0
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def girth(g: Graph) -> int | Tag:
    """Shortest cycle length via a breadth-first search from every vertex."""
    best = None
    for root in range(g.order):
        dist = [-1] * g.order
        par = [-1] * g.order
        dist[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if best is not None and 2 * dist[u] + 1 >= best:
                break
            for w in g.adjacency[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    par[w] = u
                    queue.append(w)
                elif w != par[u]:
                    cyc = dist[u] + dist[w] + 1
                    if best is None or cyc < best:
                        best = cyc
    return INFINITE if best is None else best


def eccentricities(g: Graph) -> list[int] | Tag:
    ecc = []
    for v in range(g.order):
        dist = _bfs(g, v)
        if min(dist) < 0:
            return DISCONNECTED
        ecc.append(max(dist))
    return ecc


def diameter(g: Graph) -> int | Tag:
    """Maximum eccentricity; ``DISCONNECTED`` if some pair is unreachable.

    The graph with no vertices has diameter 0.
    """
    ecc = eccentricities(g)
    if ecc is DISCONNECTED:
        return DISCONNECTED
    return max(ecc, default=0)


def is_connected(g: Graph) -> bool:
    return g.order == 0 or min(_bfs(g, 0)) >= 0


def _colorable(g: Graph, k: int) -> bool:
    n = g.order
    color = [-1] * n
    # per vertex: bitmask of colours used by coloured neighbours
    seen = [0] * n

    def pick() -> int:
        best, key = -1, (-1, -1)
        for v in range(n):
            if color[v] < 0:
                kv = (seen[v].bit_count(), len(g.adjacency[v]))
                if kv > key:
                    best, key = v, kv
        return best

    def solve(colored: int, used: int) -> bool:
        if colored == n:
            return True
        v = pick()
        forbidden = seen[v]
        # a fresh colour is interchangeable with any other fresh one
        for c in range(min(used + 1, k)):
            if forbidden >> c & 1:
                continue
            color[v] = c
            touched = []
            for u in g.adjacency[v]:
                if color[u] < 0 and not seen[u] >> c & 1:
                    seen[u] |= 1 << c
                    touched.append(u)
            if solve(colored + 1, max(used, c + 1)):
                return True
            for u in touched:
                seen[u] &= ~(1 << c)
            color[v] = -1
        return False

    return solve(0, 0)


def chromatic_number(g: Graph) -> int:
    """Exact chromatic number for graphs with at most 64 vertices."""
    if g.order > CHROMATIC_LIMIT:
        raise TooLarge(f"{g.order} vertices exceed the exact-colouring limit {CHROMATIC_LIMIT}")
    if g.order == 0:
        return 0
    k = max(clique_number(g), 1)
    while not _colorable(g, k):
        k += 1
    return k


def is_star_free(g: Graph) -> bool:
    """True iff no vertex is adjacent to every other vertex.

    A lone vertex counts as a star (vacuously adjacent to all others); the
    graph with no vertices is star-free.
    """
    n = g.order
    return all(len(nb) != n - 1 for nb in g.adjacency)


def join(g: Graph, h: Graph, tags: tuple[str, str] = ("", "")) -> Graph:
    """Disjoint union plus every edge between the two sides; labels get ``tags`` prefixes."""
    n = g.order
    labels = [tags[0] + x for x in g.labels] + [tags[1] + x for x in h.labels]
    adj = [list(nb) + list(range(n, n + h.order)) for nb in g.adjacency]
    adj += [[n + u for u in nb] + list(range(n)) for nb in h.adjacency]
    return Graph(tuple(labels), tuple(tuple(a) for a in adj))


def are_isomorphic(g: Graph, h: Graph) -> bool:
    """Exact test by backtracking over degree-compatible assignments (orders <= 12)."""
    return find_isomorphism(g, h) is not None


def find_isomorphism(g: Graph, h: Graph) -> list[int] | None:
    if max(g.order, h.order) > ISOMORPHISM_LIMIT:
        raise TooLarge(f"isomorphism test limited to {ISOMORPHISM_LIMIT} vertices")
    n = g.order
    if n != h.order or g.size != h.size:
        return None
    if sorted(map(len, g.adjacency)) != sorted(map(len, h.adjacency)):
        return None
    order = sorted(range(n), key=lambda v: -g.degree(v))
    mapping = [-1] * n
    used = [False] * n

    def extend(i: int) -> bool:
        if i == n:
            return True
        v = order[i]
        for w in range(n):
            if used[w] or h.degree(w) != g.degree(v):
                continue
            if all(g.has_edge(v, order[j]) == h.has_edge(w, mapping[order[j]]) for j in range(i)):
                mapping[v] = w
                used[w] = True
                if extend(i + 1):
                    return True
                used[w] = False
                mapping[v] = -1
        return False

    return mapping if extend(0) else None


@dataclass
class InvariantReport:
    """Invariants of a commuting graph, optionally with semigroup-level data."""

    order: int
    size: int
    clique_number: int
    girth: int | Tag
    diameter: int | Tag
    chromatic_number: int | None
    is_connected: bool
    is_star_free: bool
    knit_degree: int | None = None
    semigroup_order: int | None = None
    center_size: int | None = None
    rank: int | None = None
    prop6_witness: bool | None = None
    extra: dict = field(default_factory=dict)

    @property
    def vacuous(self) -> bool:
        return self.order == 0

    def check(self) -> None:
        if self.chromatic_number is not None and self.clique_number > self.chromatic_number:
            raise AssertionError("clique number exceeds chromatic number")
        if isinstance(self.girth, int) and self.girth < 3:
            raise AssertionError("finite girth below 3")
        if self.order >= 2 and self.is_connected and isinstance(self.diameter, int) and self.diameter < 1:
            raise AssertionError("connected graph with diameter 0")

    def to_json(self) -> dict:
        out = {
            "order": self.order,
            "size": self.size,
            "clique_number": self.clique_number,
            "girth": None if self.girth is INFINITE else self.girth,
            "girth_finite": self.girth is not INFINITE,
            "diameter": None if self.diameter is DISCONNECTED else self.diameter,
            "connected": self.is_connected,
            "chromatic_number": self.chromatic_number,
            "star_free": self.is_star_free,
            "knit_degree": self.knit_degree,
            "vacuous": self.vacuous,
        }
        for key in ("semigroup_order", "center_size", "rank", "prop6_witness"):
            value = getattr(self, key)
            if value is not None:
                out[key] = value
        out.update(self.extra)
        return out

    def get(self, key: str):
        """Field lookup used by search filters; tags read as ``None``."""
        value = getattr(self, _ALIASES.get(key, key))
        return None if isinstance(value, Tag) else value


_ALIASES = {
    "omega": "clique_number",
    "chi": "chromatic_number",
    "diam": "diameter",
    "knit": "knit_degree",
    "connected": "is_connected",
    "star_free": "is_star_free",
}


def graph_report(g: Graph) -> InvariantReport:
    chi = chromatic_number(g) if g.order <= CHROMATIC_LIMIT else None
    return InvariantReport(
        order=g.order,
        size=g.size,
        clique_number=clique_number(g),
        girth=girth(g),
        diameter=diameter(g),
        chromatic_number=chi,
        is_connected=is_connected(g),
        is_star_free=is_star_free(g),
    )
