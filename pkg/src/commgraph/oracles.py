"""Brute-force reference computations, kept independent of the fast paths they check.

Nothing here shares code with the enumeration kernel or the graph solvers
beyond the ``Presentation`` and ``Graph`` containers.
"""

from __future__ import annotations

from itertools import combinations, permutations, product

from .graphs import Graph
from .wordcore import BudgetExceeded, Presentation


def _contains_factor(w: tuple[int, ...], r: tuple[int, ...]) -> bool:
    return any(w[i:i + len(r)] == r for i in range(len(w) - len(r) + 1))


def _dead(p: Presentation, w: tuple[int, ...]) -> bool:
    if p.allzero is not None and len(w) >= p.allzero:
        return True
    return any(_contains_factor(w, r) for r in p.monomial_relations)


class _Classes:
    """Class labels with merge-by-relabel; deliberately no union-find."""

    def __init__(self, items):
        self.label = {x: i for i, x in enumerate(items)}

    def merge(self, a, b) -> bool:
        la, lb = self.label[a], self.label[b]
        if la == lb:
            return False
        for x, lab in self.label.items():
            if lab == lb:
                self.label[x] = la
        return True


def _rescan_closure(p: Presentation, words: list, top: int, truncate: bool) -> _Classes:
    zero = "0"
    cls = _Classes([zero] + words)
    d = p.rank

    def node(w):
        if len(w) > top:
            return zero if truncate else None
        return zero if _dead(p, w) else w

    changed = True
    while changed:
        changed = False
        for w in words:
            if _dead(p, w):
                changed |= cls.merge(zero, w)
        for u, v in p.equational_relations:
            nu, nv = node(u), node(v)
            if nu is not None and nv is not None:
                changed |= cls.merge(nu, nv)
        members: dict[int, list] = {}
        for x, lab in cls.label.items():
            members.setdefault(lab, []).append(x)
        for group in members.values():
            for u, v in combinations(group, 2):
                for g in range(d):
                    for side in ("left", "right"):
                        if u == zero:
                            gu = zero
                        else:
                            gu = node((g,) + u if side == "left" else u + (g,))
                        gv = node((g,) + v if side == "left" else v + (g,)) if v != zero else zero
                        if gu is not None and gv is not None:
                            changed |= cls.merge(gu, gv)
    return cls


def naive_enumerate(p: Presentation, max_word_length: int = 8) -> tuple[tuple[str, ...], tuple[tuple[int, ...], ...]]:
    """Labeled Cayley table by materializing every word and rescanning until nothing merges."""
    d = p.rank
    cert = None
    for L in range(1, max_word_length + 1):
        words = [w for k in range(1, L + 1) for w in product(range(d), repeat=k)]
        cls = _rescan_closure(p, words, L, truncate=False)
        zl = cls.label["0"]
        if all(cls.label[w] == zl for w in product(range(d), repeat=L)):
            cert = L
            break
    if cert is None:
        raise BudgetExceeded("no certificate")
    L = cert
    words = [w for k in range(1, L) for w in product(range(d), repeat=k)]
    cls = _rescan_closure(p, words, L - 1, truncate=True)
    zl = cls.label["0"]
    reps: dict[int, tuple] = {}
    for w in sorted(words, key=lambda w: (len(w), w)):
        reps.setdefault(cls.label[w], w)
    ordered = [zl] + sorted((lab for lab in reps if lab != zl), key=lambda lab: (len(reps[lab]), reps[lab]))
    pos = {lab: i for i, lab in enumerate(ordered)}

    def cls_of(w):
        if len(w) >= L or _dead(p, w):
            return zl
        return cls.label[w]

    names = tuple("0" if lab == zl else p.render(reps[lab]) for lab in ordered)
    table = []
    for x in ordered:
        row = []
        for y in ordered:
            if x == zl or y == zl:
                row.append(0)
            else:
                row.append(pos[cls_of(reps[x] + reps[y])])
        table.append(tuple(row))
    return names, tuple(table)


def _adjacent(g: Graph, u: int, v: int) -> bool:
    return v in g.adjacency[u]


def brute_clique_number(g: Graph) -> int:
    n = g.order
    for k in range(n, 0, -1):
        for sub in combinations(range(n), k):
            if all(_adjacent(g, u, v) for u, v in combinations(sub, 2)):
                return k
    return 0


def brute_girth(g: Graph) -> int | None:
    """Shortest cycle by enumerating simple cycles from their least vertex; None if acyclic."""
    n = g.order
    best = None

    def walk(start: int, path: list[int]) -> None:
        nonlocal best
        u = path[-1]
        for w in g.adjacency[u]:
            if w == start and len(path) >= 3:
                if best is None or len(path) < best:
                    best = len(path)
            elif w > start and w not in path and (best is None or len(path) + 1 < best):
                path.append(w)
                walk(start, path)
                path.pop()

    for v in range(n):
        walk(v, [v])
    return best


def brute_diameter(g: Graph) -> int | None:
    """Floyd-Warshall; None when disconnected."""
    n = g.order
    inf = float("inf")
    dist = [[0 if i == j else (1 if _adjacent(g, i, j) else inf) for j in range(n)] for i in range(n)]
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if dist[i][k] + dist[k][j] < dist[i][j]:
                    dist[i][j] = dist[i][k] + dist[k][j]
    best = max((dist[i][j] for i in range(n) for j in range(n)), default=0)
    return None if best == inf else int(best)


def brute_chromatic_number(g: Graph) -> int:
    n = g.order
    if n == 0:
        return 0
    edges = g.edges()
    for k in range(1, n + 1):
        for colors in product(range(k), repeat=n):
            if all(colors[u] != colors[v] for u, v in edges):
                return k
    return n


def brute_isomorphic(g: Graph, h: Graph) -> bool:
    if g.order != h.order or g.size != h.size:
        return False
    eh = {frozenset(e) for e in h.edges()}
    for perm in permutations(range(h.order)):
        if all(frozenset((perm[u], perm[v])) in eh for u, v in g.edges()):
            return True
    return False
