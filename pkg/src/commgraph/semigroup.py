"""Finite semigroups with zero given by Cayley tables."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable, Iterator

from .wordcore import Word


class CapExceeded(Exception):
    """No generating subset within the requested size cap."""


@dataclass(frozen=True)
class SubsetOfS:
    """Sorted, duplicate-free element indices of a semigroup of order ``order``."""

    members: tuple[int, ...]
    order: int

    def __post_init__(self) -> None:
        members = tuple(sorted(set(self.members)))
        if members and (members[0] < 0 or members[-1] >= self.order):
            raise ValueError("subset index out of range")
        object.__setattr__(self, "members", members)

    def __contains__(self, x: object) -> bool:
        return x in self._set

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    @property
    def _set(self) -> frozenset[int]:
        return frozenset(self.members)

    def issubset(self, other: Iterable[int]) -> bool:
        return self._set <= set(other)


@dataclass(frozen=True)
class FiniteSemigroup:
    """Cayley table over named elements; index 0 is the zero.

    ``words`` (optional) keeps the shortlex representative of each element
    when the semigroup came out of an enumeration.
    """

    elements: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    generators: tuple[int, ...] = ()
    words: tuple[Word, ...] | None = field(default=None, compare=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def index(self, name: str) -> int:
        try:
            return self.elements.index(name)
        except ValueError:
            raise KeyError(name) from None

    def check(self, audit_triples: int = 100_000, seed: int = 0) -> None:
        """Raise ``ValueError`` unless the table is associative, 0 absorbs and the generators reach everything.

        Associativity is exhaustive up to 64 elements, a random audit above.
        """
        n = self.order
        t = self.table
        if len(t) != n or any(len(row) != n for row in t):
            raise ValueError("table is not square")
        for x in range(n):
            if t[0][x] != 0 or t[x][0] != 0:
                raise ValueError(f"zero is not absorbing at {self.elements[x]}")
        if n <= 64:
            triples: Iterable[tuple[int, int, int]] = product(range(n), repeat=3)
        else:
            rng = random.Random(seed)
            triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(audit_triples))
        for x, y, z in triples:
            if t[t[x][y]][z] != t[x][t[y][z]]:
                raise ValueError(f"not associative at {self.elements[x]}, {self.elements[y]}, {self.elements[z]}")
        if self.generators and closure(self, self.generators) != set(range(n)):
            raise ValueError("generators do not generate the semigroup")

    def to_json(self) -> dict:
        return {
            "elements": list(self.elements),
            "zero": 0,
            "generators": list(self.generators),
            "table": [list(row) for row in self.table],
        }

    @classmethod
    def from_json(cls, data: dict | str) -> FiniteSemigroup:
        if isinstance(data, str):
            data = json.loads(data)
        if data.get("zero", 0) != 0:
            raise ValueError("zero must be element 0")
        return cls(
            elements=tuple(data["elements"]),
            table=tuple(tuple(row) for row in data["table"]),
            generators=tuple(data.get("generators", ())),
        )


def closure(s: FiniteSemigroup, xs: Iterable[int]) -> set[int]:
    """All finite products of elements of ``xs``."""
    gens = list(dict.fromkeys(xs))
    seen = set(gens)
    stack = list(gens)
    t = s.table
    while stack:
        e = stack.pop()
        row = t[e]
        for g in gens:
            p = row[g]
            if p not in seen:
                seen.add(p)
                stack.append(p)
    return seen


def center(s: FiniteSemigroup) -> SubsetOfS:
    t = s.table
    n = s.order
    return SubsetOfS(tuple(x for x in range(n) if all(t[x][y] == t[y][x] for y in range(n))), n)


def is_commutative(s: FiniteSemigroup) -> bool:
    return len(center(s)) == s.order


def power_set(s: FiniteSemigroup, m: int) -> SubsetOfS:
    """The set S^m of all m-fold products."""
    if m < 1:
        raise ValueError("m must be positive")
    n = s.order
    current = set(range(n))
    for _ in range(m - 1):
        nxt = {s.table[x][y] for x in range(n) for y in current}
        if nxt == current:
            break
        current = nxt
    return SubsetOfS(tuple(current), n)


def nilpotency_data(s: FiniteSemigroup) -> tuple[int | None, int | None]:
    """(c, m): least c with S^c = {0} and least m with S^m inside the center."""
    n = s.order
    z = set(center(s))
    c = m = None
    current = set(range(n))
    k = 1
    while True:
        if m is None and current <= z:
            m = k
        if current == {0}:
            c = k
            break
        nxt = {s.table[x][y] for x in range(n) for y in current}
        if nxt == current:
            break
        current = nxt
        k += 1
    return c, m


def null_union(s: FiniteSemigroup, t: FiniteSemigroup, tags: tuple[str, str] = ("1:", "2:")) -> FiniteSemigroup:
    """Disjoint union with the zeros identified and all cross products zero.

    Elements of ``s`` keep indices 1..|s|-1, those of ``t`` follow.  Names are
    prefixed with ``tags`` so they stay distinct.
    """
    ns, nt = s.order, t.order
    n = ns + nt - 1
    s_map = list(range(ns))
    t_map = [0] + list(range(ns, n))
    table = [[0] * n for _ in range(n)]
    for x in range(ns):
        for y in range(ns):
            table[s_map[x]][s_map[y]] = s_map[s.table[x][y]]
    for x in range(nt):
        for y in range(nt):
            table[t_map[x]][t_map[y]] = t_map[t.table[x][y]]
    names = ["0"] + [tags[0] + e for e in s.elements[1:]] + [tags[1] + e for e in t.elements[1:]]
    gens = sorted({s_map[g] for g in s.generators} | {t_map[g] for g in t.generators})
    return FiniteSemigroup(tuple(names), tuple(tuple(r) for r in table), tuple(gens))


def embeddings(s: FiniteSemigroup, t: FiniteSemigroup) -> tuple[list[int], list[int]]:
    """Index maps of ``s`` and ``t`` into ``null_union(s, t)``."""
    ns, nt = s.order, t.order
    return list(range(ns)), [0] + list(range(ns, ns + nt - 1))


def indecomposables(s: FiniteSemigroup) -> SubsetOfS:
    """S minus S^2: elements every generating set must contain."""
    sq = set(power_set(s, 2))
    return SubsetOfS(tuple(x for x in range(s.order) if x not in sq), s.order)


def generating_witness(s: FiniteSemigroup, cap: int) -> tuple[int, ...]:
    """Lexicographically least generating subset of minimum size (at most ``cap``)."""
    n = s.order
    everything = set(range(n))
    mandatory = tuple(indecomposables(s))
    if len(mandatory) > cap:
        raise CapExceeded(f"{len(mandatory)} indecomposable elements exceed cap {cap}")
    rest = [x for x in range(n) if x not in set(mandatory)]
    for k in range(max(len(mandatory), 1), cap + 1):
        for extra in combinations(rest, k - len(mandatory)):
            chosen = tuple(sorted(mandatory + extra))
            if closure(s, chosen) == everything:
                return chosen
    raise CapExceeded(f"no generating set of size <= {cap}")


def rank(s: FiniteSemigroup, cap: int | None = None) -> int:
    """Minimum number of generators (searched up to ``cap``, default |S|)."""
    return len(generating_witness(s, s.order if cap is None else cap))


def is_ideal(s: FiniteSemigroup, members: Iterable[int]) -> bool:
    ideal = set(members)
    t = s.table
    return all(t[x][i] in ideal and t[i][x] in ideal for i in ideal for x in range(s.order))


def _prop6_ok(s: FiniteSemigroup, ideal: set[int], z: set[int]) -> bool:
    if not ideal or ideal <= z or not is_ideal(s, ideal):
        return False
    t = s.table
    return all(t[i][x] in z and t[x][i] in z for i in ideal for x in range(s.order))


def principal_ideal(s: FiniteSemigroup, x: int) -> SubsetOfS:
    """S^1 x S^1."""
    n = s.order
    t = s.table
    left = {x} | {t[y][x] for y in range(n)}
    both = left | {t[l][y] for l in left for y in range(n)}
    return SubsetOfS(tuple(both), n)


def prop6_hypothesis(s: FiniteSemigroup) -> SubsetOfS | None:
    """Find a non-central ideal I with IS and SI inside the center.

    Tries S^(m-1) first (m the least exponent with S^m central), then every
    principal two-sided ideal in element order.
    """
    z = set(center(s))
    _, m = nilpotency_data(s)
    if m is not None and m >= 2:
        cand = power_set(s, m - 1)
        if _prop6_ok(s, set(cand), z):
            return cand
    for x in range(s.order):
        if x in z:
            continue
        cand = principal_ideal(s, x)
        if _prop6_ok(s, set(cand), z):
            return cand
    return None


def check_prop6_witness(s: FiniteSemigroup, ideal: Iterable[int]) -> bool:
    """Brute-force recheck of the three defining conditions."""
    members = set(ideal)
    z = set(center(s))
    n = s.order
    t = s.table
    is_id = all(t[x][i] in members and t[i][x] in members for x in range(n) for i in members)
    non_central = any(i not in z for i in members)
    absorbed = all(t[x][i] in z and t[i][x] in z for x in range(n) for i in members)
    return is_id and non_central and absorbed


def is_automorphism(s: FiniteSemigroup, perm: list[int]) -> bool:
    n = s.order
    if sorted(perm) != list(range(n)):
        return False
    t = s.table
    return all(perm[t[x][y]] == t[perm[x]][perm[y]] for x in range(n) for y in range(n))
