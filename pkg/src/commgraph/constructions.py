"""Concrete presentations and graphs: graph realization, the S_n family, the knit example, cycles,
and a seeded search over small monomial presentations.
"""

from __future__ import annotations

import enum
import operator
import random
import re
from dataclasses import dataclass
from itertools import combinations, product
from typing import Callable, Iterator

from .graphs import Graph, InvariantReport, empty_graph, is_star_free
from .report import semigroup_report
from .semigroup import FiniteSemigroup, null_union
from .wordcore import (
    BudgetExceeded,
    CongruenceTable,
    EnumerationBudget,
    Presentation,
    Word,
    enumerate_semigroup,
    normal_form,
    shortlex_key,
)


class NotStarFree(ValueError):
    """The graph has a vertex adjacent to all others, so no semigroup realizes it."""


class Variant(enum.Enum):
    EQUATIONAL = "equational"
    MONOMIAL = "monomial"


def realize_graph(g: Graph, variant: Variant = Variant.EQUATIONAL) -> Presentation:
    """Presentation whose commuting graph is ``g``.

    Generators are the vertices, every product of three generators is zero,
    and each edge uv contributes uv = vu (equational) or uv = vu = 0 (monomial).
    """
    if g.order == 0:
        raise ValueError("cannot realize the graph with no vertices")
    if not is_star_free(g):
        star = next(g.labels[v] for v in range(g.order) if g.degree(v) == g.order - 1)
        raise NotStarFree(f"vertex {star} is adjacent to every other vertex")
    mono: set[Word] = set()
    eqs: set[tuple[Word, Word]] = set()
    for u, v in g.edges():
        if variant is Variant.EQUATIONAL:
            eqs.add(((u, v), (v, u)))
        else:
            mono.update({(u, v), (v, u)})
    return Presentation(g.labels, frozenset(mono), frozenset(eqs), allzero=3)


def realized_order(g: Graph) -> int:
    """n^2 + n + 1 - |E| for the equational realization."""
    n = g.order
    return n * n + n + 1 - g.size


def make_Sn(n: int) -> Presentation:
    """<a, b | a^(n+1) = b^2 = 0, aba = 0, b a^i b = 0 for 1 <= i <= n>."""
    if n < 1:
        raise ValueError("n must be positive")
    a, b = 0, 1
    rels = {(a,) * (n + 1), (b, b), (a, b, a)}
    rels |= {(b,) + (a,) * i + (b,) for i in range(1, n + 1)}
    return Presentation(("a", "b"), frozenset(rels))


def make_S1() -> Presentation:
    return make_Sn(1)


def sn_budget(n: int) -> EnumerationBudget:
    # words of length n+2 vanish in S_n
    return EnumerationBudget(max_word_length=max(8, n + 2))


def enumerate_Sn(n: int) -> FiniteSemigroup:
    return enumerate_semigroup(make_Sn(n), sn_budget(n))[0]


def make_Sn_bullet_S1(n: int) -> FiniteSemigroup:
    return null_union(enumerate_Sn(n), enumerate_Sn(1), tags=("", "t:"))


def make_S_prime(n: int) -> FiniteSemigroup:
    """Null union of n copies of S_1, tagged ``1:``, ``2:``, ..."""
    if n < 1:
        raise ValueError("n must be positive")
    s1 = enumerate_Sn(1)
    out = _tagged(s1, "1:")
    for i in range(2, n + 1):
        out = null_union(out, s1, tags=("", f"{i}:"))
    return out


def _tagged(s: FiniteSemigroup, tag: str) -> FiniteSemigroup:
    names = ("0",) + tuple(tag + e for e in s.elements[1:])
    return FiniteSemigroup(names, s.table, s.generators)


def make_knit_example() -> Presentation:
    """Four generators with knit degree 3; the commuting graph is x1 - x2 - x3 - x4."""
    x1, x2, x3, x4 = range(4)
    zero_products = {(x1, x2), (x4, x2), (x1, x3), (x4, x3), (x2, x1), (x2, x3), (x3, x2), (x3, x4)}
    eqs = {((x1, x1), (x4, x1)), ((x4, x4), (x1, x4))}
    return Presentation(("x1", "x2", "x3", "x4"), frozenset(zero_products), frozenset(eqs), allzero=3)


def induced_permutation(s: FiniteSemigroup, table: CongruenceTable, letter_map: dict[int, int]) -> list[int]:
    """Element permutation induced by a renaming of generators (needs ``s.words``)."""
    if s.words is None:
        raise ValueError("semigroup carries no representative words")
    pos = {w: i for i, w in enumerate(s.words)}
    return [pos[normal_form(table, tuple(letter_map[g] for g in w))] for w in s.words]


KNIT_SWAP = {0: 3, 1: 2, 2: 1, 3: 0}


def make_cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges([f"v{i}" for i in range(1, n + 1)], [(i, (i + 1) % n) for i in range(n)])


def make_path(n: int) -> Graph:
    return Graph.from_edges([f"v{i}" for i in range(1, n + 1)], [(i, i + 1) for i in range(n - 1)])


def make_star(leaves: int) -> Graph:
    """K_{1,leaves} with centre ``c``."""
    return Graph.from_edges(["c"] + [f"v{i}" for i in range(1, leaves + 1)], [(0, i) for i in range(1, leaves + 1)])


def make_edgeless(n: int) -> Graph:
    return empty_graph([f"v{i}" for i in range(1, n + 1)])


def make_complete(n: int) -> Graph:
    return Graph.from_edges([f"v{i}" for i in range(1, n + 1)], combinations(range(n), 2))


def make_cocktail_party(n: int) -> Graph:
    """K_{2n} minus a perfect matching: the (2n-2)-regular graph on 2n vertices."""
    m = 2 * n
    return Graph.from_edges(
        [f"v{i}" for i in range(1, m + 1)],
        [(i, j) for i, j in combinations(range(m), 2) if j != i + n],
    )


def all_labeled_graphs(n: int) -> Iterator[Graph]:
    """All 2^C(n,2) graphs on vertices v1..vn."""
    labels = [f"v{i}" for i in range(1, n + 1)]
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(labels, [e for k, e in enumerate(pairs) if mask >> k & 1])


# ---------------------------------------------------------------------------
# search over monomial presentations

_FILTER_RE = re.compile(r"\s*([a-z_]+)\s*(>=|<=|==|!=|>|<)\s*(-?\d+)\s*$")
_OPS = {">=": operator.ge, "<=": operator.le, "==": operator.eq, "!=": operator.ne, ">": operator.gt, "<": operator.lt}

ReportFilter = Callable[[InvariantReport], bool]


def parse_filter(text: str) -> ReportFilter:
    """``girth>=4``, ``diameter>=3``, ``rank<=2``, or a bare flag such as ``connected``.

    A comparison against an unbounded value (infinite girth, disconnected
    diameter, missing rank) is false, except that infinite girth passes ``>``
    and ``>=`` tests.
    """
    text = text.strip()
    m = _FILTER_RE.match(text)
    if m is None:
        if re.fullmatch(r"[a-z_]+", text):
            key = text
            _DUMMY.get(key)
            return lambda r: bool(r.get(key))
        raise ValueError(f"bad filter {text!r}")
    key, op, value = m.group(1), _OPS[m.group(2)], int(m.group(3))

    def check(r: InvariantReport) -> bool:
        got = r.get(key)
        if got is None:
            return key == "girth" and r.girth is not None and op in (operator.ge, operator.gt)
        return op(got, value)

    _DUMMY.get(key)
    return check


_DUMMY = InvariantReport(0, 0, 0, 0, 0, 0, True, True)


@dataclass
class ExploreStats:
    examined: int = 0
    certified: int = 0
    skipped: int = 0
    duplicates: int = 0
    emitted: int = 0

    def to_json(self) -> dict:
        return dict(self.__dict__)


def _letters(d: int) -> tuple[str, ...]:
    return tuple("abcdefghijklmnopqrstuvwxyz"[:d])


def _is_factor(small: Word, big: Word) -> bool:
    k = len(small)
    return any(big[i:i + k] == small for i in range(len(big) - k + 1))


def _antichain(words: set[Word]) -> frozenset[Word]:
    kept: list[Word] = []
    for w in sorted(words, key=shortlex_key):
        if not any(_is_factor(k, w) for k in kept):
            kept.append(w)
    return frozenset(kept)


def monomial_antichains(d: int, max_len: int) -> Iterator[frozenset[Word]]:
    """Every factor-antichain of words of length <= ``max_len``, depth-first, inclusion tried first.

    Distinct antichains present distinct monomial semigroups, so this lists
    the space without repeats.
    """
    words = [w for k in range(1, max_len + 1) for w in product(range(d), repeat=k)]
    chosen: list[Word] = []

    def walk(i: int) -> Iterator[frozenset[Word]]:
        if i == len(words):
            yield frozenset(chosen)
            return
        w = words[i]
        if not any(_is_factor(c, w) for c in chosen):
            chosen.append(w)
            yield from walk(i + 1)
            chosen.pop()
        yield from walk(i + 1)

    yield from walk(0)


def random_monomial_presentation(rng: random.Random, d: int, max_len: int) -> Presentation:
    """Random monomial presentation on ``d`` generators with relation words of length <= ``max_len``.

    Half of the draws also carry an ``allzero`` cap, which keeps most of them
    nilpotent within a small working length.
    """
    n_rel = rng.randint(1, 3 * d)
    words: set[Word] = set()
    for _ in range(n_rel):
        k = 1 if rng.random() < 0.03 else rng.randint(2, max(2, max_len))
        words.add(tuple(rng.randrange(d) for _ in range(k)))
    cap = None
    if max_len >= 3 and rng.random() < 0.5:
        cap = rng.randint(3, max_len)
        words = {w for w in words if len(w) < cap}
    return Presentation(_letters(d), _antichain(words), frozenset(), allzero=cap)


def explore(
    d: int,
    max_len: int,
    budget: int,
    seed: int = 0,
    filters: list[ReportFilter] | None = None,
    exhaustive: bool = False,
    enum_budget: EnumerationBudget | None = None,
    stats: ExploreStats | None = None,
) -> Iterator[tuple[Presentation, FiniteSemigroup, InvariantReport]]:
    """Analyze up to ``budget`` certified monomial presentations; yield those passing ``filters``.

    Exhaustive mode walks ``monomial_antichains``; otherwise draws are seeded by
    ``seed`` and repeats are dropped.  Presentations without a finiteness
    certificate are skipped and counted.
    """
    if d < 1 or max_len < 2:
        raise ValueError("need d >= 1 and max_len >= 2")
    filters = filters or []
    stats = stats if stats is not None else ExploreStats()
    enum_budget = enum_budget or EnumerationBudget(max_word_length=8, max_classes=2000)
    gens = _letters(d)

    if exhaustive:
        source: Iterator[Presentation] = (Presentation(gens, ac) for ac in monomial_antichains(d, max_len))
    else:
        rng = random.Random(seed)

        def draws() -> Iterator[Presentation]:
            seen: set[str] = set()
            for _ in range(200 * budget):
                p = random_monomial_presentation(rng, d, max_len)
                key = p.encode()
                if key in seen:
                    stats.duplicates += 1
                    continue
                seen.add(key)
                yield p

        source = draws()

    for p in source:
        if stats.certified >= budget:
            break
        stats.examined += 1
        try:
            s, _ = enumerate_semigroup(p, enum_budget)
        except BudgetExceeded:
            stats.skipped += 1
            continue
        stats.certified += 1
        report = semigroup_report(s, rank_cap=d)
        if all(f(report) for f in filters):
            stats.emitted += 1
            yield p, s, report
