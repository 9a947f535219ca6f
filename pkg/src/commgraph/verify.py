"""Verification suites.

Each suite runs a list of cases and stops recording failures after the first
one (the rest still run and are counted).  ``observer`` is called with every
semigroup a suite builds, so callers can audit global properties such as
star-freeness of the commuting graph across all of them.
"""

from __future__ import annotations

import random
import string
import time
from dataclasses import dataclass, field
from typing import Callable, Iterator

from . import constructions as C
from .graphs import (
    INFINITE,
    Graph,
    are_isomorphic,
    clique_number,
    commuting_graph,
    diameter,
    girth,
    is_connected,
    is_star_free,
    join,
)
from .knit import certifies, is_left_path, knit_degree, shortest_left_path_exhaustive, simple_paths, walks
from .oracles import brute_clique_number, brute_girth, naive_enumerate
from .semigroup import (
    FiniteSemigroup,
    center,
    check_prop6_witness,
    closure,
    embeddings,
    generating_witness,
    is_automorphism,
    null_union,
    prop6_hypothesis,
    rank,
)
from .wordcore import BudgetExceeded, EnumerationBudget, Presentation, enumerate_semigroup

Observer = Callable[[str, FiniteSemigroup], None]
SUITES = ("prop3", "prop5", "prop6", "knit3", "rank", "nullunion", "oracle")


@dataclass
class SuiteResult:
    suite: str
    run: int = 0
    passed: int = 0
    first_failure: str | None = None
    wall_time: float = 0.0
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.passed == self.run

    def record(self, ok: bool, description: str) -> None:
        self.run += 1
        if ok:
            self.passed += 1
        elif self.first_failure is None:
            self.first_failure = description

    def to_json(self, timing: bool = True) -> dict:
        out = {
            "suite": self.suite,
            "run": self.run,
            "passed": self.passed,
            "ok": self.ok,
            "first_failure": self.first_failure,
        }
        if self.details:
            out["details"] = self.details
        if timing:
            out["wall_time"] = round(self.wall_time, 3)
        return out


def _noop(tag: str, s: FiniteSemigroup) -> None:
    pass


def _fails(checks: dict[str, bool]) -> list[str]:
    return [name for name, ok in checks.items() if not ok]


def _timed(fn):
    def wrapper(*args, **kwargs) -> SuiteResult:
        start = time.perf_counter()
        result = fn(*args, **kwargs)
        result.wall_time = time.perf_counter() - start
        return result

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


@_timed
def verify_prop3(n_max: int = 5, observer: Observer = _noop) -> SuiteResult:
    """Every star-free labeled graph on 1..n_max vertices, both realization variants."""
    res = SuiteResult("prop3")
    for n in range(1, n_max + 1):
        for g in C.all_labeled_graphs(n):
            if not is_star_free(g):
                continue
            checks = {}
            for variant in C.Variant:
                s, _ = enumerate_semigroup(C.realize_graph(g, variant))
                observer(f"prop3:{variant.value}", s)
                gamma = commuting_graph(s)
                checks[f"{variant.value} round trip"] = gamma.labels == g.labels and gamma.same_labeled(g)
                if variant is C.Variant.EQUATIONAL:
                    checks["order formula"] = s.order == C.realized_order(g)
            bad = _fails(checks)
            res.record(not bad, f"graph {g.to_json()}: {', '.join(bad)}")
    return res


@_timed
def verify_prop5(n_max: int = 8, rank_n_max: int = 4, observer: Observer = _noop) -> SuiteResult:
    """S_n: order, center, graph order, clique number, the explicit clique; S_n * S_1: clique number and 4 generators."""
    res = SuiteResult("prop5")
    for n in range(1, n_max + 1):
        p = C.make_Sn(n)
        s = C.enumerate_Sn(n)
        observer(f"S_{n}", s)
        a_n_b = p.render((0,) * n + (1,))
        b_a_n = p.render((1,) + (0,) * n)
        g = commuting_graph(s)
        clique = [p.render((0,) * i + (1,)) for i in range(1, n)]
        clique += [p.render((1,) + (0,) * j) for j in range(1, n)]
        clique += ["b"]
        pos = {lab: i for i, lab in enumerate(g.labels)}
        powers_of_a = [p.render((0,) * i) for i in range(1, n + 1)]
        u = C.make_Sn_bullet_S1(n)
        observer(f"S_{n}*S_1", u)
        gens4 = [u.index(x) for x in ("a", "b", "t:a", "t:b")]
        checks = {
            "order 3n+2": s.order == 3 * n + 2,
            "center": {s.elements[x] for x in center(s)} == {"0", a_n_b, b_a_n},
            "graph order 3n-1": g.order == 3 * n - 1,
            "clique number 2n-1": clique_number(g) == 2 * n - 1,
            "explicit clique": len(set(clique)) == 2 * n - 1
            and all(g.has_edge(pos[x], pos[y]) for i, x in enumerate(clique) for y in clique[i + 1:]),
            "b avoids powers of a": all(not g.has_edge(pos["b"], pos[x]) for x in powers_of_a if x in pos),
            "S_n*S_1 clique number 2n": clique_number(commuting_graph(u)) == 2 * n,
            "S_n*S_1 4 generators": closure(u, gens4) == set(range(u.order)),
        }
        if n <= rank_n_max:
            checks["S_n*S_1 rank <= 4"] = rank(u, cap=4) <= 4
        bad = _fails(checks)
        res.record(not bad, f"n={n}: {', '.join(bad)}")
    return res


def prop6_corpus(samples: int, seed: int, max_len: int = 4) -> Iterator[tuple[Presentation, FiniteSemigroup]]:
    """``samples`` distinct certified random monomial presentations on 2, 3 or 4 generators."""
    rng = random.Random(seed)
    budget = EnumerationBudget(max_word_length=8, max_classes=150)
    seen: set[str] = set()
    produced = 0
    attempts = 0
    while produced < samples:
        attempts += 1
        if attempts > 500 * samples:
            raise RuntimeError("could not draw enough certified presentations")
        d = rng.choice((2, 3, 4))
        p = C.random_monomial_presentation(rng, d, max_len)
        key = p.encode()
        if key in seen:
            continue
        seen.add(key)
        try:
            s, _ = enumerate_semigroup(p, budget)
        except BudgetExceeded:
            continue
        produced += 1
        yield p, s


@_timed
def verify_prop6(samples: int = 1000, seed: int = 7, observer: Observer = _noop) -> SuiteResult:
    """Diameter <= rank + 2 whenever the ideal hypothesis holds and the commuting graph is connected."""
    res = SuiteResult("prop6")
    applicable = 0
    by_d: dict[int, int] = {}
    max_gap = None
    for p, s in prop6_corpus(samples, seed):
        observer("prop6", s)
        by_d[p.rank] = by_d.get(p.rank, 0) + 1
        g = commuting_graph(s)
        witness = prop6_hypothesis(s)
        checks = {"star-free": is_star_free(g)}
        if witness is not None:
            checks["witness valid"] = check_prop6_witness(s, witness)
        if witness is not None and g.order > 0 and is_connected(g):
            applicable += 1
            r = rank(s, cap=p.rank)
            diam = diameter(g)
            checks["diameter <= rank + 2"] = diam <= r + 2
            checks["diameter <= d + 2"] = diam <= p.rank + 2
            gap = diam - (r + 2)
            max_gap = gap if max_gap is None else max(max_gap, gap)
        bad = _fails(checks)
        res.record(not bad, f"{p.encode()}: {', '.join(bad)}")
    res.details = {"applicable": applicable, "by_generators": dict(sorted(by_d.items())), "max_diameter_minus_bound": max_gap}
    return res


@_timed
def verify_knit3(observer: Observer = _noop) -> SuiteResult:
    """The four-generator example: labeled path graph, knit degree 3, no shorter left path or walk, swap automorphism."""
    res = SuiteResult("knit3")
    p = C.make_knit_example()
    s, table = enumerate_semigroup(p)
    observer("knit", s)
    g = commuting_graph(s)
    path = C.make_path(4).relabel(["x1", "x2", "x3", "x4"])
    idx = [s.index(x) for x in ("x1", "x2", "x3", "x4")]
    short_paths = [q for k in (1, 2) for q in simple_paths(s, k)]
    short_walks = [q for k in (1, 2) for q in walks(s, k)]
    perm = C.induced_permutation(s, table, C.KNIT_SWAP)
    x1, x2, x3, x4 = idx
    checks = {
        "graph is the labeled path": g.labels == path.labels and g.same_labeled(path),
        "x1-x2-x3-x4 is a left path": is_left_path(s, idx),
        "knit degree 3": knit_degree(s) == 3,
        "exhaustive search agrees": getattr(shortest_left_path_exhaustive(s), "length", None) == 3,
        "no left path of length 1 or 2": not any(certifies(s, q) for q in short_paths),
        "no left walk of length 1 or 2": not any(certifies(s, q) for q in short_walks),
        "x1-x2, x2-x3, x1-x2-x3 fail": not any(is_left_path(s, q) for q in ((x1, x2), (x2, x3), (x1, x2, x3))),
        "swap is an automorphism": is_automorphism(s, perm),
        "x1^2 = x4 x1": s.table[x1][x1] == s.table[x4][x1],
        "x4^2 = x1 x4": s.table[x4][x4] == s.table[x1][x4],
    }
    for name, ok in checks.items():
        res.record(ok, name)
    res.details = {"order": s.order, "paths_checked": len(short_paths), "walks_checked": len(short_walks)}
    return res


@_timed
def verify_rank(observer: Observer = _noop) -> SuiteResult:
    """Exhaustive rank of the realized C_4, S'_n, the realized (2n-2)-regular graphs, and S_n."""
    res = SuiteResult("rank")
    c4, _ = enumerate_semigroup(C.realize_graph(C.make_cycle(4), C.Variant.MONOMIAL))
    observer("C4", c4)
    res.record(rank(c4) == 4 and generating_witness(c4, 4) == tuple(range(1, 5)), "rank of realized C_4 is 4")
    for n in (1, 2, 3):
        sp = C.make_S_prime(n)
        observer(f"S'_{n}", sp)
        res.record(rank(sp) == 2 * n, f"rank of S'_{n} is {2 * n}")
        res.record(clique_number(commuting_graph(sp)) == n, f"clique number of S'_{n} is {n}")
    for n in (2, 3):
        for variant in C.Variant:
            s, _ = enumerate_semigroup(C.realize_graph(C.make_cocktail_party(n), variant))
            observer(f"cocktail{n}", s)
            res.record(rank(s) == 2 * n, f"rank of realized {2 * n - 2}-regular graph on {2 * n} vertices ({variant.value})")
    for n in range(1, 6):
        s = C.enumerate_Sn(n)
        observer(f"S_{n}", s)
        res.record(rank(s) == 2, f"rank of S_{n} is 2")
    c5, _ = enumerate_semigroup(C.realize_graph(C.make_cycle(5), C.Variant.MONOMIAL))
    observer("C5", c5)
    res.details = {"realized_C5_rank": rank(c5)}
    return res


def _nullunion_pool() -> list[tuple[str, FiniteSemigroup]]:
    pool = [(f"S_{n}", C.enumerate_Sn(n)) for n in (1, 2, 3)]
    pool.append(("knit", enumerate_semigroup(C.make_knit_example())[0]))
    for name, g in (("C4", C.make_cycle(4)), ("P4", C.make_path(4)), ("K2bar", C.make_edgeless(2))):
        pool.append((name, enumerate_semigroup(C.realize_graph(g))[0]))
    pool.append(("trivial", FiniteSemigroup(("0",), ((0,),), (0,))))
    return pool


@_timed
def verify_nullunion(observer: Observer = _noop) -> SuiteResult:
    """Order, center, commuting graph (as a labeled join) and clique additivity of null unions."""
    res = SuiteResult("nullunion")
    pool = _nullunion_pool()
    for name_s, s in pool:
        for name_t, t in pool:
            u = null_union(s, t)
            observer(f"{name_s}*{name_t}", u)
            es, et = embeddings(s, t)
            gs, gt, gu = commuting_graph(s), commuting_graph(t), commuting_graph(u)
            joined = join(gs, gt, tags=("1:", "2:"))
            expected_center = {es[x] for x in center(s)} | {et[x] for x in center(t)}
            checks = {
                "order": u.order == s.order + t.order - 1,
                "associative": _associative(u),
                "center": set(center(u)) == expected_center,
                "graph is the join": gu.labels == joined.labels and gu.same_labeled(joined),
                "clique additivity": clique_number(gu) == clique_number(gs) + clique_number(gt),
                "star-free": is_star_free(gu),
            }
            bad = _fails(checks)
            res.record(not bad, f"{name_s} * {name_t}: {', '.join(bad)}")
    s1 = C.enumerate_Sn(1)
    g11 = commuting_graph(null_union(s1, s1))
    res.record(are_isomorphic(g11, C.make_cycle(4)), "S_1 * S_1 has commuting graph C_4")
    return res


def _associative(s: FiniteSemigroup) -> bool:
    try:
        s.check()
    except ValueError:
        return False
    return True


def random_presentation(rng: random.Random, max_gens: int = 3, cap: int = 4) -> Presentation:
    """Random presentation with monomial and equational relations, for oracle comparisons."""
    d = rng.randint(1, max_gens)
    gens = tuple(string.ascii_lowercase[:d])

    def word(lo: int, hi: int) -> tuple[int, ...]:
        return tuple(rng.randrange(d) for _ in range(rng.randint(lo, hi)))

    mono = {word(1, 3) for _ in range(rng.randint(0, 3))}
    eqs = set()
    for _ in range(rng.randint(0, 3)):
        u, v = word(1, 3), word(1, 3)
        if u != v:
            eqs.add((u, v))
    allzero = rng.choice((None, max(2, cap - 1), cap, cap, cap))
    return Presentation(gens, frozenset(mono), frozenset(eqs), allzero)


def random_graph(rng: random.Random, max_order: int) -> Graph:
    n = rng.randint(0, max_order)
    density = rng.random()
    labels = [f"v{i}" for i in range(1, n + 1)]
    return Graph.from_edges(labels, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < density])


@_timed
def verify_oracle(samples: int = 100, graph_samples: int = 200, seed: int = 7, observer: Observer = _noop) -> SuiteResult:
    """Kernel vs naive rescan on random presentations; clique and girth vs brute force on random graphs."""
    res = SuiteResult("oracle")
    rng = random.Random(seed)
    budget = EnumerationBudget(max_word_length=4)
    compared = rejected = 0
    while compared < samples:
        p = random_presentation(rng)
        try:
            s, _ = enumerate_semigroup(p, budget)
        except BudgetExceeded:
            try:
                naive_enumerate(p, 4)
                res.record(False, f"{p.encode()}: kernel rejected, oracle certified")
            except BudgetExceeded:
                rejected += 1
            continue
        observer("oracle", s)
        names, table = naive_enumerate(p, 4)
        compared += 1
        res.record(names == s.elements and table == s.table, f"{p.encode()}: tables differ")
    for _ in range(graph_samples):
        g = random_graph(rng, 12)
        res.record(clique_number(g) == brute_clique_number(g), f"clique mismatch on {g.to_json()}")
    for _ in range(graph_samples):
        g = random_graph(rng, 10)
        got = girth(g)
        want = brute_girth(g)
        res.record((got is INFINITE and want is None) or got == want, f"girth mismatch on {g.to_json()}")
    res.details = {"presentations_compared": compared, "presentations_rejected_by_both": rejected}
    return res


def run_suite(name: str, n_max: int | None = None, samples: int | None = None, seed: int | None = None,
              observer: Observer = _noop) -> SuiteResult:
    kwargs: dict = {"observer": observer}
    if name == "prop3":
        return verify_prop3(n_max=n_max or 5, **kwargs)
    if name == "prop5":
        return verify_prop5(n_max=n_max or 8, **kwargs)
    if name == "prop6":
        return verify_prop6(samples=samples or 1000, seed=7 if seed is None else seed, **kwargs)
    if name == "knit3":
        return verify_knit3(**kwargs)
    if name == "rank":
        return verify_rank(**kwargs)
    if name == "nullunion":
        return verify_nullunion(**kwargs)
    if name == "oracle":
        return verify_oracle(samples=samples or 100, seed=7 if seed is None else seed, **kwargs)
    raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")

