"""Acceptance criteria, one test each, with a PASS/FAIL line per criterion.

Run ``pytest tests/test_acceptance.py -v`` (the lines appear in the terminal
summary) or ``python3 tests/test_acceptance.py`` for the lines alone.
"""

import time

import pytest

from commgraph import constructions as C
from commgraph.graphs import clique_number, commuting_graph, is_star_free, parse_graph
from commgraph.knit import certifies, knit_degree, simple_paths, walks
from commgraph.semigroup import center, closure, is_automorphism, rank
from commgraph.verify import verify_knit3, verify_oracle, verify_prop3, verify_prop5, verify_prop6
from commgraph.wordcore import enumerate_semigroup

RESULTS: list[str] = []
OBSERVED: dict[int, list] = {}


def report(number, title, ok, elapsed, limit, detail=""):
    within = limit is None or elapsed < limit
    status = "PASS" if ok and within else "FAIL"
    budget = f" (limit {limit:g}s)" if limit is not None else ""
    line = f"[{status}] criterion {number}: {title} - {elapsed:.2f}s{budget}"
    if detail:
        line += f" - {detail}"
    RESULTS.append(line)
    return ok and within


def observer_for(number):
    bucket = OBSERVED.setdefault(number, [])
    return lambda tag, s: bucket.append((tag, s))


def test_criterion_1_sn_family():
    start = time.perf_counter()
    bad = []
    obs = observer_for(1)
    for n in range(1, 9):
        p = C.make_Sn(n)
        s = C.enumerate_Sn(n)
        obs(f"S_{n}", s)
        g = commuting_graph(s)
        want_center = {"0", p.render((0,) * n + (1,)), p.render((1,) + (0,) * n)}
        if not (
            s.order == 3 * n + 2
            and {s.elements[x] for x in center(s)} == want_center
            and g.order == 3 * n - 1
            and clique_number(g) == 2 * n - 1
        ):
            bad.append(n)
    elapsed = time.perf_counter() - start
    assert report(1, "S_n order, center, graph order, clique number (n=1..8)", not bad, elapsed, 5, f"failing n: {bad}" if bad else "8/8")


def test_criterion_2_sn_bullet_s1():
    start = time.perf_counter()
    bad = []
    obs = observer_for(2)
    for n in range(1, 9):
        u = C.make_Sn_bullet_S1(n)
        obs(f"S_{n}*S_1", u)
        gens = [u.index(x) for x in ("a", "b", "t:a", "t:b")]
        ok = clique_number(commuting_graph(u)) == 2 * n and closure(u, gens) == set(range(u.order))
        if n <= 4:
            ok = ok and rank(u, cap=4) <= 4
        if not ok:
            bad.append(n)
    # the suite covers the same ground plus the explicit cliques
    suite = verify_prop5(n_max=8, observer=obs)
    elapsed = time.perf_counter() - start
    ok = not bad and suite.ok
    assert report(2, "S_n * S_1 clique number 2n, 4 generators, rank <= 4 for n<=4", ok, elapsed, 30,
                  f"failing n: {bad}; suite {suite.passed}/{suite.run}")


def test_criterion_3_realization_round_trip():
    start = time.perf_counter()
    suite = verify_prop3(n_max=5, observer=observer_for(3))
    # independent count of the star-free labeled graphs on 1..5 vertices
    expected = sum(1 for n in range(1, 6) for g in C.all_labeled_graphs(n) if is_star_free(g))
    elapsed = time.perf_counter() - start
    ok = suite.ok and suite.run == expected
    assert report(3, "realization round trip on all star-free graphs with <= 5 vertices", ok, elapsed, 60,
                  f"{suite.passed}/{suite.run} graphs, first failure: {suite.first_failure}")


def test_criterion_4_knit_example():
    start = time.perf_counter()
    obs = observer_for(4)
    s, table = enumerate_semigroup(C.make_knit_example())
    obs("knit", s)
    expected = parse_graph("vertices: x1 x2 x3 x4\nedge: x1 x2\nedge: x2 x3\nedge: x3 x4\n")
    checks = [
        commuting_graph(s).same_labeled(expected),
        knit_degree(s) == 3,
        not any(certifies(s, q) for k in (1, 2) for q in simple_paths(s, k)),
        not any(certifies(s, q) for k in (1, 2) for q in walks(s, k)),
        is_automorphism(s, C.induced_permutation(s, table, C.KNIT_SWAP)),
    ]
    suite = verify_knit3()
    elapsed = time.perf_counter() - start
    ok = all(checks) and suite.ok
    assert report(4, "knit example: labeled path, knit degree 3, no short left path/walk, swap automorphism", ok,
                  elapsed, 1, f"suite {suite.passed}/{suite.run}")


def test_criterion_5_diameter_bound():
    start = time.perf_counter()
    suite = verify_prop6(samples=1000, seed=7, observer=observer_for(5))
    elapsed = time.perf_counter() - start
    d = suite.details
    ok = suite.ok and suite.run >= 1000
    assert report(5, "diameter <= rank + 2 on 1000 random monomial presentations", ok, elapsed, 120,
                  f"{suite.passed}/{suite.run}, applicable {d['applicable']}, by d {d['by_generators']}")


def _ensure_observed():
    # criterion 6 reuses whatever criteria 1-5 produced; rebuild it when run alone
    if 1 not in OBSERVED:
        obs = observer_for(1)
        for n in range(1, 9):
            obs(f"S_{n}", C.enumerate_Sn(n))
    if 2 not in OBSERVED:
        verify_prop5(n_max=8, observer=observer_for(2))
    if 3 not in OBSERVED:
        verify_prop3(n_max=5, observer=observer_for(3))
    if 4 not in OBSERVED:
        observer_for(4)("knit", enumerate_semigroup(C.make_knit_example())[0])
    if 5 not in OBSERVED:
        verify_prop6(samples=1000, seed=7, observer=observer_for(5))


def test_criterion_6_star_free():
    start = time.perf_counter()
    _ensure_observed()
    everything = [(tag, s) for n in range(1, 6) for tag, s in OBSERVED[n]]
    bad = [tag for tag, s in everything if not is_star_free(commuting_graph(s))]
    elapsed = time.perf_counter() - start
    assert report(6, "every commuting graph from criteria 1-5 is star-free", not bad and len(everything) > 0, elapsed,
                  None, f"{len(everything)} semigroups, {len(bad)} exceptions")


def test_criterion_7_rank():
    start = time.perf_counter()
    c4, _ = enumerate_semigroup(C.realize_graph(C.make_cycle(4), C.Variant.MONOMIAL))
    got = {"C4": rank(c4)}
    for n in (1, 2, 3):
        got[f"S'_{n}"] = rank(C.make_S_prime(n))
    want = {"C4": 4, "S'_1": 2, "S'_2": 4, "S'_3": 6}
    elapsed = time.perf_counter() - start
    assert report(7, "rank of realized C_4 is 4, rank of S'_n is 2n (n=1..3)", got == want, elapsed, 60, str(got))


def test_criterion_8_oracle():
    start = time.perf_counter()
    suite = verify_oracle(samples=100, graph_samples=200, seed=7)
    elapsed = time.perf_counter() - start
    d = suite.details
    ok = suite.ok and d["presentations_compared"] == 100 and suite.run == 100 + 400
    assert report(8, "kernel vs naive rescan (100), clique and girth vs brute force (200 each)", ok, elapsed, None,
                  f"{suite.passed}/{suite.run}, first failure: {suite.first_failure}")


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in list(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    print("\n".join(RESULTS))
    sys.exit(1 if failed else 0)
