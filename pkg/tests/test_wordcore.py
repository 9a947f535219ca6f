import random
from itertools import product

import pytest

from commgraph.constructions import make_knit_example, make_S1, make_Sn, sn_budget
from commgraph.oracles import naive_enumerate
from commgraph.verify import random_presentation
from commgraph.wordcore import (
    ZERO,
    BudgetExceeded,
    EnumerationBudget,
    OutOfTable,
    Presentation,
    PresentationError,
    certificate_length,
    enumerate_semigroup,
    normal_form,
    parse_presentation,
    reduce_zero,
)


def test_reduce_zero_s1():
    p = make_S1()
    assert reduce_zero(p, p.word("aba")) == ZERO
    assert reduce_zero(p, p.word("ab")) == p.word("ab")


def test_reduce_zero_without_monomials():
    p = Presentation(("a", "b"))
    assert reduce_zero(p, (0, 1)) == (0, 1)


def test_reduce_zero_knit():
    p = make_knit_example()
    assert reduce_zero(p, p.word("x1 x2")) == ZERO
    assert reduce_zero(p, p.word("x1 x1")) == p.word("x1 x1")
    assert reduce_zero(p, p.word("x1 x1 x1")) == ZERO  # allzero: 3


def test_enumerate_s1():
    s, _ = enumerate_semigroup(make_S1())
    assert s.elements == ("0", "a", "b", "ab", "ba")


@pytest.mark.parametrize("n", range(1, 11))
def test_enumerate_sn_order(n):
    s, _ = enumerate_semigroup(make_Sn(n), sn_budget(n))
    assert s.order == 3 * n + 2


def test_enumerate_single_generator():
    s, _ = enumerate_semigroup(Presentation(("a",), frozenset({(0, 0)})))
    assert s.elements == ("0", "a")


def test_knit_example_matches_brute_force():
    p = make_knit_example()
    s, table = enumerate_semigroup(p)
    # brute-force closure over all words of length <= 3 (independent route)
    names, cayley = naive_enumerate(p, 3)
    assert s.elements == names and s.table == cayley
    # hand count: 0, four generators, 16 - 8 nonzero squares merged by the two equations
    assert s.order == 11
    assert normal_form(table, p.word("x1 x1")) == normal_form(table, p.word("x4 x1"))
    assert normal_form(table, p.word("x4 x4")) == normal_form(table, p.word("x1 x4"))


def test_normal_form_examples():
    p = make_knit_example()
    _, table = enumerate_semigroup(p)
    assert normal_form(table, p.word("x4 x4")) == p.word("x1 x4")
    assert normal_form(table, ZERO) == ZERO
    p2 = make_Sn(2)
    _, t2 = enumerate_semigroup(p2)
    assert normal_form(t2, p2.word("baa")) == p2.word("baa")


def test_normal_form_idempotent_and_bad_letters():
    p = make_knit_example()
    _, table = enumerate_semigroup(p)
    for k in range(1, 4):
        for w in product(range(4), repeat=k):
            nf = normal_form(table, w)
            assert normal_form(table, nf) == nf
    with pytest.raises(OutOfTable):
        normal_form(table, (7,))


def test_free_semigroup_exceeds_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_semigroup(Presentation(("a", "b")))


def test_class_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_semigroup(make_Sn(3), EnumerationBudget(max_classes=5))


def test_budget_must_be_positive():
    with pytest.raises(ValueError):
        EnumerationBudget(max_word_length=0)


def test_band_like_presentation_rejected():
    # a^2 = a is finite but not nilpotent: the certificate cannot hold
    with pytest.raises(BudgetExceeded):
        enumerate_semigroup(Presentation(("a",), frozenset(), frozenset({((0, 0), (0,))})))


def test_certificate_length():
    assert certificate_length(make_Sn(3)) == 5
    assert certificate_length(make_knit_example()) == 3


def test_equation_collapsing_to_zero():
    # a = ab forces a = ab^k = 0 once long words vanish
    p = Presentation(("a", "b"), frozenset(), frozenset({((0,), (0, 1))}), allzero=4)
    s, _ = enumerate_semigroup(p)
    assert "a" not in s.elements
    assert (s.elements, s.table) == naive_enumerate(p, 8)


def test_generator_killed_by_relation():
    p = Presentation(("a", "b"), frozenset({(0,), (1, 1)}))
    s, _ = enumerate_semigroup(p)
    assert s.elements == ("0", "b")
    assert s.generators == (0, 1)


def test_congruence_soundness_and_zero_absorption():
    for p in (make_knit_example(), make_Sn(3), make_S1()):
        s, table = enumerate_semigroup(p, sn_budget(3))
        for x in range(s.order):
            assert s.table[0][x] == 0 and s.table[x][0] == 0
        # u ~ v implies gu ~ gv and ug ~ vg, checked on every pair of short words
        L = table.working_length
        words = [w for k in range(1, L) for w in product(range(p.rank), repeat=k)]
        for u in words:
            for v in words:
                if table.class_of(u) != table.class_of(v):
                    continue
                for g in range(p.rank):
                    assert table.class_of((g,) + u) == table.class_of((g,) + v)
                    assert table.class_of(u + (g,)) == table.class_of(v + (g,))


def test_determinism():
    p = make_knit_example()
    a, _ = enumerate_semigroup(p)
    b, _ = enumerate_semigroup(p)
    assert a.elements == b.elements and a.table == b.table


def test_oracle_equivalence_small_sample():
    rng = random.Random(11)
    compared = 0
    while compared < 30:
        p = random_presentation(rng)
        try:
            s, _ = enumerate_semigroup(p, EnumerationBudget(max_word_length=4))
        except BudgetExceeded:
            with pytest.raises(BudgetExceeded):
                naive_enumerate(p, 4)
            continue
        assert (s.elements, s.table) == naive_enumerate(p, 4), p.encode()
        compared += 1


def test_enumerated_tables_are_semigroups():
    for p in (make_knit_example(), make_Sn(4), make_S1()):
        s, _ = enumerate_semigroup(p, sn_budget(4))
        s.check()


# --- file format -----------------------------------------------------------

def test_parse_presentation_roundtrip(fixtures):
    p = parse_presentation((fixtures / "knit.pres").read_text())
    assert p == make_knit_example()
    assert parse_presentation(p.to_text()) == p


def test_parse_power_shorthand():
    p = parse_presentation("gens: a b\nrel: a^3 = 0\nrel: b a^2 b = 0\n")
    assert p.monomial_relations == {(0, 0, 0), (1, 0, 0, 1)}


def test_parse_sn_fixture(fixtures):
    assert parse_presentation((fixtures / "sn3.pres").read_text()) == make_Sn(3)


@pytest.mark.parametrize(
    "text, line",
    [
        ("gens: a b\nrel: a c = 0\n", 2),
        ("gens: a b\n\n# comment\nrel: a = b = 0\n", 4),
        ("gens: a b\nrel: a^0 = 0\n", 2),
        ("rel: a = 0\ngens: a\n", 1),
        ("gens: a a\n", 1),
        ("gens: a\nrel: a = a\n", 2),
        ("gens: a\nfoo: 1\n", 2),
        ("gens: a\nallzero: x\n", 2),
        ("gens: 1a\n", 1),
    ],
)
def test_parse_errors_report_lines(text, line):
    with pytest.raises(PresentationError) as info:
        parse_presentation(text)
    assert info.value.line == line
    assert f"line {line}" in str(info.value)


def test_missing_gens():
    with pytest.raises(PresentationError):
        parse_presentation("# nothing\n")


def test_presentation_validation():
    with pytest.raises(PresentationError):
        Presentation(("a",), frozenset({(0, 1)}))
    with pytest.raises(PresentationError):
        Presentation(("a", "a"))
    with pytest.raises(PresentationError):
        Presentation(("a",), frozenset({()}))


def test_parse_compact_words():
    p = parse_presentation("gens: a b\nrel: aba = 0\nrel: ba^2b = 0\nrel: a^2b = b a\n")
    assert p.monomial_relations == {(0, 1, 0), (1, 0, 0, 1)}
    assert {frozenset(e) for e in p.equational_relations} == {frozenset({(0, 0, 1), (1, 0)})}
    with pytest.raises(PresentationError):
        parse_presentation("gens: a b\nrel: abc = 0\n")
    with pytest.raises(PresentationError):
        parse_presentation("gens: x1 x2\nrel: x1x2 = 0\n")


@pytest.mark.parametrize("p", [make_Sn(4), make_knit_example()], ids=["S_4", "knit"])
def test_element_names_parse_back(p):
    s, _ = enumerate_semigroup(p)
    for name, w in zip(s.elements[1:], s.words[1:]):
        assert p.word(name) == w
