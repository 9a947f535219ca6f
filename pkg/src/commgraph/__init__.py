"""Finite semigroups from presentations, their commuting graphs, and exact invariants."""

from .graphs import (
    DISCONNECTED,
    INFINITE,
    Graph,
    InvariantReport,
    are_isomorphic,
    chromatic_number,
    clique_number,
    commuting_graph,
    diameter,
    girth,
    is_star_free,
    join,
)
from .knit import LeftPath, is_left_path, knit_degree
from .semigroup import (
    FiniteSemigroup,
    center,
    nilpotency_data,
    null_union,
    power_set,
    prop6_hypothesis,
    rank,
)
from .wordcore import (
    BudgetExceeded,
    EnumerationBudget,
    Presentation,
    enumerate_semigroup,
    normal_form,
    parse_presentation,
    reduce_zero,
)

__all__ = [
    "DISCONNECTED",
    "INFINITE",
    "BudgetExceeded",
    "EnumerationBudget",
    "FiniteSemigroup",
    "Graph",
    "InvariantReport",
    "LeftPath",
    "Presentation",
    "are_isomorphic",
    "center",
    "chromatic_number",
    "clique_number",
    "commuting_graph",
    "diameter",
    "enumerate_semigroup",
    "girth",
    "is_left_path",
    "is_star_free",
    "join",
    "knit_degree",
    "nilpotency_data",
    "normal_form",
    "null_union",
    "parse_presentation",
    "power_set",
    "prop6_hypothesis",
    "rank",
    "reduce_zero",
]
