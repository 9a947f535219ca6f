from __future__ import annotations

from .graphs import InvariantReport, commuting_graph, graph_report
from .knit import knit_degree
from .semigroup import CapExceeded, FiniteSemigroup, center, prop6_hypothesis, rank


def semigroup_report(s: FiniteSemigroup, rank_cap: int | None = None, with_rank: bool = True) -> InvariantReport:
    """Commuting-graph invariants plus order, center size, knit degree, rank and the ideal test.

    ``rank_cap`` defaults to the number of generators recorded on ``s``
    (or its order when none are recorded).
    """
    report = graph_report(commuting_graph(s))
    report.semigroup_order = s.order
    report.center_size = len(center(s))
    report.knit_degree = knit_degree(s)
    report.prop6_witness = prop6_hypothesis(s) is not None
    if with_rank:
        cap = rank_cap if rank_cap is not None else (len(s.generators) or s.order)
        try:
            report.rank = rank(s, cap)
        except CapExceeded:
            report.rank = None
    return report
