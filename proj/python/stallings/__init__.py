"""Stallings core graphs for finitely generated subgroups of free groups.

Thin wrapper over the C++ core: subgroup ranks, meets, joins, topological
pushouts, the bipartite decomposition report, rank-tuple classification,
witness construction and the seeded conjecture search.
"""

from _stallings import (
    Subgroup,
    a_sequence,
    classify,
    construct_witness,
    dicks_report,
    has_nonmonochromatic_cycle,
    join_graph,
    meet,
    pushout_rank,
    rank_profile,
    reduce_word,
    search_report,
    sigma,
    theta_embed,
)

__all__ = [
    "Subgroup",
    "a_sequence",
    "classify",
    "construct_witness",
    "dicks_report",
    "has_nonmonochromatic_cycle",
    "join_graph",
    "meet",
    "pushout_rank",
    "rank_profile",
    "reduce_word",
    "search_report",
    "sigma",
    "theta_embed",
]
