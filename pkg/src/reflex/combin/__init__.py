"""Graphs on product candidates and permutation groups."""

from .autom import AutomorphismResult, automorphism_group, automorphism_order, vertex_orbits
from .cliques import CliqueStats, clique_stats, exceptional_classes, is_maximal_clique, maximal_cliques
from .graph import CompatibilityGraph, asymmetric_pairs, build_graph, contract, srg_params
from .perms import PermutationGroup, closure_order, from_cycles, group_order, orbits

__all__ = [
    "AutomorphismResult",
    "CliqueStats",
    "CompatibilityGraph",
    "PermutationGroup",
    "asymmetric_pairs",
    "automorphism_group",
    "automorphism_order",
    "build_graph",
    "clique_stats",
    "closure_order",
    "contract",
    "exceptional_classes",
    "from_cycles",
    "group_order",
    "is_maximal_clique",
    "maximal_cliques",
    "orbits",
    "srg_params",
    "vertex_orbits",
]
