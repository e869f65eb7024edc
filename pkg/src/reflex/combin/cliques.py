"""Maximal cliques and the statistics built on them."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .graph import CompatibilityGraph, bits


def degeneracy_order(g: CompatibilityGraph) -> list[int]:
    """Repeatedly remove a vertex of least remaining degree (ties: least index)."""
    left = (1 << g.n) - 1
    order = []
    while left:
        v = min(bits(left), key=lambda i: ((g.adj[i] & left).bit_count(), i))
        order.append(v)
        left &= ~(1 << v)
    return order


def maximal_cliques(g: CompatibilityGraph) -> list[tuple[int, ...]]:
    """All maximal cliques, each sorted, the list sorted lexicographically.

    Bron-Kerbosch with Tomita pivoting, seeded along a degeneracy ordering.
    """
    adj = g.adj
    out: list[tuple[int, ...]] = []

    def expand(r: list[int], p: int, x: int) -> None:
        if not p and not x:
            out.append(tuple(sorted(r)))
            return
        # pivot maximizing |P & N(u)| over P | X
        u = max(bits(p | x), key=lambda w: (adj[w] & p).bit_count())
        for v in bits(p & ~adj[u]):
            r.append(v)
            expand(r, p & adj[v], x & adj[v])
            r.pop()
            p &= ~(1 << v)
            x |= 1 << v

    later = (1 << g.n) - 1
    done = 0
    for v in degeneracy_order(g):
        later &= ~(1 << v)
        expand([v], adj[v] & later, adj[v] & done)
        done |= 1 << v
    out.sort()
    return out


def is_clique(g: CompatibilityGraph, vs: Sequence[int]) -> bool:
    return all(g.has_edge(a, b) for a, b in combinations(vs, 2))


def is_maximal_clique(g: CompatibilityGraph, vs: Sequence[int]) -> bool:
    if not is_clique(g, vs):
        return False
    common = (1 << g.n) - 1
    for v in vs:
        common &= g.adj[v]
    return common == 0


@dataclass(frozen=True)
class CliqueStats:
    per_vertex: tuple[int, ...]
    per_pair: dict  # (i, j) with i < j -> number of cliques containing both

    @property
    def vertex_histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(self.per_vertex).items()))

    @property
    def pair_histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(self.per_pair.values()).items()))


def clique_stats(cliques: Sequence[Sequence[int]], n: int) -> CliqueStats:
    """Membership counts for every vertex and every unordered pair of ``range(n)``."""
    per_vertex = [0] * n
    per_pair = {(i, j): 0 for i in range(n) for j in range(i + 1, n)}
    for c in cliques:
        for v in c:
            per_vertex[v] += 1
        for a, b in combinations(sorted(c), 2):
            per_pair[a, b] += 1
    return CliqueStats(tuple(per_vertex), per_pair)


def exceptional_classes(stats: CliqueStats, n: int, threshold: int = 2) -> list[tuple[int, ...]]:
    """Connected components of the graph of pairs lying in at least ``threshold`` cliques.

    Components are sorted internally and listed by least member.
    """
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for (a, b), c in stats.per_pair.items():
        if c >= threshold:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    comps: dict[int, list[int]] = {}
    for v in range(n):
        comps.setdefault(find(v), []).append(v)
    return sorted(tuple(c) for c in comps.values())
