"""Undirected simple graphs on labelled vertices, stored as int bitmasks."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from ..errors import InvalidPartition


@dataclass(frozen=True)
class CompatibilityGraph:
    """``adj[i]`` has bit ``j`` set iff ``{i, j}`` is an edge. Vertex order is the input order."""

    labels: tuple[str, ...]
    adj: tuple[int, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.adj):
            raise ValueError("one adjacency mask per label required")
        for i, m in enumerate(self.adj):
            if m >> i & 1:
                raise ValueError(f"self-loop at vertex {i}")
            if m >> len(self.adj):
                raise ValueError(f"vertex {i} has neighbours outside the graph")
            for j in bits(m):
                if not self.adj[j] >> i & 1:
                    raise ValueError(f"adjacency not symmetric at ({i}, {j})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], labels: Sequence[str] | None = None):
        adj = [0] * n
        for i, j in edges:
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        return cls(labels, tuple(adj))

    def __len__(self) -> int:
        return len(self.adj)

    @property
    def n(self) -> int:
        return len(self.adj)

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adj[i] >> j & 1)

    def neighbours(self, i: int) -> list[int]:
        return list(bits(self.adj[i]))

    def degrees(self) -> list[int]:
        return [m.bit_count() for m in self.adj]

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in bits(self.adj[i]) if i < j]

    def regular_degree(self) -> int | None:
        deg = set(self.degrees())
        return deg.pop() if len(deg) == 1 else None


def bits(m: int):
    """Indices of the set bits of ``m`` in increasing order."""
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


def build_graph(candidates: Sequence, jobs: int = 1) -> CompatibilityGraph:
    """Edge ``{i, j}`` iff each candidate is compatible with the other."""
    from ..product import compatible

    n = len(candidates)
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]

    def test(p):
        return compatible(candidates[p[0]], candidates[p[1]])

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            ok = list(pool.map(test, pairs))
    else:
        ok = [test(p) for p in pairs]
    directed = {p for p, good in zip(pairs, ok) if good}
    edges = [(i, j) for i, j in directed if i < j and (j, i) in directed]
    return CompatibilityGraph.from_edges(n, edges, [c.label for c in candidates])


def asymmetric_pairs(candidates: Sequence) -> list[tuple[int, int]]:
    """Ordered pairs where compatibility holds one way only."""
    from ..product import compatible

    n = len(candidates)
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            if compatible(candidates[i], candidates[j]) != compatible(candidates[j], candidates[i]):
                out.append((i, j))
    return out


def srg_params(g: CompatibilityGraph) -> tuple[int, int, int, int] | None:
    """``(n, k, lambda, mu)`` if ``g`` is strongly regular; None otherwise.

    Complete and edgeless graphs are excluded.
    """
    n = g.n
    k = g.regular_degree()
    if k is None or k == 0 or k == n - 1:
        return None
    lam = mu = None
    for i in range(n):
        for j in range(i + 1, n):
            c = (g.adj[i] & g.adj[j]).bit_count()
            if g.has_edge(i, j):
                if lam is None:
                    lam = c
                elif c != lam:
                    return None
            else:
                if mu is None:
                    mu = c
                elif c != mu:
                    return None
    return n, k, lam, mu


def contract(g: CompatibilityGraph, partition: Sequence[Sequence[int]]) -> CompatibilityGraph:
    """Quotient graph: two classes are adjacent iff some edge joins them.

    Classes keep the order given; each is labelled by its members' labels.
    """
    seen = {}
    for c, block in enumerate(partition):
        if not block:
            raise InvalidPartition(f"class {c} is empty")
        for v in block:
            if not 0 <= v < g.n:
                raise InvalidPartition(f"vertex {v} is out of range")
            if v in seen:
                raise InvalidPartition(f"vertex {v} appears in classes {seen[v]} and {c}")
            seen[v] = c
    if len(seen) != g.n:
        missing = sorted(set(range(g.n)) - set(seen))
        raise InvalidPartition(f"vertices {missing} are not covered")
    masks = [sum(1 << v for v in block) for block in partition]
    adj = []
    for a, block in enumerate(partition):
        reach = 0
        for v in block:
            reach |= g.adj[v]
        adj.append(sum(1 << b for b, m in enumerate(masks) if b != a and reach & m))
    labels = tuple("+".join(g.labels[v] for v in block) for block in partition)
    return CompatibilityGraph(labels, tuple(adj))
