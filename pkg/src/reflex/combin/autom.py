"""Automorphism groups of small graphs.

Search tree of ordered partitions: each node is refined to an equitable
partition, then the first smallest non-singleton cell is split by
individualizing each of its vertices in turn. The group order comes from the
orbit-stabilizer theorem along the leftmost path; orbits at each level are
completed by searching, for every unresolved vertex, for one automorphism that
maps the leftmost leaf into that vertex's subtree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..errors import TooLarge
from .graph import CompatibilityGraph, bits
from .perms import Perm, PermutationGroup, orbits

MAX_VERTICES = 128

Partition = list[int]  # ordered list of cell bitmasks


def _refine(adj: Sequence[int], cells: Partition) -> tuple[Partition, list]:
    """Coarsest equitable refinement of ``cells``, plus a trace of the splits.

    Splitting depends only on cell positions and counts, never on vertex
    names, so isomorphic inputs produce isomorphic outputs and equal traces.
    """
    cells = list(cells)
    trace = []
    changed = True
    while changed:
        changed = False
        for s in range(len(cells)):
            w = cells[s]
            for c in range(len(cells)):
                cell = cells[c]
                if cell & (cell - 1) == 0:
                    continue
                groups: dict[int, int] = {}
                for v in bits(cell):
                    k = (adj[v] & w).bit_count()
                    groups[k] = groups.get(k, 0) | (1 << v)
                if len(groups) > 1:
                    keys = sorted(groups)
                    cells[c : c + 1] = [groups[k] for k in keys]
                    trace.append((s, c, tuple((k, groups[k].bit_count()) for k in keys)))
                    changed = True
                    break
            if changed:
                break
    return cells, trace


def _target(cells: Partition) -> int | None:
    """Index of the first smallest non-singleton cell."""
    best = None
    for i, c in enumerate(cells):
        size = c.bit_count()
        if size > 1 and (best is None or size < cells[best].bit_count()):
            best = i
    return best


def _individualize(cells: Partition, i: int, v: int) -> Partition:
    c = cells[i]
    return cells[:i] + [1 << v, c & ~(1 << v)] + cells[i + 1 :]


def _is_automorphism(adj: Sequence[int], p: Perm) -> bool:
    for i, m in enumerate(adj):
        img = 0
        for j in bits(m):
            img |= 1 << p[j]
        if adj[p[i]] != img:
            return False
    return True


def _initial(g: CompatibilityGraph, colors: Sequence | None) -> Partition:
    """Cells by (colour, degree, triangles through the vertex), in sorted key order."""
    adj = g.adj
    keys = {}
    for v in range(g.n):
        tri = sum((adj[v] & adj[u]).bit_count() for u in bits(adj[v])) // 2
        col = colors[v] if colors is not None else 0
        k = (col, adj[v].bit_count(), tri)
        keys[k] = keys.get(k, 0) | (1 << v)
    return [keys[k] for k in sorted(keys)]


@dataclass(frozen=True)
class AutomorphismResult:
    order: int
    generators: tuple[Perm, ...]
    base: tuple[int, ...]
    orbit_lengths: tuple[int, ...]
    nodes: int


def automorphism_group(g: CompatibilityGraph, colors: Sequence | None = None) -> AutomorphismResult:
    """Automorphisms of ``g`` (preserving ``colors`` if given)."""
    n = g.n
    if n > MAX_VERTICES:
        raise TooLarge(f"{n} vertices exceeds the limit of {MAX_VERTICES}")
    adj = g.adj
    stats = {"nodes": 0}

    # leftmost path: partitions, traces and target cells at every level
    path_parts, path_traces, path_targets, base = [], [], [], []
    cells, trace = _refine(adj, _initial(g, colors))
    while True:
        stats["nodes"] += 1
        path_parts.append(cells)
        path_traces.append(trace)
        t = _target(cells)
        path_targets.append(t)
        if t is None:
            break
        v = (cells[t] & -cells[t]).bit_length() - 1
        base.append(v)
        cells, trace = _refine(adj, _individualize(cells, t, v))
    leaf = [c.bit_length() - 1 for c in path_parts[-1]]
    depth = len(base)

    def search(cells: Partition, level: int) -> Perm | None:
        """Leaf in this subtree matching the leftmost leaf, as a permutation."""
        stats["nodes"] += 1
        t = _target(cells)
        if t != path_targets[level] or [c.bit_count() for c in cells] != [
            c.bit_count() for c in path_parts[level]
        ]:
            return None
        if t is None:
            img = [c.bit_length() - 1 for c in cells]
            p = [0] * n
            for a, b in zip(leaf, img):
                p[a] = b
            p = tuple(p)
            return p if _is_automorphism(adj, p) else None
        for w in bits(cells[t]):
            child, tr = _refine(adj, _individualize(cells, t, w))
            if tr != path_traces[level + 1]:
                continue
            found = search(child, level + 1)
            if found is not None:
                return found
        return None

    gens: list[Perm] = []
    lengths = [0] * depth
    for level in range(depth - 1, -1, -1):
        cells = path_parts[level]
        t = path_targets[level]
        v = base[level]
        fixers = [p for p in gens if all(p[b] == b for b in base[:level])]
        orb = _orbit(v, fixers)
        for w in bits(cells[t]):
            if w in orb:
                continue
            child, tr = _refine(adj, _individualize(cells, t, w))
            if tr != path_traces[level + 1]:
                continue
            p = search(child, level + 1)
            if p is not None:
                gens.append(p)
                fixers.append(p)
                orb = _orbit(v, fixers)
        lengths[level] = len(orb)

    order = 1
    for k in lengths:
        order *= k
    if gens:
        check = PermutationGroup(gens, n).order
        if check != order:
            raise AssertionError(f"orbit product {order} disagrees with Schreier-Sims {check}")
    return AutomorphismResult(order, tuple(gens), tuple(base), tuple(lengths), stats["nodes"])


def _orbit(v: int, gens: Sequence[Perm]) -> set[int]:
    orb = {v}
    queue = [v]
    for x in queue:
        for p in gens:
            y = p[x]
            if y not in orb:
                orb.add(y)
                queue.append(y)
    return orb


def automorphism_order(g: CompatibilityGraph, colors: Sequence | None = None) -> int:
    return automorphism_group(g, colors).order


def vertex_orbits(g: CompatibilityGraph) -> list[tuple[int, ...]]:
    res = automorphism_group(g)
    return orbits(PermutationGroup(res.generators, g.n)) if res.generators else [(i,) for i in range(g.n)]
