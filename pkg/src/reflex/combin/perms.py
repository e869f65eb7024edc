"""Permutation groups via a deterministic Schreier-Sims algorithm.

Permutations are tuples ``p`` with ``p[i]`` the image of ``i``; composition
``mul(p, q)`` applies ``q`` first.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Sequence

Perm = tuple[int, ...]


def mul(p: Perm, q: Perm) -> Perm:
    """``p * q``: apply ``q`` then ``p``."""
    return tuple(p[i] for i in q)


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def identity(n: int) -> Perm:
    return tuple(range(n))


def is_identity(p: Perm) -> bool:
    return all(i == j for i, j in enumerate(p))


def from_cycles(n: int, *cycles: Sequence[int]) -> Perm:
    p = list(range(n))
    for c in cycles:
        for a, b in zip(c, c[1:] + type(c)(c[:1])):
            p[a] = b
    return tuple(p)


class _Level:
    """One base point with its fundamental orbit and transversal."""

    def __init__(self, point: int, n: int):
        self.point = point
        self.gens: list[Perm] = []
        # orbit point -> element mapping base point to it
        self.trans: dict[int, Perm] = {point: identity(n)}

    def rebuild(self) -> None:
        trans = {self.point: self.trans[self.point]}
        queue = [self.point]
        for x in queue:
            for g in self.gens:
                y = g[x]
                if y not in trans:
                    trans[y] = mul(g, trans[x])
                    queue.append(y)
        self.trans = trans


class PermutationGroup:
    """Group generated by ``gens`` on ``range(degree)``.

    The base and strong generating set are built on first use.
    """

    def __init__(self, gens: Iterable[Sequence[int]], degree: int | None = None):
        gens = [tuple(g) for g in gens]
        if degree is None:
            degree = len(gens[0]) if gens else 0
        for g in gens:
            if len(g) != degree or sorted(g) != list(range(degree)):
                raise ValueError("generator is not a permutation of the common point set")
        self.degree = degree
        self.gens = tuple(g for g in gens if not is_identity(g))

    def _sift(self, levels: list[_Level], g: Perm) -> tuple[Perm, int]:
        """Strip ``g`` through the chain; return residue and the level it stopped at."""
        for k, lev in enumerate(levels):
            x = g[lev.point]
            t = lev.trans.get(x)
            if t is None:
                return g, k
            g = mul(inverse(t), g)
        return g, len(levels)

    @cached_property
    def _chain(self) -> list[_Level]:
        n = self.degree
        levels: list[_Level] = []

        def new_level(g: Perm) -> None:
            pt = next(i for i in range(n) if g[i] != i)
            levels.append(_Level(pt, n))

        for g in self.gens:
            if all(g[lev.point] == lev.point for lev in levels):
                new_level(g)
        # place every generator on the deepest level whose base prefix it fixes
        for g in self.gens:
            for lev in levels:
                lev.gens.append(g)
                if g[lev.point] != lev.point:
                    break
        for lev in levels:
            lev.rebuild()

        # Schreier generator test, bottom-up
        k = len(levels) - 1
        while k >= 0:
            lev = levels[k]
            restart = False
            for x, t in list(lev.trans.items()):
                for s in list(lev.gens):
                    y = s[x]
                    sg = mul(inverse(lev.trans[y]), mul(s, t))
                    h, j = self._sift(levels[k + 1 :], sg)
                    j += k + 1
                    if is_identity(h):
                        continue
                    if j == len(levels):
                        new_level(h)
                    for m in range(k + 1, j + 1):
                        levels[m].gens.append(h)
                        levels[m].rebuild()
                    k = j
                    restart = True
                    break
                if restart:
                    break
            if not restart:
                k -= 1
        return levels

    @property
    def base(self) -> tuple[int, ...]:
        return tuple(lev.point for lev in self._chain)

    @property
    def strong_generators(self) -> tuple[Perm, ...]:
        seen = {}
        for lev in self._chain:
            for g in lev.gens:
                seen.setdefault(g, None)
        return tuple(seen)

    @cached_property
    def order(self) -> int:
        out = 1
        for lev in self._chain:
            out *= len(lev.trans)
        return out

    def __contains__(self, p: Sequence[int]) -> bool:
        p = tuple(p)
        if len(p) != self.degree:
            return False
        h, _ = self._sift(self._chain, p)
        return is_identity(h)

    def orbits(self, points: Iterable[int] | None = None) -> list[tuple[int, ...]]:
        return orbits(self, points)


def group_order(group: PermutationGroup) -> int:
    return group.order


def orbits(group: PermutationGroup, points: Iterable[int] | None = None) -> list[tuple[int, ...]]:
    """Orbits meeting ``points`` (default: all), each sorted, listed by least point.

    Orbits are computed in the whole point set; passing ``points`` only selects
    which orbits are reported.
    """
    n = group.degree
    wanted = range(n) if points is None else sorted(set(points))
    seen: set[int] = set()
    out = []
    for p in wanted:
        if p in seen:
            continue
        orb = {p}
        queue = [p]
        for x in queue:
            for g in group.gens:
                y = g[x]
                if y not in orb:
                    orb.add(y)
                    queue.append(y)
        seen |= orb
        out.append(tuple(sorted(orb)))
    out.sort()
    return out


def closure_order(gens: Sequence[Perm], n: int) -> int:
    """Order by brute-force closure; only for small groups and tests."""
    e = identity(n)
    seen = {e}
    queue = [e]
    for x in queue:
        for g in gens:
            y = mul(g, x)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return len(seen)
