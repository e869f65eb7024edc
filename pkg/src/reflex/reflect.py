"""Reflective cosets and the permutations their reflections induce on D.

For a reflective class ``(u, d)`` the reflection ``x -> x - 2 (r, x) / (r, r) r``
with ``(r, r) = 2/d`` acts on the discriminant group as

    x  ->  x - d * b(u, x) * u

which is well defined because ``ord(u)`` divides ``d``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import exact
from .errors import MixedGroups, NormMismatch, NotIsometry
from .lattice import Coset, DiscriminantGroup, _mod2


@dataclass(frozen=True)
class ReflectiveClass:
    coset: Coset
    d: int

    @property
    def exact_norm(self) -> Fraction:
        return Fraction(2, self.d)

    @property
    def group(self) -> DiscriminantGroup:
        return self.coset.group

    def coefficient(self, x: Coset) -> int:
        """``d * b(u, x)`` reduced mod ``ord(u)``; an integer by construction."""
        c = self.d * self.group.lattice.inner(self.coset.coords, x.coords)
        assert c.denominator == 1
        return int(c) % self.coset.order

    def apply(self, x: Coset) -> Coset:
        """Image of a single coset under the induced reflection."""
        c = self.coefficient(x)
        if c == 0:
            return x
        return self.group.coset([a - c * b for a, b in zip(x.coords, self.coset.coords)])


def classify_reflective(u: Coset, t) -> ReflectiveClass | None:
    """Return the reflective class of ``u`` with exact norm ``t``, or None.

    ``t`` must agree with ``Q(u)`` mod 2. The class exists iff ``d = 2/t`` is a
    positive integer and ``ord(u)`` is ``d`` or ``d/2``.
    """
    t = Fraction(t)
    if t <= 0:
        raise ValueError("reflective norm must be positive")
    if _mod2(t) != u.norm:
        raise NormMismatch(f"norm {t} is not congruent to Q({u}) = {u.norm} mod 2")
    d = 2 / t
    if d.denominator != 1:
        return None
    d = int(d)
    if u.order == d or 2 * u.order == d:
        return ReflectiveClass(u, d)
    return None


def reflective_norms(u: Coset) -> list[Fraction]:
    """The (at most one) exact norm at which ``u`` is reflective."""
    out = []
    for d in (u.order, 2 * u.order):
        t = Fraction(2, d)
        if _mod2(t) == u.norm:
            out.append(t)
    return out


def all_reflective_classes(group: DiscriminantGroup) -> list[ReflectiveClass]:
    """Every reflective class of D, in element order."""
    out = []
    for u in group.elements:
        for t in reflective_norms(u):
            rc = classify_reflective(u, t)
            if rc is not None:
                out.append(rc)
    return out


class DiscPermutation:
    """A permutation of D stored as an image table over ``group.elements``."""

    def __init__(self, group: DiscriminantGroup, table: Sequence[int]):
        self.group = group
        self.table = tuple(table)
        if len(self.table) != group.order or sorted(self.table) != list(range(group.order)):
            raise ValueError("image table is not a bijection of D")

    @classmethod
    def identity(cls, group: DiscriminantGroup) -> "DiscPermutation":
        return cls(group, range(group.order))

    def __call__(self, x: Coset) -> Coset:
        return self.group.elements[self.table[self.group.index(x)]]

    def __eq__(self, other):
        return isinstance(other, DiscPermutation) and self.group == other.group and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __mul__(self, other: "DiscPermutation") -> "DiscPermutation":
        """``(p * q)(x) = p(q(x))``."""
        if self.group != other.group:
            raise MixedGroups("permutations act on different groups")
        return DiscPermutation(self.group, [self.table[i] for i in other.table])

    def inverse(self) -> "DiscPermutation":
        inv = [0] * len(self.table)
        for i, j in enumerate(self.table):
            inv[j] = i
        return DiscPermutation(self.group, inv)

    @property
    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.table))

    @property
    def moved(self) -> int:
        return sum(1 for i, j in enumerate(self.table) if i != j)

    def preserves_norm(self) -> bool:
        g = self.group
        elts = list(g.if_elements())
        return all(g.if_norm(elts[i]) == g.if_norm(elts[j]) for i, j in enumerate(self.table))

    def is_additive(self) -> bool:
        """``p(x + e) = p(x) + p(e)`` for every x in D and every generator e.

        By induction on word length this gives additivity on all pairs.
        """
        g = self.group
        elts = list(g.if_elements())
        facs = g.invariant_factors
        t = self.table
        gens = [tuple(int(i == j) for j in range(len(facs))) for i in range(len(facs))]
        for e in gens:
            pe = elts[t[g.index_of_if(e)]]
            for i, a in enumerate(elts):
                s = tuple((x + y) % f for x, y, f in zip(a, e, facs))
                ps = elts[t[g.index_of_if(s)]]
                if ps != tuple((x + y) % f for x, y, f in zip(elts[t[i]], pe, facs)):
                    return False
        return True

    def preserves_pairing(self) -> bool:
        """Exhaustive check of ``b(px, py) = b(x, y)`` over all pairs of D."""
        table = self.group.pairing_table
        t = self.table
        n = len(t)
        for i in range(n):
            row, prow = table[i], table[t[i]]
            for k in range(i, n):
                if row[k] != prow[t[k]]:
                    return False
        return True

    def is_isometry(self) -> bool:
        """Additive, Q-preserving bijection of D (hence also b-preserving)."""
        return self.is_additive() and self.preserves_norm()


def induced_reflection(rc: ReflectiveClass) -> DiscPermutation:
    g = rc.group
    u = g.to_if(rc.coset)
    big = g.exponent
    facs = g.invariant_factors
    table = []
    for a in g.if_elements():
        num = rc.d * g.if_pairing(u, a)
        assert num % big == 0
        c = (num // big) % rc.coset.order
        if c:
            a = tuple((ai - c * ui) % f for ai, ui, f in zip(a, u, facs))
        table.append(g.index_of_if(a))
    return DiscPermutation(g, table)


def in_discriminant_kernel(p: DiscPermutation) -> bool:
    return p.is_identity


def is_isometry(p: exact.Matrix, gram: exact.Matrix) -> bool:
    return exact.matmul(exact.matmul(exact.transpose(p), gram), p) == gram


def apply_isometry(p: Sequence[Sequence[int]], u: Coset) -> Coset:
    """Canonical coset of ``P u`` for an integral isometry ``P`` of the lattice."""
    p = exact.as_matrix(p)
    g = u.group
    if not is_isometry(p, g.lattice.gram):
        raise NotIsometry("P^T G P != G")
    return g.coset(exact.matvec(p, u.coords))
