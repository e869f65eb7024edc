"""Even lattices and their discriminant forms.

A :class:`Coset` is an element of ``D = M^vee / M`` stored by its canonical
rational coordinates in the lattice basis (each entry in ``[0, 1)``). The
quadratic form ``Q(x) = (x, x) mod 2`` and the pairing ``b(x, y) = (x, y) mod 1``
are evaluated directly on those coordinates.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from . import exact
from .errors import (
    MixedGroups,
    NotInDual,
    NotNegationClosed,
    OddDiagonal,
    SingularMatrix,
    TooLarge,
)
from .exact import Matrix

#: hard cap on |D| for anything that walks the whole group
MAX_ENUMERATION = 10**6


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _mod1(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


def _mod2(x: Fraction) -> Fraction:
    return x - 2 * (x.numerator // (2 * x.denominator))


@dataclass(frozen=True)
class Lattice:
    gram: Matrix
    signature: tuple[int, int]
    name: str = field(default="", compare=False)

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def det(self) -> int:
        return exact.det(self.gram)

    def inner(self, x: Sequence, y: Sequence):
        g = self.gram
        return sum(x[i] * g[i][j] * y[j] for i in range(len(g)) for j in range(len(g)) if g[i][j])

    def __str__(self) -> str:
        return self.name or f"Lattice(rank={self.rank}, signature={self.signature})"


def make_lattice(gram: Sequence[Sequence[int]], name: str = "") -> Lattice:
    """Validate ``gram`` as an even nondegenerate lattice and compute its signature."""
    g = exact.as_matrix(gram)
    n, m = exact.shape(g)
    if n != m:
        raise ValueError("Gram matrix must be square")
    if not exact.is_symmetric(g):
        raise exact.NotSymmetric("Gram matrix is not symmetric")
    odd = [i for i in range(n) if g[i][i] % 2]
    if odd:
        raise OddDiagonal(f"diagonal entry {odd[0]} is odd; lattice is not even")
    if exact.det(g) == 0:
        raise SingularMatrix("Gram matrix is singular")
    return Lattice(g, exact.signature(g), name)


def hyperbolic(m: int = 1) -> Matrix:
    """Gram matrix of U(m)."""
    return ((0, m), (m, 0))


def root_a1(m: int = 1) -> Matrix:
    """Gram matrix of A1(m)."""
    return ((2 * m,),)


def root_a2() -> Matrix:
    return ((2, 1), (1, 2))


def orthogonal_sum(*grams: Sequence[Sequence[int]]) -> Matrix:
    n = sum(len(g) for g in grams)
    out = [[0] * n for _ in range(n)]
    k = 0
    for g in grams:
        for i, row in enumerate(g):
            for j, x in enumerate(row):
                out[k + i][k + j] = x
        k += len(g)
    return exact.as_matrix(out)


@dataclass(frozen=True, eq=False)
class Coset:
    """Element of a discriminant group with cached order and norm.

    ``norm`` is ``(x, x)`` reduced into ``[0, 2)``.
    """

    coords: tuple[Fraction, ...]
    order: int
    norm: Fraction
    group: "DiscriminantGroup" = field(repr=False)

    def __eq__(self, other):
        if not isinstance(other, Coset):
            return NotImplemented
        return self.coords == other.coords and self.group == other.group

    def __hash__(self):
        return hash(self.coords)

    def __neg__(self) -> "Coset":
        return self.group.coset([-x for x in self.coords])

    def __add__(self, other: "Coset") -> "Coset":
        self.group._check(other)
        return self.group.coset([x + y for x, y in zip(self.coords, other.coords)])

    def __sub__(self, other: "Coset") -> "Coset":
        return self + (-other)

    def __mul__(self, k: int) -> "Coset":
        return self.group.coset([k * x for x in self.coords])

    __rmul__ = __mul__

    @property
    def is_zero(self) -> bool:
        return self.order == 1

    def text(self) -> str:
        return "(" + ", ".join(str(x) for x in self.coords) + ")"

    def __str__(self) -> str:
        return self.text()


class DiscriminantGroup:
    """The finite quadratic module ``M^vee / M`` of an even lattice.

    The Smith form ``U G V = S`` yields generators ``e_i = V[:, i] / s_i`` of
    order ``s_i`` (one per invariant factor ``s_i > 1``); invariant-factor
    coordinates of ``x`` are ``a_i = s_i (V^-1 x)_i mod s_i``.
    """

    def __init__(self, lattice: Lattice):
        self.lattice = lattice
        u, s, v = exact.snf(lattice.gram)
        n = lattice.rank
        diag = [s[i][i] for i in range(n)]
        keep = [i for i in range(n) if diag[i] > 1]
        self.invariant_factors: tuple[int, ...] = tuple(diag[i] for i in keep)
        self.order = math.prod(self.invariant_factors)
        self.exponent = max(self.invariant_factors, default=1)
        self._gens = tuple(tuple(Fraction(v[r][i], diag[i]) for r in range(n)) for i in keep)
        vinv = exact.int_inverse(v)
        self._to_if = tuple(tuple(diag[i] * x for x in vinv[i]) for i in keep)
        # pairing and norms of the generators, as integers over the exponent
        big = self.exponent
        self._b = tuple(
            tuple(int(_mod1(lattice.inner(gi, gj)) * big) for gj in self._gens) for gi in self._gens
        )
        self._q = tuple(int(_mod2(lattice.inner(g, g)) * big) for g in self._gens)
        # mixed-radix weights for element indices
        w, acc = [], 1
        for f in reversed(self.invariant_factors):
            w.append(acc)
            acc *= f
        self._radix = tuple(reversed(w))

    def __eq__(self, other):
        return isinstance(other, DiscriminantGroup) and self.lattice == other.lattice

    def __hash__(self):
        return hash(self.lattice)

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        parts = " x ".join(f"Z/{f}" for f in self.invariant_factors) or "0"
        return f"DiscriminantGroup({parts})"

    @property
    def generators(self) -> tuple["Coset", ...]:
        return tuple(self.coset(g) for g in self._gens)

    def _check(self, x: Coset) -> None:
        if x.group != self:
            raise MixedGroups("cosets belong to different discriminant groups")

    def coset(self, v: Sequence) -> Coset:
        """Canonical coset of a dual vector given in lattice-basis coordinates."""
        lat = self.lattice
        if len(v) != lat.rank:
            raise ValueError(f"expected {lat.rank} coordinates, got {len(v)}")
        v = [_frac(x) for x in v]
        if any(_frac(x).denominator != 1 for x in exact.matvec(lat.gram, v)):
            raise NotInDual(f"{tuple(str(x) for x in v)} is not in the dual lattice")
        coords = tuple(_mod1(x) for x in v)
        order = math.lcm(*(x.denominator for x in coords)) if coords else 1
        return Coset(coords, order, _mod2(lat.inner(coords, coords)), self)

    @property
    def zero(self) -> Coset:
        return self.coset([0] * self.lattice.rank)

    # invariant-factor coordinates
    def to_if(self, x: Coset) -> tuple[int, ...]:
        self._check(x)
        return tuple(
            int(sum(r * c for r, c in zip(row, x.coords))) % f
            for row, f in zip(self._to_if, self.invariant_factors)
        )

    def from_if(self, a: Sequence[int]) -> Coset:
        n = self.lattice.rank
        v = [sum(ai * g[r] for ai, g in zip(a, self._gens)) for r in range(n)]
        return self.coset(v)

    def index_of_if(self, a: Sequence[int]) -> int:
        return sum(ai * w for ai, w in zip(a, self._radix))

    def index(self, x: Coset) -> int:
        """Position of ``x`` in :attr:`elements` (invariant-factor lexicographic order)."""
        return self.index_of_if(self.to_if(x))

    def if_elements(self) -> Iterator[tuple[int, ...]]:
        self._check_size()
        return itertools.product(*(range(f) for f in self.invariant_factors))

    def _check_size(self) -> None:
        if self.order > MAX_ENUMERATION:
            raise TooLarge(f"|D| = {self.order} exceeds the enumeration cap {MAX_ENUMERATION}")

    @cached_property
    def elements(self) -> tuple[Coset, ...]:
        """All of D, indexed consistently with :meth:`index`."""
        return tuple(self.from_if(a) for a in self.if_elements())

    @cached_property
    def pairing_table(self) -> tuple[tuple[int, ...], ...]:
        """``b`` on all pairs of elements, as integers over the exponent."""
        elts = list(self.if_elements())
        return tuple(tuple(self.if_pairing(a, c) for c in elts) for a in elts)

    # integer-coded pairing: b(x, y) = if_pairing(a, c) / exponent mod 1
    def if_pairing(self, a: Sequence[int], c: Sequence[int]) -> int:
        b = self._b
        k = len(a)
        return sum(a[i] * c[j] * b[i][j] for i in range(k) if a[i] for j in range(k) if c[j]) % self.exponent

    def if_norm(self, a: Sequence[int]) -> int:
        """``Q(x) * exponent`` reduced mod ``2 * exponent``."""
        b, q = self._b, self._q
        k = len(a)
        tot = sum(a[i] * a[i] * q[i] for i in range(k))
        tot += 2 * sum(a[i] * a[j] * b[i][j] for i in range(k) for j in range(i + 1, k))
        return tot % (2 * self.exponent)

    def pairing(self, x: Coset, y: Coset) -> Fraction:
        return pairing(self, x, y)


def discriminant_group(lattice: Lattice) -> DiscriminantGroup:
    return DiscriminantGroup(lattice)


def coset(group: DiscriminantGroup, v: Sequence) -> Coset:
    return group.coset(v)


def pairing(group: DiscriminantGroup, x: Coset, y: Coset) -> Fraction:
    """Discriminant bilinear form ``b(x, y) = (x, y) mod 1`` in ``[0, 1)``."""
    group._check(x)
    group._check(y)
    return _mod1(group.lattice.inner(x.coords, y.coords))


def enumerate_cosets(
    group: DiscriminantGroup,
    order: int | None = None,
    norm: Fraction | str | None = None,
) -> list[Coset]:
    """All cosets matching the optional order and norm (mod 2) filters.

    Output is sorted by canonical coordinates.
    """
    norm = None if norm is None else _mod2(_frac(norm))
    if order is not None and group.exponent % order:
        return []
    out = [
        x
        for x in group.elements
        if (order is None or x.order == order) and (norm is None or x.norm == norm)
    ]
    out.sort(key=lambda x: x.coords)
    return out


def pm_classes(cosets: Iterable[Coset]) -> list[tuple[Coset, ...]]:
    """Partition a negation-closed set into ``{u, -u}`` classes.

    Each class lists its lexicographically smallest member first; classes are
    sorted by that representative. ``u = -u`` gives a singleton.
    """
    pool = set(cosets)
    out = []
    for x in sorted(pool, key=lambda c: c.coords):
        y = -x
        if y not in pool:
            raise NotNegationClosed(f"{x} is present but {y} is not")
        if y.coords < x.coords:
            continue
        out.append((x,) if x == y else (x, y))
    return out
