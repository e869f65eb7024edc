"""Borcherds-product candidates modelled by their principal parts.

Nothing analytic happens here: a candidate is a list of ``q^E e_v`` terms plus
an optional constant coefficient, and every check is arithmetic on D.
"""

from __future__ import annotations

import warnings
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import MixedLattices
from .lattice import Coset, DiscriminantGroup, _mod1
from .reflect import ReflectiveClass, classify_reflective


@dataclass(frozen=True)
class Term:
    """``coefficient * q^exponent * sum(e_v for v in cosets)``."""

    exponent: Fraction
    cosets: tuple[Coset, ...]
    coefficient: int = 1


@dataclass(frozen=True)
class PrincipalPart:
    terms: tuple[Term, ...]
    constant: int | None = None

    def cosets(self) -> tuple[Coset, ...]:
        seen = {}
        for term in self.terms:
            for v in term.cosets:
                seen.setdefault(v, None)
        return tuple(seen)

    def coefficient(self, exponent: Fraction, v: Coset) -> int:
        """Coefficient of ``q^exponent e_v``."""
        return sum(t.coefficient * t.cosets.count(v) for t in self.terms if t.exponent == exponent)


@dataclass(frozen=True)
class ProductCandidate:
    label: str
    group: DiscriminantGroup = field(repr=False)
    principal_part: PrincipalPart = field(repr=False)
    weight: Fraction | None = None
    tags: tuple[str, ...] = ()

    @property
    def cosets(self) -> tuple[Coset, ...]:
        return self.principal_part.cosets()


def pm_candidate(label: str, u: Coset, exponent=None, **kw) -> ProductCandidate:
    """Candidate with principal part ``q^E (e_u + e_-u)`` (just ``e_u`` if ``u = -u``)."""
    exponent = Fraction(exponent) if exponent is not None else -u.norm / 2
    neg = -u
    cosets = (u,) if neg == u else (u, neg)
    return ProductCandidate(label, u.group, PrincipalPart((Term(exponent, cosets),)), **kw)


@dataclass
class ValidationReport:
    label: str
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems

    def __bool__(self) -> bool:
        return self.ok


def validate(pc: ProductCandidate, expected: Sequence[dict] | None = None) -> ValidationReport:
    """Check dual membership, orders and exponent congruences of every term.

    ``expected`` optionally gives one ``{"order", "norm", "exponent"}`` mapping
    per term (any key may be omitted); every coset of that term must match it.
    """
    rep = ValidationReport(pc.label)
    g = pc.group
    gram = g.lattice.gram
    pp = pc.principal_part
    for k, term in enumerate(pp.terms):
        if term.exponent >= 0:
            rep.problems.append(f"term {k}: exponent {term.exponent} is not negative")
        if expected and k < len(expected) and "exponent" in expected[k]:
            if term.exponent != Fraction(expected[k]["exponent"]):
                rep.problems.append(f"term {k}: exponent {term.exponent}, expected {expected[k]['exponent']}")
        for v in term.cosets:
            if v.group != g:
                rep.problems.append(f"term {k}: coset {v} belongs to another lattice")
                continue
            if any(sum(a * x for a, x in zip(row, v.coords)).denominator != 1 for row in gram):
                rep.problems.append(f"term {k}: coset {v} is not in the dual lattice")
            if _mod1(term.exponent + v.norm / 2) != 0:
                rep.problems.append(
                    f"term {k}: exponent {term.exponent} is not -Q({v})/2 = {-v.norm / 2} mod 1"
                )
            if expected and k < len(expected):
                exp = expected[k]
                if "order" in exp and v.order != int(exp["order"]):
                    rep.problems.append(f"term {k}: {v} has order {v.order}, expected {exp['order']}")
                if "norm" in exp and v.norm != Fraction(exp["norm"]):
                    rep.problems.append(f"term {k}: {v} has norm {v.norm}, expected {exp['norm']}")
    if pp.constant is not None and pc.weight is not None and weight_from_constant(pp.constant) != pc.weight:
        rep.problems.append(f"weight {pc.weight} != constant coefficient {pp.constant} / 2")
    return rep


@dataclass(frozen=True)
class ReflectiveDivisorSet:
    """Divisor classes read off a principal part.

    ``classes`` are the reflective ones with positive multiplicity,
    ``non_reflective`` lists ``(coset, norm)`` pairs with positive multiplicity
    that fail the reflectivity test, and ``cancelled`` the pairs whose
    multiplicity is zero or negative.
    """

    classes: tuple[ReflectiveClass, ...]
    non_reflective: tuple[tuple[Coset, Fraction], ...]
    cancelled: tuple[tuple[Coset, Fraction, int], ...]
    multiplicities: dict = field(compare=False, hash=False)


def divisor_multiplicity(pp: PrincipalPart, v: Coset, exponent: Fraction) -> int:
    """Multiplicity of the divisor of primitive vectors in ``v`` with norm ``-2 * exponent``.

    Sums the coefficients of ``q^(k^2 E) e_(k v)`` over ``k >= 1``.
    """
    total = 0
    k = 1
    lowest = min(t.exponent for t in pp.terms)
    while k * k * exponent >= lowest:
        total += pp.coefficient(k * k * exponent, v * k)
        k += 1
    return total


@lru_cache(maxsize=None)
def reflective_divisor(pc: ProductCandidate) -> ReflectiveDivisorSet:
    pp = pc.principal_part
    classes, bad, cancelled, mult = [], [], [], {}
    for term in pp.terms:
        t = -2 * term.exponent
        for v in term.cosets:
            if (v, t) in mult:
                continue
            m = divisor_multiplicity(pp, v, term.exponent)
            mult[v, t] = m
            if m <= 0:
                cancelled.append((v, t, m))
                continue
            rc = classify_reflective(v, t)
            if rc is None:
                bad.append((v, t))
            else:
                classes.append(rc)
    return ReflectiveDivisorSet(tuple(classes), tuple(bad), tuple(cancelled), mult)


def invariant_under(pc: ProductCandidate, rc: ReflectiveClass) -> bool:
    """True if the induced reflection maps every coset of ``pc`` to itself or its negative."""
    for v in pc.cosets:
        w = rc.apply(v)
        if w != v and w != -v:
            return False
    return True


def compatible(a: ProductCandidate, b: ProductCandidate) -> bool:
    """Is ``a``'s input invariant (up to sign) under every reflection in ``b``'s divisor?"""
    if a.group != b.group:
        raise MixedLattices(f"{a.label} and {b.label} live on different lattices")
    return all(invariant_under(a, rc) for rc in reflective_divisor(b).classes)


def singular_weight(group: DiscriminantGroup) -> Fraction:
    """``(n - 2) / 2`` for a lattice of signature ``(n, 2)``."""
    return Fraction(group.lattice.signature[0] - 2, 2)


def jacobian_weight(n: int, weights: Sequence) -> Fraction:
    """Weight ``n + sum(k_i)`` of the Jacobian of ``n + 1`` forms."""
    if len(weights) != n + 1:
        warnings.warn(f"expected {n + 1} weights for n = {n}, got {len(weights)}", stacklevel=2)
    return n + sum((Fraction(k) for k in weights), Fraction(0))


def weight_from_constant(c0: int) -> Fraction:
    if c0 < 0:
        raise ValueError("constant coefficient must be nonnegative")
    return Fraction(c0, 2)


@dataclass(frozen=True)
class WeightReport:
    total: Fraction
    expected: Fraction

    @property
    def ok(self) -> bool:
        return self.total == self.expected


def weight_accounting(weights: Iterable, expected_total) -> WeightReport:
    """Sum of weights (candidates or plain numbers) against an expected total."""
    total = Fraction(0)
    for w in weights:
        w = w.weight if isinstance(w, ProductCandidate) else w
        if w is None:
            raise ValueError("weight unknown")
        total += Fraction(w)
    return WeightReport(total, Fraction(expected_total))


@dataclass(frozen=True)
class Table1Row:
    group: str
    n: int
    generator_weights: tuple[Fraction, ...]
    kJ: Fraction
    decomposition: tuple[tuple[Fraction, int], ...]


@dataclass(frozen=True)
class Table1Report:
    row: Table1Row
    jacobian_weight: Fraction
    decomposition_total: Fraction

    @property
    def jacobian_ok(self) -> bool:
        return self.jacobian_weight == self.row.kJ

    @property
    def decomposition_ok(self) -> bool:
        return self.decomposition_total == 2 * self.row.kJ

    @property
    def uniform_ok(self) -> bool:
        """For equal generator weights ``k``: decomposition sums to ``2 (n + (n+1) k)``."""
        ws = set(self.row.generator_weights)
        if len(ws) != 1:
            return True
        (k,) = ws
        return self.decomposition_total == 2 * (self.row.n + (self.row.n + 1) * k)

    @property
    def ok(self) -> bool:
        return self.jacobian_ok and self.decomposition_ok and self.uniform_ok


def table1_check(row: Table1Row) -> Table1Report:
    kj = jacobian_weight(row.n, row.generator_weights)
    total = sum((w * c for w, c in row.decomposition), Fraction(0))
    return Table1Report(row, kj, total)


def multiset(cosets: Iterable[Coset]) -> Counter:
    return Counter(cosets)
