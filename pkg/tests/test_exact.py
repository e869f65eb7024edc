import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reflex import exact
from reflex.errors import NotSymmetric, SingularMatrix
from reflex.lattice import hyperbolic, orthogonal_sum, root_a1, root_a2

from oracles import assert_snf, determinantal_factors, leibniz_det, random_matrix


def random_unimodular(rng, n, steps=12):
    p = [list(r) for r in exact.identity(n)]
    for _ in range(steps if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-2, -1, 1, 2])
        p[i] = [x + c * y for x, y in zip(p[i], p[j])]
    return exact.as_matrix(p)


def test_snf_trivial():
    u, s, v = exact.snf(((2,),))
    assert s == ((2,),) and u == ((1,),) and v == ((1,),)


def test_snf_hyperbolic_plane():
    assert assert_snf(hyperbolic(4)) == [4, 4]


def test_snf_2u4_a1():
    g = orthogonal_sum(hyperbolic(4), hyperbolic(4), root_a1())
    assert [d for d in assert_snf(g) if d > 1] == [2, 4, 4, 4, 4]
    assert exact.invariant_factors(g) == (2, 4, 4, 4, 4)


def test_snf_rank_deficient():
    a = ((2, 4), (1, 2))
    assert assert_snf(a) == [1, 0]


def test_snf_rectangular():
    a = ((6, 4, 2), (4, 2, 8))
    diag = assert_snf(a)
    assert diag == determinantal_factors(a)


def test_snf_random_against_minor_gcds():
    rng = random.Random(7)
    for _ in range(40):
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        a = random_matrix(rng, m, n, -6, 6)
        assert assert_snf(a) == determinantal_factors(a)


def test_snf_random_8x8():
    rng = random.Random(11)
    for _ in range(60):
        n = rng.randint(1, 8)
        assert_snf(random_matrix(rng, n, n))


def test_det_matches_leibniz():
    rng = random.Random(3)
    for _ in range(50):
        n = rng.randint(1, 5)
        a = random_matrix(rng, n, n, -9, 9)
        assert exact.det(a) == leibniz_det(a)


def test_det_zero_first_column():
    assert exact.det(((0, 1), (1, 0))) == -1
    assert exact.det(((0, 0), (1, 0))) == 0


def test_rat_solve_examples():
    assert exact.rat_solve(exact.identity(3), [1, 2, 3]) == (1, 2, 3)
    assert exact.rat_solve(((2,),), [1]) == (Fraction(1, 2),)
    assert exact.rat_solve(hyperbolic(4), [1, 0]) == (0, Fraction(1, 4))


def test_rat_solve_singular():
    with pytest.raises(SingularMatrix):
        exact.rat_solve(((1, 2), (2, 4)), [1, 1])


def test_int_inverse_roundtrip():
    rng = random.Random(5)
    for _ in range(20):
        p = random_unimodular(rng, 5)
        assert exact.matmul(p, exact.int_inverse(p)) == exact.identity(5)


def test_int_inverse_rejects_non_unimodular():
    with pytest.raises(ValueError):
        exact.int_inverse(((2, 0), (0, 1)))


def test_signature_examples():
    assert exact.signature(((2,),)) == (1, 0)
    assert exact.signature(orthogonal_sum(hyperbolic(), hyperbolic())) == (2, 2)
    assert exact.signature(orthogonal_sum(hyperbolic(4), hyperbolic(4), root_a1())) == (3, 2)
    assert exact.signature(orthogonal_sum(hyperbolic(3), hyperbolic(3), root_a2())) == (4, 2)
    assert exact.signature(((-2, 1), (1, -2))) == (0, 2)


def test_signature_errors():
    with pytest.raises(NotSymmetric):
        exact.signature(((0, 1), (2, 0)))
    with pytest.raises(SingularMatrix):
        exact.signature(((1, 1), (1, 1)))


def test_signature_all_zero_diagonal_block():
    # needs the add-row completion rather than a swap
    g = ((0, 1, 0), (1, 0, 0), (0, 0, 0))
    with pytest.raises(SingularMatrix):
        exact.signature(g)
    assert exact.signature(((0, 3, 1), (3, 0, 2), (1, 2, 0))) == (1, 2)


def test_matrix_rejects_ragged():
    with pytest.raises(ValueError):
        exact.as_matrix([[1, 2], [3]])


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 6))
def test_signature_congruence_invariant(seed, n):
    rng = random.Random(seed)
    while True:
        a = random_matrix(rng, n, n, -5, 5)
        g = exact.as_matrix([[a[i][j] + a[j][i] for j in range(n)] for i in range(n)])
        if exact.det(g):
            break
    p = random_unimodular(rng, n)
    h = exact.matmul(exact.matmul(exact.transpose(p), g), p)
    assert exact.signature(h) == exact.signature(g)
    p_, m_ = exact.signature(g)
    assert p_ + m_ == n
    # sign of the determinant is (-1)^m
    assert (exact.det(g) > 0) == (m_ % 2 == 0)


rats = st.fractions(max_denominator=50).filter(lambda x: abs(x) < 10**6)


@given(rats, rats, rats)
def test_rationals_field_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert Fraction(a.numerator, a.denominator) == a
    assert math.gcd(a.numerator, a.denominator) == 1 and a.denominator >= 1
