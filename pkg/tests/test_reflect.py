import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reflex.errors import NormMismatch, NotIsometry
from reflex.lattice import enumerate_cosets, pairing
from reflex.reflect import (
    DiscPermutation,
    all_reflective_classes,
    apply_isometry,
    classify_reflective,
    in_discriminant_kernel,
    induced_reflection,
    reflective_norms,
)

from conftest import vec


def lattice_level_reflection(rc, x, shift_r, shift_x):
    """Image of x under r -> x - d (r, x) r computed on shifted representatives."""
    lat = rc.group.lattice
    r = [a + b for a, b in zip(rc.coset.coords, shift_r)]
    y = [a + b for a, b in zip(x.coords, shift_x)]
    c = rc.d * lat.inner(r, y)
    return rc.group.coset([yi - c * ri for yi, ri in zip(y, r)])


def test_classify_theta1(ds_a):
    u = ds_a.group.coset(vec("1/4", "1/2", 0, "1/2", "1/4"))
    rc = classify_reflective(u, Fraction(1, 2))
    assert rc.d == 4 and rc.exact_norm == Fraction(1, 2)


def test_classify_order6_not_reflective(datasets):
    g = datasets["two_u3_a1"].group
    for u in enumerate_cosets(g, 6, "1/2"):
        assert classify_reflective(u, Fraction(1, 2)) is None


def test_classify_zero_coset(ds_a):
    rc = classify_reflective(ds_a.group.zero, 2)
    assert rc.d == 1
    assert induced_reflection(rc).is_identity


def test_classify_errors(ds_a):
    u = ds_a.group.coset(vec("1/4", "1/2", 0, "1/2", "1/4"))
    with pytest.raises(NormMismatch):
        classify_reflective(u, Fraction(1, 4))
    with pytest.raises(ValueError):
        classify_reflective(u, Fraction(-3, 2))


def test_classify_uniqueness(groups):
    for g in groups.values():
        limit = 2 * g.exponent
        for u in g.elements:
            hits = [
                d for d in range(1, limit + 1)
                if (Fraction(2, d) - u.norm) % 2 == 0 and classify_reflective(u, Fraction(2, d)) is not None
            ]
            assert len(hits) <= 1
            assert [Fraction(2, d) for d in hits] == [t for t in reflective_norms(u) if classify_reflective(u, t)]


def test_reflection_negates_own_coset_and_fixes_orthogonal(groups):
    for g in groups.values():
        for rc in all_reflective_classes(g):
            p = induced_reflection(rc)
            u = rc.coset
            assert p(u) == -u
            for x in g.elements[::5]:
                if pairing(g, u, x) == 0:
                    assert p(x) == x


def test_reflections_are_isometric_involutions_exhaustively(groups):
    for name, g in groups.items():
        for rc in all_reflective_classes(g):
            p = induced_reflection(rc)
            assert (p * p).is_identity, name
            assert p.preserves_norm(), name
            assert p.preserves_pairing(), name
            assert p.is_additive(), name


def test_representative_independence(groups):
    rng = random.Random(17)
    for g in groups.values():
        classes = all_reflective_classes(g)
        for _ in range(60):
            rc = rng.choice(classes)
            x = rng.choice(g.elements)
            sr = [rng.randint(-2, 2) for _ in x.coords]
            sx = [rng.randint(-2, 2) for _ in x.coords]
            assert lattice_level_reflection(rc, x, sr, sx) == induced_reflection(rc)(x) == rc.apply(x)


def test_discriminant_kernel_examples(ds_a):
    g = ds_a.group
    for u in enumerate_cosets(g, 2, "1/2"):
        assert in_discriminant_kernel(induced_reflection(classify_reflective(u, Fraction(1, 2))))
    t1 = g.coset(vec("1/4", "1/2", 0, "1/2", "1/4"))
    assert not in_discriminant_kernel(induced_reflection(classify_reflective(t1, Fraction(1, 2))))
    assert in_discriminant_kernel(DiscPermutation.identity(g))


def test_two_u2_two_a1_kernel_pattern(datasets):
    g = datasets["two_u2_two_a1"].group
    for u in enumerate_cosets(g, 2, "1/2"):
        assert induced_reflection(classify_reflective(u, Fraction(1, 2))).is_identity
    for u in enumerate_cosets(g, 2, "1"):
        rc = classify_reflective(u, 1)
        assert rc.d == 2
        assert not induced_reflection(rc).is_identity


def test_a1_swap(datasets):
    ds = datasets["two_u2_two_a1"]
    p = ds.isometries["a1_swap"]
    g = ds.group
    assert apply_isometry(p, g.coset(vec(0, "1/2", "1/2", 0, 0, 0))) == g.coset(vec(0, "1/2", 0, "1/2", 0, 0))
    phi4 = g.coset(vec(0, 0, "1/2", "1/2", 0, 0))
    assert apply_isometry(p, phi4) == phi4
    ident = [[int(i == j) for j in range(6)] for i in range(6)]
    for u in g.elements:
        assert apply_isometry(ident, u) == u


def test_a1_swap_is_the_phi4_reflection_on_d(datasets):
    ds = datasets["two_u2_two_a1"]
    g = ds.group
    rc = classify_reflective(g.coset(vec(0, 0, "1/2", "1/2", 0, 0)), 1)
    p = induced_reflection(rc)
    for u in g.elements:
        assert p(u) == apply_isometry(ds.isometries["a1_swap"], u)


def test_apply_isometry_rejects(ds_a):
    bad = [[1, 1, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]]
    with pytest.raises(NotIsometry):
        apply_isometry(bad, ds_a.group.zero)


def test_disc_permutation_validation(ds_a):
    g = ds_a.group
    with pytest.raises(ValueError):
        DiscPermutation(g, [0] * g.order)
    p = DiscPermutation.identity(g)
    assert p.inverse() == p and p.moved == 0


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_reflection_composition_preserves_norm(groups, data):
    g = groups[data.draw(st.sampled_from(sorted(groups)))]
    classes = all_reflective_classes(g)
    a = induced_reflection(data.draw(st.sampled_from(classes)))
    b = induced_reflection(data.draw(st.sampled_from(classes)))
    ab = a * b
    x = data.draw(st.sampled_from(g.elements))
    assert ab(x).norm == x.norm
    assert ab(x) == a(b(x))
    assert (ab * ab.inverse()).is_identity
