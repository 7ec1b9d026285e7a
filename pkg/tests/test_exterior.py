import random
from fractions import Fraction as F

import pytest

from so3g2.exterior import (
    CEOperator,
    KForm,
    apply_d,
    d_squared_residual,
    interior,
    pullback,
    wedge,
    wedge_all,
)

SIGMA = KForm(2, {(1, 2): F(1), (3, 4): F(1), (5, 6): F(1)})


def random_form(rng, degree, exact=True):
    import itertools
    coeffs = {}
    for idx in itertools.combinations(range(1, 7), degree):
        v = rng.randint(-4, 4)
        if v:
            coeffs[idx] = F(v) if exact else float(v)
    return KForm(degree, coeffs)


def test_wedge_basis():
    assert wedge(KForm.basis(1), KForm.basis(2)) == KForm.basis(1, 2)


def test_wedge_repeated_index_vanishes():
    assert wedge(KForm.basis(1, 2), KForm.basis(1, 3)).is_zero()


def test_sigma_cubed():
    # direct expansion of the 27-term product collapses to one monomial
    assert wedge_all(SIGMA, SIGMA, SIGMA) == KForm(6, {(1, 2, 3, 4, 5, 6): F(6)})


def test_wedge_degree_overflow():
    with pytest.raises(ValueError):
        wedge(KForm.basis(1, 2, 3, 4), KForm.basis(5, 6, 1, 2))


def test_wedge_graded_commutativity():
    rng = random.Random(1)
    for da, db in [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3), (1, 4)]:
        a, b = random_form(rng, da), random_form(rng, db)
        sign = (-1) ** (da * db)
        assert wedge(a, b) == sign * wedge(b, a)


def test_interior_basis_cases():
    assert interior(1, KForm.basis(1, 2)) == KForm.basis(2)
    assert interior(2, KForm.basis(1, 2)) == -1 * KForm.basis(1)
    assert interior(1, SIGMA) == KForm.basis(2)


def test_interior_anti_derivation():
    rng = random.Random(2)
    for da, db in [(1, 2), (2, 2), (2, 3), (3, 2)]:
        a, b = random_form(rng, da), random_form(rng, db)
        for v in range(1, 7):
            lhs = interior(v, wedge(a, b))
            rhs = wedge(interior(v, a), b) + (-1) ** da * wedge(a, interior(v, b))
            assert lhs == rhs


def test_interior_squares_to_zero():
    rng = random.Random(3)
    a = random_form(rng, 3)
    vec = [F(rng.randint(-3, 3)) for _ in range(6)]
    assert interior(vec, interior(vec, a)).is_zero()


NILPOTENT = CEOperator((
    KForm.zero(2), KForm.zero(2), KForm.zero(2),
    KForm.basis(1, 2), KForm.basis(1, 3), KForm.basis(2, 3),
))


def test_apply_d_nilpotent_example():
    assert apply_d(NILPOTENT, KForm.basis(4)) == KForm.basis(1, 2)


def test_apply_d_kills_term_with_repeated_index():
    # d(e^1 ^ e^4) = de^1 ^ e^4 - e^1 ^ de^4 = -e^1 ^ e^12 = 0
    assert apply_d(NILPOTENT, KForm.basis(1, 4)).is_zero()


def test_apply_d_constant():
    assert apply_d(NILPOTENT, KForm(0, {(): F(1)})).is_zero()


def test_apply_d_leibniz():
    rng = random.Random(4)
    d = CEOperator(tuple(random_form(rng, 2) for _ in range(6)))
    for da, db in [(1, 1), (1, 2), (2, 2), (2, 1), (3, 1)]:
        a, b = random_form(rng, da), random_form(rng, db)
        lhs = apply_d(d, wedge(a, b))
        rhs = wedge(apply_d(d, a), b) + (-1) ** da * wedge(a, apply_d(d, b))
        assert lhs == rhs


def test_d_squared_residual_zero_cases():
    assert d_squared_residual(NILPOTENT) == 0
    abelian = CEOperator(tuple(KForm.zero(2) for _ in range(6)))
    assert d_squared_residual(abelian) == 0


def test_d_squared_residual_nonzero():
    # de1 = e24, de2 = e13 gives d^2 e1 = e134 != 0
    z = KForm.zero(2)
    d = CEOperator((KForm.basis(2, 4), KForm.basis(1, 3), z, z, z, z))
    assert d_squared_residual(d) > 0


def test_pullback_identity_and_composition():
    rng = random.Random(5)
    a = random_form(rng, 3)
    ident = [[F(1) if i == j else F(0) for j in range(6)] for i in range(6)]
    assert pullback(ident, a) == a


def test_json_round_trip():
    rng = random.Random(6)
    a = random_form(rng, 2)
    assert KForm.from_json(a.to_json()) == a
    d = CEOperator(tuple(random_form(rng, 2) for _ in range(6)))
    back = CEOperator.from_json(d.to_json())
    assert all(back.d1(i) == d.d1(i) for i in range(1, 7))
