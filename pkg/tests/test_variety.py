import warnings
from fractions import Fraction as F

import pytest

from conftest import random_exact_point
from so3g2.binaryform import BinaryForm, GL2, discriminant, resultant, split_b1_b2
from so3g2.exterior import CEOperator, KForm, apply_d, d_squared_residual, wedge
from so3g2.stableform import GAMMA_HAT, SIGMA
from so3g2.variety import (
    LieAlgebraClass,
    ModelPoint,
    NotInvariantTorsion,
    TorsionData,
    act_on_point,
    alternation_matches_kappa,
    center_dim,
    classify,
    derived_algebra_dim,
    is_nilpotent,
    is_totally_skew,
    kappa,
    killing_det,
    killing_rank,
    killing_signature,
    membership_rank,
    skew_torsion_3form,
    structure_constants,
    su3_components,
    tau_lambda,
    torsion_from_coframe,
    torsion_of,
)

BI_INVARIANT = ModelPoint.make([F(1), F(0)], [F(1), F(0), F(-1)])


def test_structure_constants_bi_invariant_display():
    d = structure_constants(BI_INVARIANT)
    expect = [
        KForm(2, {(3, 6): F(1), (4, 5): F(1)}),
        KForm(2, {(3, 5): F(1), (4, 6): F(1)}),
        KForm(2, {(1, 6): F(-1), (2, 5): F(-1)}),
        KForm(2, {(1, 5): F(-1), (2, 6): F(-1)}),
        KForm(2, {(1, 4): F(1), (2, 3): F(1)}),
        KForm(2, {(1, 3): F(1), (2, 4): F(1)}),
    ]
    assert [d.d1(i) for i in range(1, 7)] == expect


def test_structure_constants_nilpotent_point():
    # x = u1, y = u1^2: only three nonzero images
    d = structure_constants(ModelPoint.make([F(1), F(0)], [F(1), F(0), F(0)]))
    assert d.d1(2) == KForm(2, {(3, 5): F(1)})
    assert d.d1(4) == KForm(2, {(1, 5): F(-1)})
    assert d.d1(6) == KForm(2, {(1, 3): F(1)})
    assert d.d1(1).is_zero() and d.d1(3).is_zero() and d.d1(5).is_zero()


def test_structure_constants_double_root_point():
    # the sign shorthand of the collapsing algebra, fixed by substitution:
    # (-e36-e45, -e46, e16+e25, e26, -e14-e23, -e24)
    d = structure_constants(ModelPoint.make([F(1), F(0)], [F(0), F(0), F(1)]))
    assert d.d1(1) == KForm(2, {(3, 6): F(-1), (4, 5): F(-1)})
    assert d.d1(2) == KForm(2, {(4, 6): F(-1)})
    assert d.d1(3) == KForm(2, {(1, 6): F(1), (2, 5): F(1)})
    assert d.d1(4) == KForm(2, {(2, 6): F(1)})
    assert d.d1(5) == KForm(2, {(1, 4): F(-1), (2, 3): F(-1)})
    assert d.d1(6) == KForm(2, {(2, 4): F(-1)})
    assert d_squared_residual(d) == 0


def test_jacobi_on_variety(rng):
    for _ in range(100):
        m = random_exact_point(rng)
        assert d_squared_residual(structure_constants(m)) == 0


def test_jacobi_fails_off_variety(rng):
    found = 0
    while found < 100:
        lam = BinaryForm(3, [F(rng.randint(-5, 5)) for _ in range(4)])
        mu = BinaryForm(1, [F(rng.randint(-5, 5)) for _ in range(2)])
        t = TorsionData(lam, mu)
        if membership_rank(t) != 2:
            continue
        found += 1
        assert d_squared_residual(kappa(t)) != 0


def test_torsion_of():
    assert torsion_of(BI_INVARIANT) == BinaryForm(3, [F(1), F(0), F(-1), F(0)])
    assert torsion_of(ModelPoint.make([F(0), F(1)], [F(1), F(0), F(0)])) == \
        BinaryForm(3, [F(0), F(1), F(0), F(0)])
    # two formal products with the same torsion
    m2 = ModelPoint.make([F(1), F(1)], [F(1), F(-1), F(0)])
    assert torsion_of(m2) == torsion_of(BI_INVARIANT)


def test_torsion_from_coframe_reads_opposite_sign(rng):
    # the d(sigma)-reading of the model algebras carries the opposite
    # sign to the formal-product torsion; both are validated against the
    # full derivative complex (see the decisions ledger)
    for _ in range(100):
        m = random_exact_point(rng)
        lam = torsion_from_coframe(structure_constants(m))
        assert lam == -1 * torsion_of(m)


def test_torsion_from_coframe_abelian():
    d = CEOperator(tuple(KForm.zero(2) for _ in range(6)))
    assert torsion_from_coframe(d).is_zero()


def test_torsion_from_coframe_complex_identities():
    # d eta_0 = -(1/2) lam4_read sigma^2 and d gamma_hat = (1/2)(l3 - l1) sigma^2
    m = ModelPoint.make([F(0), F(1)], [F(0), F(0), F(1)])  # torsion u2^3
    d = structure_constants(m)
    lam = torsion_from_coframe(d)
    assert lam == BinaryForm(3, [F(0), F(0), F(0), F(-1)])
    eta0 = KForm(3, {(1, 3, 5): F(1)})
    sigma2 = wedge(SIGMA, SIGMA)
    assert apply_d(d, eta0) == F(-1, 2) * lam.coeffs[3] * sigma2


def test_torsion_from_coframe_rejects_non_invariant():
    z = KForm.zero(2)
    d = CEOperator((KForm.basis(2, 4), KForm.basis(1, 3), z, z, z, z))
    with pytest.raises(NotInvariantTorsion):
        torsion_from_coframe(d)


def test_torsion_from_coframe_float_operator(rng):
    m = ModelPoint.make([1.3, -0.4], [0.2, 1.1, -0.7])
    lam = torsion_from_coframe(structure_constants(m))
    tor = torsion_of(m)
    assert max(abs(float(a) + float(b))
               for a, b in zip(lam.coeffs, tor.coeffs)) < 1e-12


def test_torsion_from_coframe_checks_whole_complex():
    # perturb an image by a 2-form that leaves d(sigma) untouched but
    # breaks the derivative of the simple 3-form
    d = structure_constants(BI_INVARIANT)
    imgs = list(d.images)
    imgs[0] = imgs[0] + KForm(2, {(2, 4): F(1, 3)})
    bad = CEOperator(tuple(imgs))
    from so3g2.variety import torsion_from_coframe as reader
    from so3g2.exterior import apply_d as _apply
    assert _apply(bad, SIGMA) == _apply(d, SIGMA)  # the pattern is intact
    with pytest.raises(NotInvariantTorsion):
        reader(bad)


def test_membership_rank_cases(rng):
    for _ in range(30):
        m = random_exact_point(rng)
        cubic, lin = split_b1_b2(m.x, m.y)
        assert membership_rank(TorsionData(cubic, lin)) == 1
    t = TorsionData(BinaryForm(3, [F(1), F(0), F(0), F(1)]),
                    BinaryForm(1, [F(0), F(0)]))
    assert membership_rank(t) == 2
    zero = TorsionData(BinaryForm(3, [F(0)] * 4), BinaryForm(1, [F(0)] * 2))
    assert membership_rank(zero) == 0


def test_kappa_displayed_blocks():
    # lam = u2^3: kappa(e1) = -e46
    t = TorsionData(BinaryForm(3, [F(0), F(0), F(0), F(1)]),
                    BinaryForm(1, [F(0), F(0)]))
    k = kappa(t)
    assert k.d1(1) == KForm(2, {(4, 6): F(-1)})
    # lam = 0, mu = u1: kappa(e1) = e35, kappa(e2) = (1/2)(e36 + e45)
    t = TorsionData(BinaryForm(3, [F(0)] * 4), BinaryForm(1, [F(1), F(0)]))
    k = kappa(t)
    assert k.d1(1) == KForm(2, {(3, 5): F(1)})
    assert k.d1(2) == KForm(2, {(3, 6): F(1, 2), (4, 5): F(1, 2)})


def test_kappa_round_trip_with_structure_constants(rng):
    for _ in range(100):
        m = random_exact_point(rng)
        cubic, lin = split_b1_b2(m.x, m.y)
        k = kappa(TorsionData(cubic, lin))
        d = structure_constants(m)
        assert all(k.d1(i) == d.d1(i) for i in range(1, 7))


def test_tau_lambda_zero():
    tau = tau_lambda(BinaryForm(3, [F(0)] * 4))
    assert all(tau[i].is_zero() for i in range(1, 7))


def test_tau_lambda_blocks_at_pure_l4():
    tau = tau_lambda(BinaryForm(3, [F(0), F(0), F(0), F(1)]))
    # -l4/2 block on the even-index slots, (l2+l4)/4 block on the odd ones
    assert tau[2] == KForm(2, {(4, 5): F(-1, 2), (3, 6): F(-1, 2)})
    assert tau[1] == KForm(2, {(4, 6): F(1, 4), (3, 5): F(-1, 4)})


def test_tau_lambda_alternation_matches_kappa(rng):
    for _ in range(12):
        lam = BinaryForm(3, [F(rng.randint(-4, 4)) for _ in range(4)])
        assert alternation_matches_kappa(lam)


def test_naturally_reductive_condition(rng):
    # pure skew type exactly when l2 + 3 l4 = 0 = 3 l1 + l3
    for _ in range(20):
        a, b = F(rng.randint(-4, 4)), F(rng.randint(-4, 4))
        lam = BinaryForm(3, [a, -3 * b, -3 * a, b])
        assert is_totally_skew(tau_lambda(lam))
    for _ in range(60):
        lam = BinaryForm(3, [F(rng.randint(-3, 3)) for _ in range(4)])
        cond = (lam.coeffs[1] + 3 * lam.coeffs[3] == 0
                and 3 * lam.coeffs[0] + lam.coeffs[2] == 0)
        assert is_totally_skew(tau_lambda(lam)) == cond


def test_su3_component_form_closes_decomposition(rng):
    # W3 is the residual of the invariant 3-form after the gamma and
    # gamma_hat multiples are removed
    from so3g2.stableform import GAMMA, cubic_to_3form
    for _ in range(10):
        lam = BinaryForm(3, [F(rng.randint(-4, 4)) for _ in range(4)])
        w1p, w1m, w3 = su3_components(lam)
        l1, l2, l3, l4 = lam.coeffs
        residual = (cubic_to_3form(lam)
                    - F(3, 4) * (l1 - l3) * GAMMA
                    - F(3, 4) * (l2 - l4) * GAMMA_HAT)
        assert residual == w3


def test_su3_components():
    w1p, w1m, w3 = su3_components(BinaryForm(3, [F(1), F(0), F(-1), F(0)]))
    assert w1p == 0 and w1m == -1
    w1p, w1m, w3 = su3_components(BinaryForm(3, [F(0)] * 4))
    assert w1p == 0 and w1m == 0 and w3.is_zero()
    # half-flat iff l2 = l4
    w1p, _, _ = su3_components(BinaryForm(3, [F(2), F(5), F(-1), F(5)]))
    assert w1p == 0
    w1p, _, _ = su3_components(BinaryForm(3, [F(2), F(5), F(-1), F(4)]))
    assert w1p != 0


def test_skew_torsion_3form():
    assert skew_torsion_3form(BinaryForm(3, [F(0)] * 4)).is_zero()
    t = skew_torsion_3form(BinaryForm(3, [F(1), F(0), F(-1), F(0)]))
    expect = KForm(3, {
        (2, 3, 5): F(1, 2), (1, 4, 5): F(1, 2), (1, 3, 6): F(1, 2),
        (2, 4, 6): F(1, 2),
    })
    assert t == expect


def test_classify_representatives():
    table = [
        (([1, 0], [1, 0, -1]), LieAlgebraClass.SO3xSO3),
        (([1, 0], [1, 0, 1]), LieAlgebraClass.SO3C),
        (([1, 0], [0, 0, 1]), LieAlgebraClass.SO3semidirectR3),
        (([1, 0], [0, 1, 0]), LieAlgebraClass.SO3directR3),
        (([1, 0], [1, 0, 0]), LieAlgebraClass.Nilpotent),
    ]
    for (x, y), want in table:
        m = ModelPoint.make([F(v) for v in x], [F(v) for v in y])
        assert classify(m) == want


def test_classify_zero_point_raises():
    with pytest.raises(ValueError):
        classify(ModelPoint.make([F(0), F(0)], [F(1), F(0), F(0)]))


def test_classify_orbit_invariance(rng):
    for _ in range(60):
        m = random_exact_point(rng)
        while True:
            g = GL2(*[F(rng.randint(-3, 3)) for _ in range(4)])
            if g.det() != 0:
                break
        assert classify(m) == classify(act_on_point(g, m))


def test_classify_float_snap_warns():
    m = ModelPoint.make([1.0, 0.0], [1.0, 1e-15, 0.0])
    with warnings.catch_warnings(record=True) as rec:
        warnings.simplefilter("always")
        cls = classify(m)
    assert cls == LieAlgebraClass.Nilpotent
    assert any("snapping" in str(w.message) for w in rec)


def test_killing_identity_examples():
    d = structure_constants(BI_INVARIANT)
    assert killing_det(d) == 4096
    assert killing_rank(d) == 6
    pos, neg = killing_signature(d)
    assert {pos, neg} == {0, 6}
    m_c = ModelPoint.make([F(1), F(0)], [F(1), F(0), F(1)])
    d_c = structure_constants(m_c)
    assert killing_det(d_c) == -4096
    assert killing_signature(d_c) == (3, 3)


def test_killing_identity_random(rng):
    for _ in range(60):
        m = random_exact_point(rng, span=4)
        d = structure_constants(m)
        delta = discriminant(m.y)
        res = resultant(m.x, m.y)
        assert killing_det(d) == (4 * delta * res * res) ** 3
        assert killing_rank(d) in (0, 3, 6)


def test_killing_nilpotent_rank():
    d = structure_constants(ModelPoint.make([F(1), F(0)], [F(1), F(0), F(0)]))
    assert killing_det(d) == 0
    assert killing_rank(d) == 0


def test_killing_rejects_non_lie():
    z = KForm.zero(2)
    bad = CEOperator((KForm.basis(2, 4), KForm.basis(1, 3), z, z, z, z))
    with pytest.raises(ValueError):
        killing_det(bad)


def test_lie_invariants_match_classes():
    # derived dimension, center, nilpotency on the five representatives
    data = [
        (([1, 0], [1, 0, -1]), 6, 0, False),
        (([1, 0], [1, 0, 1]), 6, 0, False),
        (([1, 0], [0, 0, 1]), 6, 0, False),
        (([1, 0], [0, 1, 0]), 3, 3, False),
        (([1, 0], [1, 0, 0]), 3, 3, True),
    ]
    for (x, y), dd, cd, nil in data:
        d = structure_constants(ModelPoint.make([F(v) for v in x], [F(v) for v in y]))
        assert derived_algebra_dim(d) == dd
        assert center_dim(d) == cd
        assert is_nilpotent(d) == nil
