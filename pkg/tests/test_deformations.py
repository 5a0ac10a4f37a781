import random
from fractions import Fraction

import pytest

from oridial import cohomology as coh
from oridial.deformations import (
    CertificateFailureError,
    DeformationEquivalence,
    PrecedingTermsNonzeroError,
    TruncatedDeformation,
    check_deformation,
    check_equivalence,
    constant_deformation,
    infinitesimal,
    infinitesimal_cocycle_report,
    infinitesimals_cohomologous,
    rigidity_probe,
    transport_constant,
    transport_deformation,
)
from oridial.linalg import Matrix

from conftest import oriented_trivial, scalar_product_dialgebra, zero_dialgebra


def random_matrix(rng, d=2):
    return Matrix(d, d, [Fraction(rng.randint(-3, 3), rng.randint(1, 2))
                         for _ in range(d * d)])


def test_constant_deformation_passes(od_dual_sign):
    for order in (1, 2, 3):
        report = check_deformation(od_dual_sign, constant_deformation(od_dual_sign, order))
        assert report.ok


def test_identity_equivalence_of_equal_deformations(od_dual_sign):
    const = constant_deformation(od_dual_sign, 2)
    eq = DeformationEquivalence(2, [Matrix.identity(2)] + [Matrix.zeros(2, 2)] * 2)
    assert check_equivalence(od_dual_sign, const, const, eq).ok
    cert = infinitesimals_cohomologous(od_dual_sign, const, const, eq)
    assert cert.is_zero()


def test_transported_deformations_pass_and_are_equivalent(od_dual_sign):
    rng = random.Random(21)
    const = constant_deformation(od_dual_sign, 2)
    for _ in range(5):
        psis = [random_matrix(rng), random_matrix(rng)]
        moved = transport_constant(od_dual_sign, psis, 2)
        assert check_deformation(od_dual_sign, moved).ok
        eq = DeformationEquivalence(2, [Matrix.identity(2)] + psis)
        assert check_equivalence(od_dual_sign, const, moved, eq).ok


def test_infinitesimal_of_constant_is_zero(od_dual_sign):
    inf = infinitesimal(od_dual_sign, constant_deformation(od_dual_sign, 2), 1)
    assert all(m.is_zero() for m in inf.theta)
    assert all(v == 0 for v in coh.degree1_pack(od_dual_sign, *inf.as_pair()))


def test_infinitesimal_is_coboundary_of_psi1(od_dual_sign):
    rng = random.Random(8)
    for _ in range(5):
        psi1 = random_matrix(rng)
        moved = transport_constant(od_dual_sign, [psi1, Matrix.zeros(2, 2)], 2)
        inf = infinitesimal(od_dual_sign, moved, 1)
        alpha, beta = coh.degree1_coboundary(od_dual_sign, psi1)
        assert coh.degree1_pack(od_dual_sign, *inf.as_pair()) == coh.degree1_pack(
            od_dual_sign, alpha, beta)
        assert infinitesimal_cocycle_report(od_dual_sign, inf).ok


def test_second_infinitesimal_is_cocycle(od_dual_sign):
    # vanishing ψ1 makes the order-1 terms zero, so the order-2 pair is
    # the first nonvanishing infinitesimal — still a cocycle
    rng = random.Random(13)
    for _ in range(3):
        psi2 = random_matrix(rng)
        moved = transport_constant(od_dual_sign, [Matrix.zeros(2, 2), psi2], 2)
        assert check_deformation(od_dual_sign, moved).ok
        inf = infinitesimal(od_dual_sign, moved, 2)
        assert infinitesimal_cocycle_report(od_dual_sign, inf).ok


def test_infinitesimal_requires_vanishing_lower_terms(od_dual_sign):
    rng = random.Random(14)
    moved = transport_constant(od_dual_sign, [random_matrix(rng), Matrix.zeros(2, 2)], 2)
    with pytest.raises(PrecedingTermsNonzeroError):
        infinitesimal(od_dual_sign, moved, 2)


def test_certificate_for_equivalent_pairs(od_dual_sign):
    rng = random.Random(30)
    const = constant_deformation(od_dual_sign, 2)
    for _ in range(5):
        psis = [random_matrix(rng), random_matrix(rng)]
        moved = transport_constant(od_dual_sign, psis, 2)
        eq = DeformationEquivalence(2, [Matrix.identity(2)] + psis)
        cert = infinitesimals_cohomologous(od_dual_sign, const, moved, eq)
        assert cert == psis[0]


def test_certificate_between_two_transports(od_dual_sign):
    # def1 = transport by Φ, def2 = transport by Φ∘Ψ; then Ψ intertwines
    # def2 into def1 and ψ1 certifies the infinitesimal difference
    rng = random.Random(31)
    phi1 = random_matrix(rng)
    psi1 = random_matrix(rng)
    d1 = transport_constant(od_dual_sign, [phi1], 1)
    comp1 = Matrix(2, 2, [a + b for a, b in zip(phi1.entries, psi1.entries)])
    # (id + φ1 t)(id + ψ1 t) = id + (φ1 + ψ1) t + φ1ψ1 t^2, truncated at order 1
    d2 = transport_constant(od_dual_sign, [comp1], 1)
    eq = DeformationEquivalence(1, [Matrix.identity(2), psi1])
    rep = check_equivalence(od_dual_sign, d1, d2, eq)
    assert rep.ok
    cert = infinitesimals_cohomologous(od_dual_sign, d1, d2, eq)
    assert cert == psi1


def test_transport_preserves_validity_of_arbitrary_deformations(od_dual_sign):
    # start from a nontrivial valid deformation and push it forward along
    # an unrelated Ψ: the result stays valid and the pair is equivalent
    rng = random.Random(55)
    for _ in range(3):
        seed_psis = [random_matrix(rng), random_matrix(rng)]
        valid = transport_constant(od_dual_sign, seed_psis, 2)
        assert check_deformation(od_dual_sign, valid).ok
        eq = DeformationEquivalence(2, [Matrix.identity(2),
                                        random_matrix(rng), random_matrix(rng)])
        pushed = transport_deformation(od_dual_sign, valid, eq)
        assert check_deformation(od_dual_sign, pushed).ok
        assert check_equivalence(od_dual_sign, pushed, valid, eq).ok
        cert = infinitesimals_cohomologous(od_dual_sign, pushed, valid, eq)
        assert cert == eq.psi[1]


def test_broken_action_coefficient_detected(od_dual_sign):
    moved = transport_constant(od_dual_sign, [Matrix(2, 2, [0, 1, 0, 0]),
                                              Matrix.zeros(2, 2)], 2)
    moved.phi[1][1] = Matrix(2, 2, [0, 0, Fraction(1, 3), 0])
    report = check_deformation(od_dual_sign, moved)
    assert not report.ok
    failure = report.first_failure()
    assert failure.power == 1
    assert "action" in failure.clause


def test_broken_product_coefficient_detected(od_dual_sign):
    moved = constant_deformation(od_dual_sign, 2)
    bad = [[[0, 0], [0, 0]], [[0, 0], [1, 0]]]
    moved = TruncatedDeformation(2, [moved.mlt[0], bad, moved.mlt[2]],
                                 moved.mrt, moved.phi)
    report = check_deformation(od_dual_sign, moved)
    assert not report.ok
    assert report.first_failure().power == 1


def test_wrong_psi_fails_equivalence(od_dual_sign):
    rng = random.Random(40)
    psis = [random_matrix(rng), random_matrix(rng)]
    moved = transport_constant(od_dual_sign, psis, 2)
    const = constant_deformation(od_dual_sign, 2)
    wrong = DeformationEquivalence(
        2, [Matrix.identity(2), Matrix(2, 2, [v + 1 for v in psis[0].entries]), psis[1]])
    report = check_equivalence(od_dual_sign, const, moved, wrong)
    assert not report.ok
    assert report.first_failure().power == 1


def test_order0_terms_validated(od_dual_sign):
    const = constant_deformation(od_dual_sign, 1)
    tampered = TruncatedDeformation(
        1, [zero_dialgebra(2).left, const.mlt[1]], const.mrt, const.phi)
    report = check_deformation(od_dual_sign, tampered)
    assert not report.ok
    assert "order-0" in report.first_failure().clause


def test_rigidity_probe_matches_cohomology(od_dual_sign):
    probe = rigidity_probe(od_dual_sign)
    assert probe.dim == coh.equivariant_cohomology(od_dual_sign, 1).dim == 1
    assert not probe.obstruction_trivial
    assert len(probe.candidates) == 1
    alpha, beta = probe.candidates[0]
    assert coh.is_degree1_cocycle(od_dual_sign, alpha, beta).ok


def test_rigidity_probe_trivial_case():
    probe = rigidity_probe(oriented_trivial(scalar_product_dialgebra()))
    assert probe.dim == 0 and probe.obstruction_trivial and probe.candidates == []


def test_rigidity_probe_zero_products():
    probe = rigidity_probe(oriented_trivial(zero_dialgebra(2)))
    assert probe.dim == 16 and not probe.obstruction_trivial


def test_equivalence_shape_validation(od_dual_sign):
    with pytest.raises(ValueError):
        DeformationEquivalence(1, [Matrix.zeros(2, 2), Matrix.identity(2)])
    with pytest.raises(ValueError):
        TruncatedDeformation(0, [], [], [])
    const1 = constant_deformation(od_dual_sign, 1)
    const2 = constant_deformation(od_dual_sign, 2)
    eq = DeformationEquivalence(1, [Matrix.identity(2), Matrix.zeros(2, 2)])
    with pytest.raises(ValueError):
        check_equivalence(od_dual_sign, const1, const2, eq)
