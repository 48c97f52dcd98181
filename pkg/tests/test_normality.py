import json

import numpy as np
import pytest

from tto import (BlaschkeProduct, FourierSeries, SymbolPair, TMBasis, build_tto,
                 classify_normal, commutator_defect, sedlock_condition,
                 verify_intertwining, verify_kernel_identity,
                 verify_moment_identities, verify_modulus_equality,
                 verify_norm_identity)
from tto.circle import CircleGrid
from tto.instances import generate_instance, random_centered
from tto.model_space import theta_conj
from tto.normality import probe_points, verify_poisson_mechanism

from .conftest import random_theta


def sym(basis, p1, p2, c0=0):
    return SymbolPair(c0, basis.vector(p1), basis.vector(p2))


def test_commutator_examples():
    assert commutator_defect(np.eye(3)) == 0
    assert abs(commutator_defect(np.array([[0, 0], [1, 0]])) - np.sqrt(2)) < 1e-15
    P = np.array([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    assert commutator_defect(P) == 0
    with pytest.raises(ValueError):
        commutator_defect(np.zeros((2, 3)))


def test_classify_examples(z3_basis):
    a = np.exp(1j * np.pi / 4)
    v = classify_normal(sym(z3_basis, [0, 1, 0], [0, a, 0]))
    assert v.kind == "NormalPropor" and abs(v.alpha - a) < 1e-12 and v.overlap is None

    s = sym(z3_basis, [0, 1, 0], [0, 0, 1])
    v = classify_normal(s, with_oracle=True)
    assert v.kind == "NormalConjLinked" and abs(v.alpha - 1) < 1e-12
    assert v.commutator_defect < 1e-12

    s = sym(z3_basis, [0, 1, 0], [0, 1, 0.1])
    v = classify_normal(s)
    assert v.kind == "NotNormal" and v.residual_a > 0.05 and v.residual_b > 0.05
    assert commutator_defect(build_tto(z3_basis, s)) > 1e-3


def test_classify_overlap(z2_basis):
    # theta = z^2, phi1 = z: theta conj(phi1) = z = phi1, both branches hold
    v = classify_normal(sym(z2_basis, [0, 1], [0, 1j]))
    assert v.kind == "NormalPropor" and abs(v.alpha - 1j) < 1e-12
    assert v.overlap[0] == "NormalConjLinked" and abs(v.overlap[1] - 1j) < 1e-12


def test_classify_degenerate_and_one_sided(z3_basis):
    v = classify_normal(sym(z3_basis, [0, 0, 0], [0, 0, 0], c0=3))
    assert v.kind == "NormalDegenerate" and v.is_normal
    s = sym(z3_basis, [0, 1, 0], [0, 0, 0])
    assert classify_normal(s).kind == "NotNormal"
    assert commutator_defect(build_tto(z3_basis, s)) > 1e-4
    with pytest.raises(ValueError):
        classify_normal(s, tol=0)


def test_classify_requires_origin_zero():
    basis = TMBasis(BlaschkeProduct((0.4,)))
    s = SymbolPair(0, basis.zero(), basis.zero())
    with pytest.raises(ValueError):
        classify_normal(s)


def test_verdict_json(z3_basis):
    v = classify_normal(sym(z3_basis, [0, 1, 0], [0, 0, 1]), with_oracle=True)
    data = json.loads(v.dumps())
    assert data["kind"] == "NormalConjLinked"
    assert data["alpha"] == pytest.approx([1, 0])
    assert set(data) >= {"residual_a", "residual_b", "commutator_defect", "tolerances"}


def test_classifier_matches_oracle_batch():
    for i in range(80):
        kind = ("random", "propor", "conj_linked", "perturbed")[i % 4]
        inst = generate_instance(1 + i % 8, 5000 + i, kind)
        v = classify_normal(inst.symbol)
        d = commutator_defect(build_tto(inst.basis, inst.symbol))
        assert v.is_normal == (d < 1e-8)
        assert not 1e-8 <= d <= 1e-4


def test_unimodular_rotation_invariance():
    for i in range(20):
        inst = generate_instance(2 + i % 7, 7000 + i, ("propor", "conj_linked", "perturbed", "random")[i % 4])
        v = classify_normal(inst.symbol)
        beta = np.exp(2j * np.pi * i / 20 + 0.1j)
        w = classify_normal(inst.symbol.rotated(beta))
        assert v.kind == w.kind
        for r0, r1 in ((v.residual_a, w.residual_a), (v.residual_b, w.residual_b)):
            assert r1 <= r0 * (1 + 1e-12) + 1e-15 and r0 <= r1 * (1 + 1e-12) + 1e-15


def test_norm_identity_examples(z2_basis, rng):
    s = sym(z2_basis, [0, 1], [0, 0])
    lhs, rhs = verify_norm_identity(s, z2_basis.vector([1, 0]))
    assert abs(lhs - 1) < 1e-14 and abs(rhs - 1) < 1e-12

    basis = TMBasis(random_theta(rng, 5, origin=True))
    phi = random_centered(basis, rng)
    u = basis.vector(rng.standard_normal(5) + 1j * rng.standard_normal(5))
    lhs, rhs = verify_norm_identity(SymbolPair(0.3, phi, phi), u)
    assert abs(lhs) < 1e-12 and abs(rhs) < 1e-12


def test_norm_identity_random(rng):
    for i in range(30):
        inst = generate_instance(1 + i % 8, 9000 + i, ("random", "perturbed", "propor")[i % 3])
        basis = inst.basis
        u = basis.vector(rng.standard_normal(basis.dim) + 1j * rng.standard_normal(basis.dim))
        lhs, rhs = verify_norm_identity(inst.symbol, u)
        assert abs(lhs - rhs) < 1e-9 * (1 + abs(lhs))


def test_modulus_examples(z3_basis, rng):
    basis = TMBasis(random_theta(rng, 4, origin=True))
    phi = random_centered(basis, rng)
    check = verify_modulus_equality(SymbolPair(0, phi, phi * 1j))
    assert check.grid_defect < 1e-14 and check.poisson_defect < 1e-12
    assert verify_modulus_equality(sym(z3_basis, [0, 1, 0], [0, 0, 1])).grid_defect < 1e-14
    # |2 z^2| - |z| = 1 on the circle
    check = verify_modulus_equality(sym(z3_basis, [0, 1, 0], [0, 0, 2]))
    assert abs(check.grid_defect - 1) < 1e-14
    # Poisson extension of 4 - 1 is 3 everywhere
    assert abs(check.poisson_defect - 3) < 1e-12


def test_poisson_mechanism(rng):
    basis = TMBasis(random_theta(rng, 5, origin=True))
    phi = random_centered(basis, rng)
    for w in probe_points(6):
        lhs, rhs = verify_poisson_mechanism(phi, w)
        assert abs(lhs - rhs) < 1e-10


def test_intertwining_examples(rng):
    th = BlaschkeProduct.monomial(2)
    left, right = verify_intertwining(th, FourierSeries.monomial(1), FourierSeries.monomial(0))
    assert abs(left - 1) < 1e-14 and abs(right - 1) < 1e-14
    left, right = verify_intertwining(th, FourierSeries.zeros(0), FourierSeries.monomial(2))
    assert left == 0 and right == 0
    for degree in (1, 3, 6):
        th = random_theta(rng, degree)
        g = FourierSeries(np.concatenate([np.zeros(5), rng.standard_normal(6) + 1j * rng.standard_normal(6)]))
        f = FourierSeries(np.concatenate([np.zeros(4), rng.standard_normal(5)]))
        left, right = verify_intertwining(th, g, f)
        assert abs(left - right) < 1e-9 * (1 + left)
    with pytest.raises(ValueError):
        verify_intertwining(th, FourierSeries.monomial(-1), f)


def test_kernel_identity_examples(rng):
    assert verify_kernel_identity(FourierSeries.monomial(0), 0.5) < 1e-13
    assert verify_kernel_identity(FourierSeries.monomial(1), 0.3) < 1e-13
    assert verify_kernel_identity(FourierSeries.monomial(2), 0) < 1e-15
    f = FourierSeries(np.concatenate([np.zeros(6), rng.standard_normal(7) + 1j * rng.standard_normal(7)]))
    assert verify_kernel_identity(f, 0.8 - 0.3j, CircleGrid(2048)) < 1e-9
    with pytest.raises(ValueError):
        verify_kernel_identity(FourierSeries.monomial(-1), 0.1)


def test_moment_identities_examples(z3_basis):
    s = sym(z3_basis, [0, 1, 0], [0, 0, 1])
    # (theta conj phi1)(w) = w^2 and (theta conj phi2)(w) = w
    assert np.allclose(theta_conj(s.phi1).coeffs, [0, 0, 1], atol=1e-15)
    assert abs(theta_conj(s.phi1)(0.4) - 0.16) < 1e-14
    assert abs(theta_conj(s.phi2)(0.4) - 0.4) < 1e-14
    m1, m2 = verify_moment_identities(s, 0.4)
    assert m1 < 1e-14 and m2 < 1e-14
    assert max(verify_moment_identities(s, 0)) < 1e-15


def test_moment_identities_on_normal_instances():
    for i in range(12):
        inst = generate_instance(2 + i % 7, 300 + i, ("propor", "conj_linked")[i % 2])
        for w in probe_points():
            assert max(verify_moment_identities(inst.symbol, w)) < 1e-8


def test_sedlock_examples(z3_basis):
    alpha, degenerate = sedlock_condition(sym(z3_basis, [0, 1, 0], [0, 0, 1]))
    assert abs(alpha - 1) < 1e-12 and not degenerate
    assert sedlock_condition(sym(z3_basis, [0, 0, 0], [0, 0, 0])) == (1, True)
    assert sedlock_condition(sym(z3_basis, [0, 1, 0], [0, 1, 1]))[0] is None


def test_sedlock_alpha_is_conjugate_of_branch_b():
    for i in range(10):
        inst = generate_instance(3 + i % 5, 600 + i, "conj_linked")
        v = classify_normal(inst.symbol)
        alpha, _ = sedlock_condition(inst.symbol)
        assert v.kind == "NormalConjLinked" or v.overlap is not None
        branch_b = v.alpha if v.kind == "NormalConjLinked" else v.overlap[1]
        assert abs(alpha - np.conj(branch_b)) < 1e-10
