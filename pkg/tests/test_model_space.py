import json

import numpy as np
import pytest

from tto import (BlaschkeProduct, FourierSeries, ModelVector, TMBasis,
                 conjugation, crofoot, crofoot_matrix,
                 p_theta, project_model, reproducing_kernel, tm_basis)
from tto.circle import CircleGrid
from tto.model_space import ExpansionError

from .conftest import random_theta


def random_vector(basis, rng):
    return basis.vector(rng.standard_normal(basis.dim) + 1j * rng.standard_normal(basis.dim))


def test_basis_of_monomial_theta():
    basis = tm_basis(BlaschkeProduct.monomial(4))
    for k, s in enumerate(basis.series):
        assert s.allclose(FourierSeries.monomial(k).with_band(s.band_limit), 1e-15)


def test_single_zero_basis_closed_form():
    basis = tm_basis(BlaschkeProduct((0.5,)))
    z = basis.grid.nodes
    assert np.allclose(basis.samples[0], np.sqrt(0.75) / (1 - 0.5 * z), atol=1e-15)
    # ||e_1||^2 = 0.75 * sum 0.25**k
    oracle = 0.75 * sum(0.25**k for k in range(100))
    assert abs(np.linalg.norm(basis.series[0].coeffs) ** 2 - oracle) < 1e-14


def test_gram_defect_two_factor():
    th = BlaschkeProduct((0, 0.5))
    assert tm_basis(th).gram_defect() < 1e-10


def test_basis_orthogonal_to_theta_h2(rng):
    for degree in (1, 3, 6, 10):
        th = random_theta(rng, degree)
        basis = TMBasis(th)
        assert basis.gram_defect() < 1e-10
        z = basis.grid.nodes
        for m in range(degree + 1):
            assert np.max(np.abs(basis.coords(basis.theta_samples * z**m))) < 1e-10


def test_basis_rejects_bad_grid():
    th = BlaschkeProduct((0.99,))
    with pytest.raises(ValueError):
        TMBasis(th)
    with pytest.raises(ValueError, match="Gram"):
        TMBasis(th, CircleGrid(64))
    assert TMBasis(th, CircleGrid(8192)).gram_defect() < 1e-10


def test_project_model_examples(rng):
    th = random_theta(rng, 3, origin=True)
    basis = TMBasis(th)
    z = basis.grid.nodes
    thz = FourierSeries.from_samples(th(z) * z)
    assert project_model(thz, basis).norm() < 1e-12
    one = project_model(FourierSeries.monomial(0), basis)
    assert np.max(np.abs(one.samples() - 1)) < 1e-12
    z2 = TMBasis(BlaschkeProduct.monomial(2))
    assert project_model(FourierSeries.monomial(3), z2).norm() < 1e-15


def test_project_model_agrees_with_p_theta_formula(rng):
    th = random_theta(rng, 5)
    basis = TMBasis(th)
    f = FourierSeries(rng.standard_normal(21) + 1j * rng.standard_normal(21))
    via_formula = p_theta(f, basis).samples(basis.grid)
    via_basis = project_model(f, basis).samples()
    assert np.max(np.abs(via_formula - via_basis)) < 1e-10
    # idempotent, and fixes K_theta
    v = project_model(FourierSeries.from_samples(via_basis), basis)
    assert np.max(np.abs(v.coeffs - project_model(f, basis).coeffs)) < 1e-10
    g = random_vector(basis, rng)
    assert np.max(np.abs(project_model(g.series(), basis).coeffs - g.coeffs)) < 1e-10
    # kills [H^2]^perp
    assert project_model(FourierSeries.from_dict({-1: 1, -4: 1j}), basis).norm() < 1e-12


def test_reproducing_kernel_examples():
    z2 = TMBasis(BlaschkeProduct.monomial(2))
    k0 = reproducing_kernel(z2, 0)
    assert np.allclose(k0.coeffs, [1, 0])
    # (1 - 0.25 z^2)/(1 - 0.5 z) = 1 + 0.5 z
    assert np.allclose(reproducing_kernel(z2, 0.5).coeffs, [1, 0.5])


def test_reproducing_property(rng):
    for degree in (1, 2, 4, 7):
        th = random_theta(rng, degree)
        basis = TMBasis(th)
        z = basis.grid.nodes
        for _ in range(32):
            w = 0.9 * np.sqrt(rng.random()) * np.exp(2j * np.pi * rng.random())
            f = random_vector(basis, rng)
            k = reproducing_kernel(basis, w)
            by_formula = (1 - np.conj(th(w)) * basis.theta_samples) / (1 - np.conj(w) * z)
            assert np.max(np.abs(k.samples() - by_formula)) < 1e-10
            # <f, k> by quadrature against the closed form of k, vs f(w) from the basis
            quad = np.mean(f.samples() * np.conj(by_formula))
            assert abs(quad - np.sum(f.coeffs * basis.evaluate(w))) < 1e-10
            assert abs(f(w) - quad) < 1e-10
            # <k, k> = k(w) = (1 - |theta(w)|^2)/(1 - |w|^2)
            assert abs(k.norm() ** 2 - (1 - abs(th(w)) ** 2) / (1 - abs(w) ** 2)) < 1e-10


def test_kernel_factorization(rng):
    th = random_theta(rng, 5)
    basis = TMBasis(th)
    w = 0.4 - 0.3j
    kw = FourierSeries.from_samples(1 / (1 - np.conj(w) * basis.grid.nodes))
    prod = (1 - np.conj(th(w)) * basis.theta_samples) * kw.samples(basis.grid)
    assert np.max(np.abs(prod - reproducing_kernel(basis, w).samples())) < 1e-10


def test_conjugation_examples():
    z2 = TMBasis(BlaschkeProduct.monomial(2))
    assert np.allclose(conjugation(z2.vector([1, 0])).coeffs, [0, 1], atol=1e-15)
    z3 = TMBasis(BlaschkeProduct.monomial(3))
    assert np.allclose(conjugation(z3.vector([0, 1, 0])).coeffs, [0, 1, 0], atol=1e-15)


def test_conjugation_antiunitary_involution(rng):
    th = random_theta(rng, 6)
    basis = TMBasis(th)
    f, g = random_vector(basis, rng), random_vector(basis, rng)
    Cf, Cg = conjugation(f), conjugation(g)
    # norm by quadrature on the raw boundary function
    raw = basis.theta_samples * np.conj(basis.grid.nodes) * np.conj(f.samples())
    assert abs(np.sqrt(np.mean(np.abs(raw) ** 2)) - f.norm()) < 1e-10
    assert abs(Cf.norm() - f.norm()) < 1e-10
    assert abs(Cf.inner(Cg) - g.inner(f)) < 1e-10
    assert np.max(np.abs(conjugation(Cf).coeffs - f.coeffs)) < 1e-10


def test_expand_rejects_outside_functions(rng):
    basis = TMBasis(random_theta(rng, 3))
    with pytest.raises(ExpansionError):
        basis.expand(basis.theta_samples * basis.grid.nodes)


def test_crofoot_identity_for_zero_parameter(rng):
    basis = TMBasis(random_theta(rng, 3, origin=True))
    f = random_vector(basis, rng)
    assert np.max(np.abs(crofoot(f, 0, basis).coeffs - f.coeffs)) < 1e-12


def test_crofoot_single_zero_example():
    basis = TMBasis(BlaschkeProduct.monomial(1))
    Jf = crofoot(basis.vector([1]), 0.3)
    z = basis.grid.nodes
    assert np.max(np.abs(Jf.samples() - np.sqrt(0.91) / (1 - 0.3 * z))) < 1e-12
    # 0.91 * sum 0.09**k = 1
    assert abs(0.91 * sum(0.09**k for k in range(100)) - 1) < 1e-15
    assert abs(Jf.norm() - 1) < 1e-12


def test_crofoot_reduction_to_origin(rng):
    for degree in (1, 2, 5, 8):
        th = random_theta(rng, degree, radius=0.7)
        basis = TMBasis(th)
        a = complex(th(0))
        J, target = crofoot_matrix(basis, a)
        assert abs(target.theta(0)) < 1e-10
        assert np.max(np.abs(J.conj().T @ J - np.eye(degree))) < 1e-10
        assert np.max(np.abs(J @ J.conj().T - np.eye(degree))) < 1e-10
        f = random_vector(basis, rng)
        assert abs(crofoot(f, a, target).norm() - f.norm()) < 1e-10
        # inverse has the same form: J^{-1} g = sqrt(1-|a|^2)/(1 + conj(a) theta') g
        back, _ = crofoot_matrix(target, -a, basis)
        assert np.max(np.abs(back @ J - np.eye(degree))) < 1e-9


def test_model_vector_json(rng):
    basis = TMBasis(random_theta(rng, 3))
    f = random_vector(basis, rng)
    data = json.loads(json.dumps(f.to_json()))
    assert data["theta_ref"] == basis.ref
    assert np.array_equal(ModelVector.from_json(data, basis).coeffs, f.coeffs)
    other = TMBasis(random_theta(rng, 3))
    with pytest.raises(ValueError):
        ModelVector.from_json(data, other)
    with pytest.raises(ValueError):
        f + random_vector(other, rng)
    with pytest.raises(ValueError):
        ModelVector(basis, [1, 2])


def test_model_vector_parseval(rng):
    basis = TMBasis(random_theta(rng, 4))
    f = random_vector(basis, rng)
    assert abs(f.norm() ** 2 - np.mean(np.abs(f.samples()) ** 2)) < 1e-10
