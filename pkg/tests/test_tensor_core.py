import numpy as np
import pytest

from chiraforce.errors import InputDomainError
from chiraforce.rational import determinant_exact
from chiraforce.rot_avg import _gram_exact, sample_rotations
from chiraforce.tensor_core import (CartesianTensor, ISOTROPIC_MEMBER_COUNTS,
                                    full_contraction, isotropic_basis,
                                    isotropic_basis_exact, kronecker_delta,
                                    levi_civita, outer_product, rotate, tensor)


def test_kronecker_delta_entries():
    delta = kronecker_delta()
    assert delta.components[0, 0] == 1.0
    assert delta.components[0, 1] == 0.0
    assert complex(np.trace(delta.components)) == 3.0


def test_levi_civita_entries():
    eps = levi_civita()
    assert eps.components[0, 1, 2] == 1.0
    assert eps.components[1, 0, 2] == -1.0
    assert eps.components[0, 0, 2] == 0.0
    # antisymmetry under every adjacent swap
    arr = eps.components
    assert np.array_equal(arr, -np.swapaxes(arr, 0, 1))
    assert np.array_equal(arr, -np.swapaxes(arr, 1, 2))


def test_outer_product_values():
    delta = kronecker_delta()
    four = outer_product(delta, delta)
    assert four.rank == 4
    assert four.components[0, 0, 1, 1] == 1.0
    assert four.components[0, 1, 0, 1] == 0.0

    two = outer_product(tensor(2.0), delta)
    assert np.allclose(two.components, 2.0 * np.eye(3))

    x_hat = tensor([1.0, 0.0, 0.0])
    y_hat = tensor([0.0, 1.0, 0.0])
    xy = outer_product(x_hat, y_hat)
    expected = np.zeros((3, 3))
    expected[0, 1] = 1.0
    assert np.array_equal(xy.components, expected)


def test_outer_product_rank_overflow():
    r3 = levi_civita()
    r4 = outer_product(kronecker_delta(), kronecker_delta())
    with pytest.raises(InputDomainError, match="3 \\+ 4 = 7"):
        outer_product(r3, r4)


def test_full_contraction_values():
    delta = kronecker_delta()
    eps = levi_civita()
    assert full_contraction(delta, delta) == 3.0
    assert full_contraction(eps, eps) == 6.0
    rng = np.random.default_rng(3)
    t = tensor(rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)))
    assert np.isclose(full_contraction(t, delta), np.trace(t.components))
    with pytest.raises(InputDomainError):
        full_contraction(delta, eps)


def test_tensor_validation():
    with pytest.raises(InputDomainError):
        CartesianTensor(np.zeros((3, 2)))
    with pytest.raises(InputDomainError):
        CartesianTensor(np.zeros((3,) * 7))
    with pytest.raises(InputDomainError):
        CartesianTensor.from_flat(2, [1.0] * 8)
    t = CartesianTensor.from_flat(2, list(range(9)), unit_tag="test")
    assert t.components[1, 2] == 5.0 and t.unit_tag == "test"


def test_tensor_arithmetic():
    rng = np.random.default_rng(4)
    a = tensor(rng.standard_normal((3, 3)))
    b = tensor(rng.standard_normal((3, 3)))
    assert np.allclose((a + b).components, a.components + b.components)
    assert np.allclose((a - b).components, a.components - b.components)
    assert np.allclose((2.5 * a).components, 2.5 * a.components)
    assert np.allclose((-a).components, -a.components)
    with pytest.raises(InputDomainError):
        a + levi_civita()


@pytest.mark.parametrize("rank", [2, 3, 4, 5])
def test_isotropic_member_counts(rank):
    basis = isotropic_basis(rank)
    assert len(basis.members) == ISOTROPIC_MEMBER_COUNTS[rank]
    assert all(m.rank == rank for m in basis.members)


def test_rank2_basis_is_delta():
    basis = isotropic_basis(2)
    assert np.array_equal(basis.members[0].components, kronecker_delta().components)


@pytest.mark.parametrize("rank", [2, 3, 4, 5])
def test_isotropic_rotation_invariance(rank):
    # every member must be a fixed point of 100 uniformly sampled rotations
    rng = np.random.default_rng(11)
    rotations = sample_rotations(rng, 100)
    for member in isotropic_basis(rank).members:
        for rot in rotations:
            rotated = rotate(member, rot)
            assert np.max(np.abs(rotated.components - member.components)) < 1e-12


def test_rank5_members_linearly_independent():
    # Gram-matrix rank test, exact: 6 members, nonzero determinant
    gram = _gram_exact(5)
    assert len(gram) == 6
    assert determinant_exact(gram) != 0
    floats = np.array([[float(x) for x in row] for row in gram])
    assert np.linalg.matrix_rank(floats) == 6


def test_epsilon_delta_identity_exact():
    eps = levi_civita().components.real
    delta = np.eye(3)
    lhs = np.einsum("ijk,ilm->jklm", eps, eps)
    rhs = (np.einsum("jl,km->jklm", delta, delta)
           - np.einsum("jm,kl->jklm", delta, delta))
    assert np.array_equal(lhs, rhs)


def test_contraction_bilinearity_property():
    rng = np.random.default_rng(12)
    for rank in (2, 3, 4):
        a = tensor(rng.standard_normal((3,) * rank) + 1j * rng.standard_normal((3,) * rank))
        b = tensor(rng.standard_normal((3,) * rank) + 1j * rng.standard_normal((3,) * rank))
        c = tensor(rng.standard_normal((3,) * rank) + 1j * rng.standard_normal((3,) * rank))
        lhs = full_contraction(a + b, c)
        rhs = full_contraction(a, c) + full_contraction(b, c)
        assert abs(lhs - rhs) < 1e-12


def test_rotation_application_definition():
    # rank-1 rotation must agree with the matrix-vector product
    rng = np.random.default_rng(13)
    rot = sample_rotations(rng, 1)[0]
    v = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    rotated = rotate(tensor(v), rot)
    assert np.allclose(rotated.components, rot @ v)
    # rank-2 agrees with R T R^T
    t = rng.standard_normal((3, 3))
    rotated2 = rotate(tensor(t), rot)
    assert np.allclose(rotated2.components, rot @ t @ rot.T)


def test_exact_basis_matches_float_basis():
    for rank in (2, 3, 4, 5):
        exact = isotropic_basis_exact(rank)
        floats = isotropic_basis(rank).members
        for e_arr, f_member in zip(exact, floats):
            as_float = np.array([[float(x)] for x in e_arr.reshape(-1)]).reshape(e_arr.shape)
            assert np.array_equal(as_float, f_member.components.real)


def test_isotropic_basis_unsupported_rank():
    with pytest.raises(InputDomainError):
        isotropic_basis(6)
    with pytest.raises(InputDomainError):
        isotropic_basis(1)
