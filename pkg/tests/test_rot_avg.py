from fractions import Fraction

import numpy as np
import pytest

from chiraforce.errors import InputDomainError
from chiraforce.rational import as_exact
from chiraforce.rot_avg import (averaged_observable, averaged_observable_exact,
                                gram_inverse_exact, rotational_average,
                                rotational_average_exact, sample_rotations,
                                so3_observable_mc, so3_sample_average,
                                so3_sample_average_batch)
from chiraforce.tensor_core import (isotropic_basis, kronecker_delta,
                                    levi_civita, rotate, tensor)

X_HAT = np.array([1.0, 0.0, 0.0])
Y_HAT = np.array([0.0, 1.0, 0.0])
Z_HAT = np.array([0.0, 0.0, 1.0])


def _random_tensor(rng, rank):
    return tensor(rng.standard_normal((3,) * rank)
                  + 1j * rng.standard_normal((3,) * rank))


def test_delta_is_fixed_point():
    result = rotational_average(kronecker_delta())
    assert np.allclose(result.averaged_tensor.components, np.eye(3), atol=1e-15)
    assert np.allclose(result.coefficients, [1.0])


def test_diagonal_tensor_average():
    # diag(1,2,3) has trace 6, so the average is 2*delta
    result = rotational_average(tensor(np.diag([1.0, 2.0, 3.0])))
    assert np.allclose(result.averaged_tensor.components, 2.0 * np.eye(3), atol=1e-14)


def test_rank2_closed_form():
    rng = np.random.default_rng(21)
    for _ in range(10):
        t = _random_tensor(rng, 2)
        avg = rotational_average(t).averaged_tensor.components
        expected = (np.trace(t.components) / 3.0) * np.eye(3)
        assert np.max(np.abs(avg - expected)) < 1e-14


def test_epsilon_average_observable():
    # epsilon is isotropic: contracted with (x, y, z) it gives eps_012 = 1
    value = averaged_observable(levi_civita(), [X_HAT, Y_HAT, Z_HAT])
    assert abs(value - 1.0) < 1e-12


def test_alpha_trace_observable():
    rng = np.random.default_rng(22)
    sym = rng.standard_normal((3, 3))
    sym = 0.5 * (sym + sym.T)
    e = (X_HAT + 1j * Y_HAT) / np.sqrt(2.0)
    value = averaged_observable(tensor(sym), [np.conj(e), e])
    assert abs(value - np.trace(sym) / 3.0) < 1e-12


def test_unsupported_ranks_rejected():
    with pytest.raises(InputDomainError):
        rotational_average(tensor([1.0, 0.0, 0.0]))
    with pytest.raises(InputDomainError):
        averaged_observable(kronecker_delta(), [X_HAT])


@pytest.mark.parametrize("rank", [2, 3, 4, 5])
def test_average_idempotent_and_invariant(rank):
    rng = np.random.default_rng(100 + rank)
    t = _random_tensor(rng, rank)
    result = rotational_average(t)
    avg = result.averaged_tensor

    twice = rotational_average(avg).averaged_tensor
    assert np.max(np.abs(twice.components - avg.components)) < 1e-12

    rot = sample_rotations(rng, 1)[0]
    pre = rotational_average(rotate(t, rot)).averaged_tensor
    assert np.max(np.abs(pre.components - avg.components)) < 1e-12

    # the average itself is rotation invariant
    rotated_avg = rotate(avg, rot)
    assert np.max(np.abs(rotated_avg.components - avg.components)) < 1e-12


@pytest.mark.parametrize("rank", [2, 3, 4, 5])
def test_average_linearity_and_reconstruction(rank):
    rng = np.random.default_rng(200 + rank)
    t1 = _random_tensor(rng, rank)
    t2 = _random_tensor(rng, rank)
    a, b = 1.3 - 0.4j, -0.7 + 2.2j
    lhs = rotational_average(a * t1 + b * t2).averaged_tensor
    rhs = (a * rotational_average(t1).averaged_tensor
           + b * rotational_average(t2).averaged_tensor)
    assert np.max(np.abs(lhs.components - rhs.components)) < 1e-12

    result = rotational_average(t1)
    members = isotropic_basis(rank).members
    rebuilt = sum(c * m.components for c, m in zip(result.coefficients, members))
    assert np.max(np.abs(rebuilt - result.averaged_tensor.components)) < 1e-12


def test_rank4_gram_inverse_closed_form():
    # the 3x3 system has the exact inverse (1/30) * (5I - J)
    inv = gram_inverse_exact(4)
    for i in range(3):
        for j in range(3):
            expected = Fraction(4, 30) if i == j else Fraction(-1, 30)
            assert inv[i][j] == expected


def test_rank5_gram_matrix_frozen():
    # independently derived integer Gram matrix of the six epsilon-delta members
    from chiraforce.rot_avg import _gram_exact
    expected = [
        [18, 6, 6, -6, -6, 0],
        [6, 18, 6, 6, 0, -6],
        [6, 6, 18, 0, 6, 6],
        [-6, 6, 0, 18, 6, -6],
        [-6, 0, 6, 6, 18, 6],
        [0, -6, 6, -6, 6, 18],
    ]
    gram = _gram_exact(5)
    assert [[int(x) for x in row] for row in gram] == expected


def test_mc_delta_fixed_point():
    result = so3_sample_average(kronecker_delta(), 2000, seed=5)
    assert np.max(np.abs(result.averaged_tensor.components - np.eye(3))) < 1e-13


def test_mc_projector_xx():
    # x (x) x averages to delta/3
    result = so3_sample_average(tensor(np.outer(X_HAT, X_HAT)), 20_000, seed=6)
    err = np.abs(result.averaged_tensor.components - np.eye(3) / 3.0)
    allowed = 3.0 * result.standard_error.components.real + 1e-13
    assert np.all(err <= allowed)


def test_mc_determinism_and_workers():
    rng = np.random.default_rng(23)
    t = _random_tensor(rng, 3)
    a = so3_sample_average(t, 5000, seed=9)
    b = so3_sample_average(t, 5000, seed=9)
    assert np.array_equal(a.averaged_tensor.components, b.averaged_tensor.components)
    assert np.array_equal(a.standard_error.components, b.standard_error.components)

    big1 = so3_sample_average(t, 60_001, seed=9, workers=1)
    big2 = so3_sample_average(t, 60_001, seed=9, workers=3)
    assert np.array_equal(big1.averaged_tensor.components,
                          big2.averaged_tensor.components)
    assert np.array_equal(big1.standard_error.components,
                          big2.standard_error.components)


def test_mc_batch_matches_single():
    rng = np.random.default_rng(24)
    tensors = [_random_tensor(rng, 4) for _ in range(3)]
    batch = so3_sample_average_batch(tensors, 60_001, seed=31)
    for t, from_batch in zip(tensors, batch):
        single = so3_sample_average(t, 60_001, seed=31)
        assert np.array_equal(single.averaged_tensor.components,
                              from_batch.averaged_tensor.components)
        assert np.array_equal(single.standard_error.components,
                              from_batch.standard_error.components)


@pytest.mark.parametrize("rank", [2, 3, 4, 5])
def test_mc_agrees_with_analytic(rank):
    rng = np.random.default_rng(300 + rank)
    t = _random_tensor(rng, rank)
    mc = so3_sample_average(t, 20_000, seed=400 + rank)
    analytic = rotational_average(t).averaged_tensor.components
    err = np.abs(mc.averaged_tensor.components - analytic)
    allowed = 3.0 * mc.standard_error.components.real + 1e-13
    assert np.all(err <= allowed)


def test_mc_paths_consistent_across_threshold():
    # direct (small n) and blocked (large n) paths estimate the same quantity
    rng = np.random.default_rng(25)
    t = _random_tensor(rng, 2)
    direct = so3_sample_average(t, 50_000, seed=77)
    blocked = so3_sample_average(t, 50_010, seed=77)
    analytic = rotational_average(t).averaged_tensor.components
    for result in (direct, blocked):
        err = np.abs(result.averaged_tensor.components - analytic)
        allowed = 3.0 * result.standard_error.components.real + 1e-13
        assert np.all(err <= allowed)


def test_mc_input_validation():
    with pytest.raises(InputDomainError):
        so3_sample_average(kronecker_delta(), 0, seed=1)


def test_mc_observable_scalar():
    rng = np.random.default_rng(26)
    t = _random_tensor(rng, 4)
    vectors = [rng.standard_normal(3) for _ in range(4)]
    analytic = averaged_observable(t, vectors)
    value, se = so3_observable_mc(t, vectors, 20_000, seed=88)
    assert abs(value - analytic) <= 3.0 * se + 1e-13
    # large-sample blocked path too
    value2, se2 = so3_observable_mc(t, vectors, 60_000, seed=88)
    assert abs(value2 - analytic) <= 3.0 * se2 + 1e-13


def test_exact_average_matches_float():
    rng = np.random.default_rng(27)
    t = _random_tensor(rng, 4)
    exact = rotational_average_exact(t)
    floats = rotational_average(t).coefficients
    for (re, im), c in zip(exact, floats):
        assert abs(float(re) - c.real) < 1e-12
        assert abs(float(im) - c.imag) < 1e-12


def test_exact_observable_matches_float():
    rng = np.random.default_rng(28)
    comps = rng.standard_normal((3, 3, 3, 3))
    vectors = [rng.standard_normal(3) for _ in range(4)]
    exact = averaged_observable_exact(as_exact(comps), [as_exact(v) for v in vectors])
    floats = averaged_observable(tensor(comps), vectors)
    assert abs(float(exact) - floats.real) < 1e-12
    assert abs(floats.imag) < 1e-15
