import numpy as np
import pytest

from chiraforce.constants import (EV_TO_JOULE, FINE_STRUCTURE, INV_FINE_STRUCTURE,
                                  REDUCED_PLANCK, SPEED_OF_LIGHT,
                                  VACUUM_PERMITTIVITY)
from chiraforce.errors import InputDomainError, NearResonanceError
from chiraforce.molecule import (MolecularModel, TransitionState,
                                 build_response_tensors, example_chiral_model,
                                 mirror_molecule, model_from_dimension,
                                 random_chiral_model, static_alpha_finite_field)

OMEGA_532 = SPEED_OF_LIGHT * 2.0 * np.pi / 532e-9


def two_level_model(mu=(1.0e-29, 0.0, 0.0), gap_ev=4.0):
    state = TransitionState(energy=gap_ev * EV_TO_JOULE,
                            mu=np.array(mu),
                            m_bar=np.zeros(3),
                            quadrupole=np.zeros((3, 3)))
    return MolecularModel(label="two-level", ground_energy=0.0, states=(state,))


def test_achiral_moments_give_zero_chiral_response():
    tensors = build_response_tensors(two_level_model(), OMEGA_532)
    assert np.max(np.abs(tensors.g_bar)) == 0.0
    assert np.max(np.abs(tensors.a_tensor)) == 0.0
    assert np.max(np.abs(tensors.alpha)) > 0.0


def test_two_level_static_trace():
    gap = 4.0 * EV_TO_JOULE
    mu = 1.0e-29
    tensors = build_response_tensors(two_level_model(), 0.0)
    assert np.isclose(tensors.trace_alpha, 2.0 * mu**2 / gap, rtol=1e-14)


def test_static_alpha_finite_field_oracle():
    # second-order shift of the explicit Hamiltonian reproduces trace(alpha)
    for model in (example_chiral_model(),
                  random_chiral_model(np.random.default_rng(41))):
        tensors = build_response_tensors(model, 0.0)
        min_gap = min(s.energy for s in model.states)
        max_mu = max(np.max(np.abs(s.mu)) for s in model.states)
        field = 1e-3 * min_gap / max_mu
        trace_ff = sum(static_alpha_finite_field(model, field, axis)
                       for axis in np.eye(3))
        assert abs(trace_ff - tensors.trace_alpha) / tensors.trace_alpha < 1e-6


def test_moment_scaling_laws():
    rng = np.random.default_rng(42)
    model = random_chiral_model(rng)
    base = build_response_tensors(model, OMEGA_532)
    s = 2.0
    from dataclasses import replace
    scaled = MolecularModel(
        label="scaled", ground_energy=model.ground_energy,
        states=tuple(replace(st, mu=s * st.mu) for st in model.states))
    new = build_response_tensors(scaled, OMEGA_532)
    assert np.allclose(new.alpha, s**2 * base.alpha, rtol=1e-12)
    assert np.allclose(new.g_bar, s * base.g_bar, rtol=1e-12)
    assert np.allclose(new.a_tensor, s * base.a_tensor, rtol=1e-12)


def test_mirror_parity():
    rng = np.random.default_rng(43)
    for i in range(20):
        model = random_chiral_model(rng, label=f"m{i}")
        mirrored = mirror_molecule(model)
        t = build_response_tensors(model, OMEGA_532)
        tm = build_response_tensors(mirrored, OMEGA_532)
        assert np.array_equal(tm.alpha, t.alpha)
        assert np.array_equal(tm.g_bar, -t.g_bar)
        assert np.array_equal(tm.a_tensor, -t.a_tensor)


def test_mirror_involution_exact():
    model = example_chiral_model()
    back = mirror_molecule(mirror_molecule(model))
    assert back.label == model.label
    for s1, s2 in zip(back.states, model.states):
        assert np.array_equal(s1.mu, s2.mu)
        assert np.array_equal(s1.m_bar, s2.m_bar)
        assert np.array_equal(s1.quadrupole, s2.quadrupole)


def test_near_resonance_guard():
    model = two_level_model(gap_ev=4.0)
    omega_res = 4.0 * EV_TO_JOULE / REDUCED_PLANCK
    with pytest.raises(NearResonanceError) as excinfo:
        build_response_tensors(model, omega_res)
    assert excinfo.value.transition_index == 0
    # 0.5% detuning trips the default 1% floor, 2% does not
    with pytest.raises(NearResonanceError):
        build_response_tensors(model, 1.005 * omega_res)
    build_response_tensors(model, 1.02 * omega_res)
    # the floor is configurable
    build_response_tensors(model, 1.005 * omega_res, detuning_floor=0.001)


def test_empty_model_gives_zero_tensors():
    model = MolecularModel(label="empty", ground_energy=0.0, states=())
    tensors = build_response_tensors(model, OMEGA_532)
    assert np.max(np.abs(tensors.alpha)) == 0.0
    assert np.max(np.abs(tensors.g_bar)) == 0.0
    assert np.max(np.abs(tensors.a_tensor)) == 0.0


def test_dispersion_symmetry():
    model = random_chiral_model(np.random.default_rng(44))
    plus = build_response_tensors(model, OMEGA_532)
    minus = build_response_tensors(model, -OMEGA_532)
    assert np.allclose(plus.alpha, minus.alpha, rtol=1e-14)
    assert np.allclose(plus.g_bar, -minus.g_bar, rtol=1e-14)


def test_response_tensor_invariants():
    rng = np.random.default_rng(45)
    for i in range(10):
        tensors = build_response_tensors(random_chiral_model(rng, label=f"s{i}"),
                                         OMEGA_532)
        assert np.max(np.abs(tensors.alpha - tensors.alpha.T)) < 1e-12 * np.max(
            np.abs(tensors.alpha))
        a = tensors.a_tensor
        assert np.max(np.abs(a - np.swapaxes(a, 1, 2))) < 1e-12 * np.max(np.abs(a))
        assert np.max(np.abs(np.trace(a, axis1=1, axis2=2))) < 1e-12 * np.max(np.abs(a))


def test_model_validation():
    with pytest.raises(InputDomainError):
        TransitionState(energy=1.0, mu=np.zeros(3), m_bar=np.zeros(3),
                        quadrupole=np.array([[1.0, 0, 0], [0, 1.0, 0], [0, 0, 1.0]]))
    with pytest.raises(InputDomainError):
        TransitionState(energy=1.0, mu=np.zeros(3), m_bar=np.zeros(3),
                        quadrupole=np.array([[0.0, 1.0, 0], [0, 0, 0], [0, 0, 0]]))
    state = TransitionState(energy=0.0, mu=np.zeros(3), m_bar=np.zeros(3),
                            quadrupole=np.zeros((3, 3)))
    with pytest.raises(InputDomainError):
        MolecularModel(label="bad", ground_energy=0.0, states=(state,))


def test_model_from_dimension_paper_values():
    # 10 nm molecule: trace(alpha) = 4 pi eps0 1e-24 m^3 carrier
    tensors = model_from_dimension(10e-9)
    expected = 4.0 * np.pi * VACUUM_PERMITTIVITY * 1e-24
    assert np.isclose(tensors.trace_alpha, expected, rtol=1e-15)
    # the achiral/chiral trace ratio is the inverse fine-structure constant
    ratio = tensors.trace_alpha / (tensors.trace_g_bar / SPEED_OF_LIGHT)
    assert abs(ratio - INV_FINE_STRUCTURE) < 1e-6
    # cubic law
    halved = model_from_dimension(5e-9)
    assert np.isclose(halved.trace_alpha, tensors.trace_alpha / 8.0, rtol=1e-14)
    # isotropic shape
    assert np.allclose(tensors.alpha, (tensors.trace_alpha / 3.0) * np.eye(3))
    assert np.max(np.abs(tensors.a_tensor)) == 0.0
    with pytest.raises(InputDomainError):
        model_from_dimension(0.0)
    with pytest.raises(InputDomainError):
        model_from_dimension(-1e-9)


def test_example_model_is_chiral():
    tensors = build_response_tensors(example_chiral_model(), OMEGA_532)
    assert abs(tensors.trace_g_bar) > 0.0
    assert np.max(np.abs(tensors.a_tensor)) > 0.0


def test_random_model_is_chiral():
    rng = np.random.default_rng(46)
    for i in range(10):
        tensors = build_response_tensors(random_chiral_model(rng, label=f"r{i}"),
                                         OMEGA_532)
        assert abs(tensors.trace_g_bar) > 0.0
