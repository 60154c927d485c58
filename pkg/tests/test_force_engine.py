from fractions import Fraction

import numpy as np
import pytest

from chiraforce.constants import SPEED_OF_LIGHT
from chiraforce.errors import InputDomainError
from chiraforce.force_engine import (RANK4_PAIRINGS, RANK5_PAIRINGS,
                                     discriminatory_shift, energy_shift,
                                     energy_shift_at, eq1_coefficients,
                                     gradient_force, interference_members_exact,
                                     linear_g_part_exact,
                                     two_beam_interference_check,
                                     two_beam_interference_mc)
from chiraforce.molecule import (MolecularModel, ResponseTensors,
                                 build_response_tensors, example_chiral_model,
                                 mirror_molecule, random_chiral_model)
from chiraforce.radiation import (GaussianProfile, PlaneWaveProfile,
                                  crossed_linear_beams, intensity_gradient,
                                  make_beam)
from chiraforce.rational import rational_circle_point

INTENSITY = 1.0e10
WAVELENGTH = 532e-9


def beam(handedness="L", angle=0.0):
    return make_beam(WAVELENGTH, handedness, angle=angle)


def example_tensors():
    return build_response_tensors(example_chiral_model(), beam().omega)


def test_energy_shift_parts_sum():
    shift = energy_shift(beam("L"), INTENSITY, example_tensors())
    assert shift.total == shift.part_alpha + shift.part_g + shift.part_a
    assert shift.part_alpha < 0.0  # attractive below resonance


def test_linear_polarization_nullity():
    rng = np.random.default_rng(51)
    for i in range(20):
        tensors = build_response_tensors(random_chiral_model(rng, label=f"l{i}"),
                                         beam().omega)
        for _ in range(5):
            shift = energy_shift(beam("linear", angle=rng.uniform(0, 2 * np.pi)),
                                 INTENSITY, tensors)
            assert abs(shift.part_g) <= 1e-10 * abs(shift.part_alpha)


def test_linear_nullity_exact_mode():
    # rational points on the circle give exact rational linear polarizations
    trace = Fraction(3, 7)
    for t in (Fraction(1, 3), Fraction(2, 5), Fraction(7, 4)):
        cos_t, sin_t = rational_circle_point(t)
        assert cos_t * cos_t + sin_t * sin_t == 1
        e = [cos_t, sin_t, Fraction(0)]
        b = [-sin_t, cos_t, Fraction(0)]
        re, im = linear_g_part_exact(e, b, trace)
        assert re == 0 and im == 0


def test_circular_nonnullity_and_antisymmetry():
    tensors = example_tensors()
    left = energy_shift(beam("L"), INTENSITY, tensors)
    right = energy_shift(beam("R"), INTENSITY, tensors)
    assert abs(left.part_g) > 1e-6 * abs(left.part_alpha)
    assert left.part_g == -right.part_g
    assert left.part_alpha == right.part_alpha


def test_part_a_always_vanishes():
    rng = np.random.default_rng(52)
    for i in range(10):
        tensors = build_response_tensors(random_chiral_model(rng, label=f"a{i}"),
                                         beam().omega)
        for b in (beam("L"), beam("R"), beam("linear", angle=1.2)):
            shift = energy_shift(b, INTENSITY, tensors)
            assert abs(shift.part_a) <= 1e-12 * abs(shift.part_alpha)


def test_realness_diagnostic():
    rng = np.random.default_rng(53)
    for i in range(10):
        tensors = build_response_tensors(random_chiral_model(rng, label=f"r{i}"),
                                         beam().omega)
        for b in (beam("L"), beam("R"), beam("linear", angle=0.4)):
            shift = energy_shift(b, INTENSITY, tensors)
            assert shift.residual_imag < 1e-10 * abs(shift.total)


def test_discriminatory_shift():
    tensors = example_tensors()
    left = energy_shift(beam("L"), INTENSITY, tensors)
    value = discriminatory_shift(tensors, beam("L"), beam("R"), INTENSITY)
    assert np.isclose(value, 2.0 * left.part_g, rtol=1e-12)
    # achiral: zero exactly
    achiral = ResponseTensors(alpha=tensors.alpha, g_bar=np.zeros((3, 3)),
                              a_tensor=np.zeros((3, 3, 3)), omega=tensors.omega)
    assert discriminatory_shift(achiral, beam("L"), beam("R"), INTENSITY) == 0.0
    # a linear "pair" (identical states) gives zero
    assert discriminatory_shift(tensors, beam("linear"), beam("linear"),
                                INTENSITY) == 0.0


def test_discriminatory_shift_rejects_mismatch():
    tensors = example_tensors()
    with pytest.raises(InputDomainError):
        discriminatory_shift(tensors, beam("L"), make_beam(600e-9, "R"), INTENSITY)
    with pytest.raises(InputDomainError):
        discriminatory_shift(tensors, beam("L"), beam("linear"), INTENSITY)


def test_mirror_antisymmetry():
    rng = np.random.default_rng(54)
    for i in range(20):
        model = random_chiral_model(rng, label=f"mm{i}")
        omega = beam().omega
        d = discriminatory_shift(build_response_tensors(model, omega),
                                 beam("L"), beam("R"), INTENSITY)
        d_mirror = discriminatory_shift(
            build_response_tensors(mirror_molecule(model), omega),
            beam("L"), beam("R"), INTENSITY)
        assert abs(d + d_mirror) <= 1e-12 * abs(d)


def test_plane_wave_force_is_zero():
    result = gradient_force(PlaneWaveProfile(intensity=INTENSITY), beam("L"),
                            example_tensors(), np.zeros(3))
    assert np.array_equal(result.force, np.zeros(3))


def test_on_axis_force_is_zero():
    profile = GaussianProfile(waist=1e-6, power=1.0, axis=[0, 0, 1], focus=[0, 0, 0])
    result = gradient_force(profile, beam("L"), example_tensors(),
                            np.array([0.0, 0.0, 0.7e-6]))
    assert np.max(np.abs(result.force)) < 1e-12


def test_force_decomposition_sums():
    profile = GaussianProfile(waist=1e-6, power=1.0, axis=[0, 0, 1], focus=[0, 0, 0])
    result = gradient_force(profile, beam("L"), example_tensors(),
                            np.array([0.3e-6, -0.4e-6, 0.2e-6]))
    total = result.from_grad_w + result.from_grad_h
    assert np.max(np.abs(result.force - total)) <= 1e-12 * np.max(np.abs(result.force))


def test_gradient_matches_finite_differences():
    profile = GaussianProfile(waist=1e-6, power=1.0, axis=[0, 0, 1], focus=[0, 0, 0])
    tensors = example_tensors()
    b = beam("L")
    rng = np.random.default_rng(55)
    step = profile.waist * 1e-6
    for _ in range(20):
        direction = rng.standard_normal(2)
        direction /= np.linalg.norm(direction)
        rho = rng.uniform(0.2, 1.5) * profile.waist
        r = np.array([rho * direction[0], rho * direction[1],
                      rng.uniform(-1, 1) * profile.waist])
        analytic = gradient_force(profile, b, tensors, r).force
        fd = np.zeros(3)
        for axis in range(3):
            plus, minus = r.copy(), r.copy()
            plus[axis] += step
            minus[axis] -= step
            fd[axis] = -(energy_shift_at(profile, b, tensors, plus).total
                         - energy_shift_at(profile, b, tensors, minus).total) / (2 * step)
        assert np.max(np.abs(analytic - fd)) <= 1e-6 * np.max(np.abs(fd))


def test_eq1_coefficients_structure():
    tensors = example_tensors()
    coeff = eq1_coefficients(tensors)
    # achiral reduction: no chiral response means b = 0
    achiral = ResponseTensors(alpha=np.eye(3), g_bar=np.zeros((3, 3)),
                              a_tensor=np.zeros((3, 3, 3)), omega=tensors.omega)
    assert eq1_coefficients(achiral).b == 0.0
    # linearity: doubling trace(alpha) doubles a
    doubled = ResponseTensors(alpha=2.0 * tensors.alpha, g_bar=tensors.g_bar,
                              a_tensor=tensors.a_tensor, omega=tensors.omega)
    assert np.isclose(eq1_coefficients(doubled).a, 2.0 * coeff.a, rtol=1e-15)
    # enantiomer flips the chiral coefficient, not the achiral one
    mirrored = build_response_tensors(mirror_molecule(example_chiral_model()),
                                      tensors.omega)
    m_coeff = eq1_coefficients(mirrored)
    assert np.isclose(m_coeff.a, coeff.a, rtol=1e-15)
    assert np.isclose(m_coeff.b, -coeff.b, rtol=1e-15)


def test_eq1_coefficients_reproduce_force():
    profile = GaussianProfile(waist=1e-6, power=1.0, axis=[0, 0, 1], focus=[0, 0, 0])
    tensors = example_tensors()
    r = np.array([0.5e-6, 0.2e-6, -0.3e-6])
    for handedness in ("L", "R", "linear"):
        b = beam(handedness)
        coeff = eq1_coefficients(tensors)
        force = gradient_force(profile, b, tensors, r)
        grad_i = intensity_gradient(profile, r)
        grad_w = grad_i / SPEED_OF_LIGHT
        grad_h = b.helicity_sign * grad_i / (SPEED_OF_LIGHT * b.omega)
        scale = max(np.max(np.abs(force.force)), 1e-300)
        assert np.max(np.abs(coeff.a * grad_w - force.from_grad_w)) <= 1e-12 * scale
        assert np.max(np.abs(coeff.b * grad_h - force.from_grad_h)) <= 1e-12 * scale


def test_interference_vanishes_for_crossed_linear():
    beam1, beam2 = crossed_linear_beams(WAVELENGTH)
    rng = np.random.default_rng(56)
    models = [example_chiral_model()] + [random_chiral_model(rng, label=f"i{i}")
                                         for i in range(5)]
    for model in models:
        tensors = build_response_tensors(model, beam1.omega)
        result = two_beam_interference_check(beam1, beam2, tensors)
        assert result.rank4_value == 0.0
        assert result.rank5_value == 0.0
        for _, value in result.rank4_terms + result.rank5_terms:
            assert value == 0.0


def test_interference_exact_members_vanish():
    beam1, beam2 = crossed_linear_beams(WAVELENGTH)
    members = interference_members_exact(beam1, beam2)
    assert len(members) == len(RANK4_PAIRINGS) + len(RANK5_PAIRINGS)
    for values in members.values():
        assert all(v == 0 for v in values)


def test_interference_nonzero_off_configuration():
    # parallel-ish polarizations do produce a chirality-sensitive average
    beam1 = make_beam(WAVELENGTH, "linear", angle=0.0)
    beam2 = make_beam(WAVELENGTH, "linear", angle=np.pi / 4.0,
                      axis=(0.0, 0.0, -1.0))
    tensors = example_tensors()
    result = two_beam_interference_check(beam1, beam2, tensors)
    assert abs(result.rank4_value) > 0.0


def test_interference_achiral_zero_any_geometry():
    tensors = example_tensors()
    achiral = ResponseTensors(alpha=tensors.alpha, g_bar=np.zeros((3, 3)),
                              a_tensor=np.zeros((3, 3, 3)), omega=tensors.omega)
    beam1 = make_beam(WAVELENGTH, "linear", angle=0.3)
    beam2 = make_beam(WAVELENGTH, "linear", angle=1.1, axis=(0.0, 1.0, 0.0))
    result = two_beam_interference_check(beam1, beam2, achiral)
    assert result.rank4_value == 0.0 and result.rank5_value == 0.0


def test_interference_requires_distinct_beams():
    b = beam("linear")
    with pytest.raises(InputDomainError):
        two_beam_interference_check(b, b, example_tensors())


def test_interference_mc_consistent_with_zero():
    beam1, beam2 = crossed_linear_beams(WAVELENGTH)
    tensors = example_tensors()
    rank4_terms, rank5_terms = two_beam_interference_mc(beam1, beam2, tensors,
                                                        20_000, seed=57)
    scale4 = np.max(np.abs(tensors.alpha)) * np.max(np.abs(tensors.g_bar))
    scale5 = (np.max(np.abs(tensors.alpha)) * np.max(np.abs(tensors.a_tensor))
              * np.linalg.norm(beam1.wavevector))
    for (_, value, se), scale in ([(t, scale4) for t in rank4_terms]
                                  + [(t, scale5) for t in rank5_terms]):
        assert abs(value) <= 3.0 * se + 1e-13 * scale


def test_energy_shift_at_uses_local_intensity():
    profile = GaussianProfile(waist=1e-6, power=1.0, axis=[0, 0, 1], focus=[0, 0, 0])
    tensors = example_tensors()
    at_focus = energy_shift_at(profile, beam("L"), tensors, np.zeros(3))
    off_axis = energy_shift_at(profile, beam("L"), tensors,
                               np.array([1e-6, 0.0, 0.0]))
    assert abs(off_axis.total) < abs(at_focus.total)
