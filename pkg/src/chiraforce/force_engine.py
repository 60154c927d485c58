"""Orientation-averaged energy shifts, gradient forces, and vanishing checks.

Energy shift conventions (fixed here, used everywhere).  For a beam of
intensity I the field amplitude is E0 = sqrt(2 I / (c eps0)), and the three
complex contributions to the shift of an isotropically oriented molecule are

    S_alpha = -(E0^2/4)      <alpha>_ij  conj(e)_i e_j
    S_G     = -(E0^2/(4c)) i <g_bar>_ij  conj(e)_i b_j
    S_A     = -(E0^2/4)    i <a>_ijk     conj(e)_i k_j e_k

with <.> the analytic orientation average, e and b the unit polarization
vectors, and k the wave-vector (rad/m; the quadrupole coupling samples the
field gradient).  The reported parts are the real parts; the magnitude of
the discarded imaginary remainder is kept as a diagnostic, since a physical
level shift must be real.  The overall sign makes the alpha term attractive
(negative) for positive trace below resonance, as in an optical tweezer.

Because the rank-2 average is (trace/3)*delta and conj(e).b = k_hat.(e x
conj(e)) is purely imaginary for any transverse unit polarization, the G
part survives only for circular polarization and flips sign between L and
R; for linear polarization (real e) it vanishes identically.  The rank-3
average of a tensor symmetric in its quadrupole index pair is exactly zero,
so the A part of a single-beam shift always vanishes; it is still computed
and reported separately rather than silently dropped.

Two-beam interference check.  A scattering event taking a photon from beam
1 to beam 2 has an electric-dipole amplitude ~ alpha_ij conj(e2)_i e1_j and
mixed amplitudes in which one coupling is magnetic-dipole (bringing b) or
electric-quadrupole (bringing one wave-vector).  The chirality-sensitive
rate contributions are the cross terms of the first with each of the
others: rank-4 molecular tensors alpha (x) conj(G) and rank-5 tensors
alpha (x) conj(A), orientation averaged against the field-vector tuples
enumerated in RANK4_PAIRINGS / RANK5_PAIRINGS below (one entry per choice
of which beam carries the magnetic/quadrupole coupling).  For two beams
with mutually orthogonal linear polarizations, each polarization also
orthogonal to the other beam's wave-vector, every such average vanishes:
each isotropic tensor pairs the lab vectors into dot products and triple
products that all contain a vanishing factor.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .constants import SPEED_OF_LIGHT, VACUUM_PERMITTIVITY
from .errors import InputDomainError
from .radiation import (GaussianProfile, PlaneWaveProfile, field_densities,
                        intensity_at, intensity_gradient)
from .rational import as_exact
from .rot_avg import (averaged_observable, isotropic_member_observables_exact,
                      so3_observable_mc)
from .tensor_core import outer_product, tensor

# (label, vector tuple builder) for the rank-4 interference terms; the
# builder receives (beam1, beam2) and returns the four lab vectors paired
# with the indices of alpha_ij (x) conj(G)_kl, in index order.
RANK4_PAIRINGS = (
    ("E1^2 x conj(E1M1), magnetic coupling on beam 1",
     lambda b1, b2: (np.conj(b2.e), b1.e, b2.e, np.conj(b1.b))),
    ("E1^2 x conj(E1M1), magnetic coupling on beam 2",
     lambda b1, b2: (np.conj(b2.e), b1.e, b2.b, np.conj(b1.e))),
)

# same for the rank-5 terms alpha_ij (x) conj(A)_klm; the quadrupole index
# pair (l, m) carries one wave-vector and the same beam's polarization.
RANK5_PAIRINGS = (
    ("E1^2 x conj(E1E2), quadrupole coupling on beam 1",
     lambda b1, b2: (np.conj(b2.e), b1.e, b2.e, b1.wavevector, np.conj(b1.e))),
    ("E1^2 x conj(E1E2), quadrupole coupling on beam 2",
     lambda b1, b2: (np.conj(b2.e), b1.e, np.conj(b1.e), b2.wavevector, b2.e)),
)


@dataclass(frozen=True)
class EnergyShift:
    """Real energy shift with its labeled parts (all in J)."""

    total: float
    part_alpha: float
    part_g: float
    part_a: float
    residual_imag: float


@dataclass(frozen=True)
class Eq1Coefficients:
    """Trace coefficients of the force decomposition F = a grad(w) + b grad(h).

    a = trace(alpha)/(6 eps0) pairs with the energy-density gradient (m^3);
    b = omega trace(g_bar)/(6 c eps0) pairs with the helicity-density
    gradient (m^3/s) and flips sign between enantiomers.
    """

    a: float
    b: float


@dataclass(frozen=True)
class ForceResult:
    """Gradient force (N) split into energy- and helicity-gradient parts."""

    force: np.ndarray
    from_grad_w: np.ndarray
    from_grad_h: np.ndarray


@dataclass(frozen=True)
class InterferenceResult:
    """Two-beam chirality-sensitive interference averages (diagnostic units)."""

    rank4_value: complex
    rank5_value: complex
    rank4_terms: tuple     # (label, value) per pairing
    rank5_terms: tuple


def _complex_shift_parts(beam, intensity, tensors):
    e0_sq = 2.0 * intensity / (SPEED_OF_LIGHT * VACUUM_PERMITTIVITY)
    e = beam.e
    s_alpha = -(e0_sq / 4.0) * averaged_observable(
        tensor(tensors.alpha), [np.conj(e), e])
    s_g = -(e0_sq / (4.0 * SPEED_OF_LIGHT)) * 1j * averaged_observable(
        tensor(tensors.g_bar), [np.conj(e), beam.b])
    s_a = -(e0_sq / 4.0) * 1j * averaged_observable(
        tensor(tensors.a_tensor), [np.conj(e), beam.wavevector, e])
    return s_alpha, s_g, s_a


def energy_shift(beam, intensity, tensors):
    """Orientation-averaged energy shift of the molecule in the given beam.

    `intensity` is the local intensity in W/m^2; the split into alpha, G and
    A parts follows the conventions in the module docstring.
    """
    s_alpha, s_g, s_a = _complex_shift_parts(beam, intensity, tensors)
    total_complex = s_alpha + s_g + s_a
    return EnergyShift(total=total_complex.real,
                       part_alpha=s_alpha.real,
                       part_g=s_g.real,
                       part_a=s_a.real,
                       residual_imag=abs(total_complex.imag))


def energy_shift_at(profile, beam, tensors, r):
    """Energy shift at position r, using the profile's local intensity."""
    intensity, _ = intensity_at(profile, r)
    return energy_shift(beam, intensity, tensors)


def discriminatory_shift(tensors, beam_left, beam_right, intensity):
    """Energy-shift difference between the two beams of an L/R pair.

    The beams must be identical apart from handedness.  Equals twice the
    G part of the left beam's shift; zero for achiral response tensors.
    """
    if np.max(np.abs(beam_left.wavevector - beam_right.wavevector)) > 1e-9 * np.linalg.norm(
            beam_left.wavevector):
        raise InputDomainError("beam pair must share the same wave-vector")
    pair = (beam_left.handedness_tag, beam_right.handedness_tag)
    if pair != ("L", "R") and beam_left.handedness_tag != beam_right.handedness_tag:
        raise InputDomainError(
            f"beam pair must be (L, R) or two identical states, got {pair}")
    left = energy_shift(beam_left, intensity, tensors)
    right = energy_shift(beam_right, intensity, tensors)
    return left.total - right.total


def eq1_coefficients(tensors):
    """Coefficients of F = a grad(w) + b grad(h) for these response tensors."""
    a = tensors.trace_alpha / (6.0 * VACUUM_PERMITTIVITY)
    b = tensors.omega * tensors.trace_g_bar / (6.0 * SPEED_OF_LIGHT * VACUUM_PERMITTIVITY)
    return Eq1Coefficients(a=a, b=b)


def gradient_force(profile, beam, tensors, r):
    """Gradient force F = -grad(energy shift) at position r.

    Analytic for the focal-plane Gaussian profile; identically zero for a
    plane wave.  The decomposition routes the alpha part (plus the zero A
    part) through the energy-density gradient and the G part through the
    helicity-density gradient.
    """
    if isinstance(profile, PlaneWaveProfile):
        zero = np.zeros(3)
        return ForceResult(force=zero, from_grad_w=zero.copy(), from_grad_h=zero.copy())
    if not isinstance(profile, GaussianProfile):
        raise InputDomainError(f"unsupported profile type {type(profile).__name__}")
    grad_i = intensity_gradient(profile, r)
    # per-unit-intensity real parts of the shift contributions
    s_alpha, s_g, s_a = _complex_shift_parts(beam, 1.0, tensors)
    from_w = -(s_alpha.real + s_a.real) * grad_i
    from_h = -s_g.real * grad_i
    return ForceResult(force=from_w + from_h, from_grad_w=from_w, from_grad_h=from_h)


def two_beam_interference_check(beam1, beam2, tensors):
    """Rotationally averaged chirality-sensitive two-beam interference terms.

    Sums the rank-4 (alpha x conj(G)) and rank-5 (alpha x conj(A)) averaged
    contractions over the pairings enumerated in RANK4_PAIRINGS and
    RANK5_PAIRINGS, returning per-pairing values as well.  For orthogonal
    linear polarizations every term vanishes for any response tensors.
    """
    _require_distinct(beam1, beam2)
    alpha_t = tensor(tensors.alpha)
    g_conj = tensor(-1j * tensors.g_bar)        # conj(i g_bar)
    a_conj = tensor(tensors.a_tensor)           # A is real
    rank4 = outer_product(alpha_t, g_conj)
    rank5 = outer_product(alpha_t, a_conj)
    rank4_terms = tuple(
        (label, averaged_observable(rank4, build(beam1, beam2)))
        for label, build in RANK4_PAIRINGS)
    rank5_terms = tuple(
        (label, averaged_observable(rank5, build(beam1, beam2)))
        for label, build in RANK5_PAIRINGS)
    return InterferenceResult(
        rank4_value=sum(v for _, v in rank4_terms),
        rank5_value=sum(v for _, v in rank5_terms),
        rank4_terms=rank4_terms,
        rank5_terms=rank5_terms)


def two_beam_interference_mc(beam1, beam2, tensors, n_samples, seed, workers=1):
    """Monte Carlo version of the interference check.

    Returns per-pairing (label, value, standard_error) tuples for the rank-4
    and rank-5 terms, using the SO(3) sampling oracle instead of the
    analytic average.
    """
    _require_distinct(beam1, beam2)
    alpha_t = tensor(tensors.alpha)
    rank4 = outer_product(alpha_t, tensor(-1j * tensors.g_bar))
    rank5 = outer_product(alpha_t, tensor(tensors.a_tensor))
    rank4_terms = []
    for n, (label, build) in enumerate(RANK4_PAIRINGS):
        value, se = so3_observable_mc(rank4, build(beam1, beam2), n_samples,
                                      seed + n, workers=workers)
        rank4_terms.append((label, value, se))
    rank5_terms = []
    for n, (label, build) in enumerate(RANK5_PAIRINGS):
        value, se = so3_observable_mc(rank5, build(beam1, beam2), n_samples,
                                      seed + 10 + n, workers=workers)
        rank5_terms.append((label, value, se))
    return tuple(rank4_terms), tuple(rank5_terms)


def interference_members_exact(beam1, beam2):
    """Exact-rational isotropic-member contractions for the interference terms.

    For beams whose polarization and wave-vector components are exact binary
    floats (the crossed-linear configuration has entries in {0, +-1}), this
    evaluates every isotropic basis member against every pairing's vector
    tuple in Fraction arithmetic.  All-zero results prove the corresponding
    averages vanish identically for every molecular tensor.  Only the real
    parts of the polarization vectors participate (the configuration of
    interest is linear, hence real).
    """
    results = {}
    for rank, pairings in ((4, RANK4_PAIRINGS), (5, RANK5_PAIRINGS)):
        for label, build in pairings:
            vectors = build(beam1, beam2)
            if any(np.max(np.abs(np.asarray(v).imag)) != 0.0 for v in vectors):
                raise InputDomainError("exact interference check needs real vectors")
            exact_vectors = [as_exact(np.asarray(v).real) for v in vectors]
            results[label] = isotropic_member_observables_exact(rank, exact_vectors)
    return results


def _require_distinct(beam1, beam2):
    same_k = np.max(np.abs(beam1.wavevector - beam2.wavevector)) < 1e-12
    same_e = np.max(np.abs(beam1.e - beam2.e)) < 1e-12
    if same_k and same_e:
        raise InputDomainError("interference check needs two distinct beam modes")


def linear_g_part_exact(e_exact, b_exact, trace_g_bar_exact):
    """Exact (re, im) of the averaged G-term contraction for a real linear beam.

    The averaged physical tensor is i*(trace/3)*delta, i.e. its real part is
    the zero tensor; contracting with a real polarization pair (e, b) gives
    the exact complex value (0, (trace/3) * e.b).  The imaginary coefficient
    vanishes too because e.b = 0 for a transverse pair, so the whole term is
    the exact zero, not merely a discarded imaginary quantity.
    """
    e_dot_b = sum(e_exact[i] * b_exact[i] for i in range(3))
    real_part = Fraction(0) * e_dot_b            # Re of i*(real tensor) contraction
    imag_part = (trace_g_bar_exact / 3) * e_dot_b
    return real_part, imag_part
