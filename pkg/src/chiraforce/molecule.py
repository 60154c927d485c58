"""Molecular multipole models and their optical response tensors.

Transition moments follow the real-wavefunction convention: the electric
dipole (mu) and electric quadrupole (Q) matrix elements between the ground
state and each excited state are real vectors/matrices, while the magnetic
dipole matrix element is purely imaginary and is therefore stored through
its real coefficient m_bar (the physical moment is i*m_bar).  That makes
"the mixed electric-magnetic response is purely imaginary" a property of
the data layout rather than a runtime assertion.

Ground-state response tensors at angular frequency omega, with
E_j0 = E_j - E_ground and both time orderings of the coupling:

    alpha_ij = sum_j 2 E_j0      mu_i mu_j  / (E_j0^2 - (hbar w)^2)
    gbar_ij  = sum_j 2 hbar*w    mu_i mbar_j / (E_j0^2 - (hbar w)^2)
    a_ijk    = sum_j 2 E_j0      mu_i Q_jk  / (E_j0^2 - (hbar w)^2)

The physical electric-magnetic tensor is G = i * gbar.  Global prefactors
are a fixed convention; every observable built on these tensors downstream
is a ratio, sign, or nullity statement and does not depend on them.
"""

from dataclasses import dataclass, replace

import numpy as np

from .constants import (BOHR_MAGNETON, DEBYE_TO_COULOMB_METER, EV_TO_JOULE,
                        FINE_STRUCTURE, QUADRUPOLE_AU_TO_SI, REDUCED_PLANCK,
                        SPEED_OF_LIGHT, UNIT_A, UNIT_ALPHA, UNIT_G_BAR,
                        VACUUM_PERMITTIVITY)
from .errors import InputDomainError, NearResonanceError

_SYM_TOL = 1e-12
DEFAULT_DETUNING_FLOOR = 0.01


@dataclass(frozen=True)
class TransitionState:
    """Excited state with its transition moments from the ground state."""

    energy: float            # absolute energy, J
    mu: np.ndarray           # electric dipole transition moment, C*m (real)
    m_bar: np.ndarray        # imaginary coefficient of the magnetic moment, J/T
    quadrupole: np.ndarray   # electric quadrupole moment, C*m^2 (real, sym, traceless)

    def __post_init__(self):
        mu = np.asarray(self.mu, dtype=float)
        m_bar = np.asarray(self.m_bar, dtype=float)
        q = np.asarray(self.quadrupole, dtype=float)
        if mu.shape != (3,) or m_bar.shape != (3,):
            raise InputDomainError("transition dipole moments must have shape (3,)")
        if q.shape != (3, 3):
            raise InputDomainError("quadrupole moment must have shape (3, 3)")
        scale = max(np.max(np.abs(q)), 1.0)
        if np.max(np.abs(q - q.T)) > _SYM_TOL * scale:
            raise InputDomainError("quadrupole moment must be symmetric")
        if abs(np.trace(q)) > _SYM_TOL * scale:
            raise InputDomainError("quadrupole moment must be traceless")
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "m_bar", m_bar)
        object.__setattr__(self, "quadrupole", q)


@dataclass(frozen=True)
class MolecularModel:
    label: str
    ground_energy: float                 # J
    states: tuple                        # TransitionState, ...

    def __post_init__(self):
        states = tuple(self.states)
        for n, state in enumerate(states):
            if state.energy <= self.ground_energy:
                raise InputDomainError(
                    f"state {n}: energy must lie strictly above the ground energy")
        object.__setattr__(self, "states", states)


@dataclass(frozen=True)
class ResponseTensors:
    """Frequency-dependent response at `omega`; see the module docstring."""

    alpha: np.ndarray        # real symmetric (3,3)
    g_bar: np.ndarray        # real (3,3); physical G = i*g_bar
    a_tensor: np.ndarray     # real (3,3,3), symmetric traceless in last two indices
    omega: float             # rad/s

    def __post_init__(self):
        alpha = np.asarray(self.alpha, dtype=float)
        g_bar = np.asarray(self.g_bar, dtype=float)
        a = np.asarray(self.a_tensor, dtype=float)
        if alpha.shape != (3, 3) or g_bar.shape != (3, 3) or a.shape != (3, 3, 3):
            raise InputDomainError("response tensors have shapes (3,3), (3,3), (3,3,3)")
        scale = max(np.max(np.abs(alpha)), 1e-300)
        if np.max(np.abs(alpha - alpha.T)) > _SYM_TOL * scale:
            raise InputDomainError("alpha must be symmetric")
        a_scale = max(np.max(np.abs(a)), 1e-300)
        if np.max(np.abs(a - np.swapaxes(a, 1, 2))) > _SYM_TOL * a_scale:
            raise InputDomainError("a_tensor must be symmetric in its last two indices")
        if np.max(np.abs(np.trace(a, axis1=1, axis2=2))) > _SYM_TOL * a_scale:
            raise InputDomainError("a_tensor must be traceless in its last two indices")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "g_bar", g_bar)
        object.__setattr__(self, "a_tensor", a)

    @property
    def trace_alpha(self):
        return float(np.trace(self.alpha))

    @property
    def trace_g_bar(self):
        return float(np.trace(self.g_bar))


def build_response_tensors(model, omega, detuning_floor=DEFAULT_DETUNING_FLOOR):
    """Sum-over-states response tensors of the ground state at `omega`.

    Rejects frequencies whose photon energy comes within `detuning_floor`
    (relative) of any transition energy, where the dispersion denominators
    diverge.  A model with no excited states returns all-zero tensors.
    """
    photon = REDUCED_PLANCK * abs(omega)
    alpha = np.zeros((3, 3))
    g_bar = np.zeros((3, 3))
    a = np.zeros((3, 3, 3))
    for n, state in enumerate(model.states):
        gap = state.energy - model.ground_energy
        if abs(photon - gap) < detuning_floor * gap:
            raise NearResonanceError(
                f"photon energy {photon:.6e} J is within {detuning_floor:.0%} of "
                f"transition {n} (gap {gap:.6e} J) of model {model.label!r}",
                transition_index=n, transition_energy=gap)
        denom = gap**2 - photon**2
        alpha += (2.0 * gap / denom) * np.outer(state.mu, state.mu)
        g_bar += (2.0 * REDUCED_PLANCK * omega / denom) * np.outer(state.mu, state.m_bar)
        a += (2.0 * gap / denom) * np.multiply.outer(state.mu, state.quadrupole)
    return ResponseTensors(alpha=alpha, g_bar=g_bar, a_tensor=a, omega=omega)


def mirror_molecule(model):
    """Spatial inversion of the multipole set: the opposite enantiomer.

    mu is a polar vector (flips sign); the magnetic moment is axial and the
    quadrupole is even-rank (both unchanged).  Consequently alpha is even
    while the mixed responses g_bar and a flip sign.  Involution: applying
    twice restores the model exactly.
    """
    states = tuple(replace(s, mu=-s.mu) for s in model.states)
    label = model.label[:-1] if model.label.endswith("'") else model.label + "'"
    return MolecularModel(label=label, ground_energy=model.ground_energy, states=states)


def model_from_dimension(d, omega=0.0):
    """Isotropic order-of-magnitude response for a molecule of size d (m).

    The polarizability trace is the volume estimate 4*pi*eps0*d^3, and the
    mixed-response trace is fixed so that trace(alpha)/(trace(g_bar)/c)
    equals the inverse fine-structure constant exactly.  Returned as
    isotropic tensors; the quadrupole response is zero in this estimator.
    """
    if d <= 0:
        raise InputDomainError("molecular dimension d must be positive")
    trace_alpha = 4.0 * np.pi * VACUUM_PERMITTIVITY * d**3
    trace_g_bar = SPEED_OF_LIGHT * FINE_STRUCTURE * trace_alpha
    return ResponseTensors(alpha=(trace_alpha / 3.0) * np.eye(3),
                           g_bar=(trace_g_bar / 3.0) * np.eye(3),
                           a_tensor=np.zeros((3, 3, 3)),
                           omega=omega)


def example_chiral_model():
    """The chiral model shipped with the package (matches data/model_chiral.json).

    Three UV transitions with dipole moments on the Debye scale, magnetic
    coefficients on the Bohr-magneton scale, and atomic-unit quadrupoles;
    comfortably off-resonant for visible trapping beams.
    """
    states = (
        TransitionState(
            energy=4.5 * EV_TO_JOULE,
            mu=np.array([2.1, 0.4, -0.3]) * DEBYE_TO_COULOMB_METER,
            m_bar=np.array([0.6, -0.2, 0.9]) * BOHR_MAGNETON,
            quadrupole=np.array([[0.8, 0.1, 0.0],
                                 [0.1, -0.3, 0.2],
                                 [0.0, 0.2, -0.5]]) * QUADRUPOLE_AU_TO_SI),
        TransitionState(
            energy=5.2 * EV_TO_JOULE,
            mu=np.array([-0.7, 1.8, 0.5]) * DEBYE_TO_COULOMB_METER,
            m_bar=np.array([0.3, 0.8, -0.4]) * BOHR_MAGNETON,
            quadrupole=np.array([[-0.2, 0.4, -0.1],
                                 [0.4, 0.6, 0.3],
                                 [-0.1, 0.3, -0.4]]) * QUADRUPOLE_AU_TO_SI),
        TransitionState(
            energy=6.1 * EV_TO_JOULE,
            mu=np.array([0.5, -0.6, 1.4]) * DEBYE_TO_COULOMB_METER,
            m_bar=np.array([-0.5, 0.1, 0.7]) * BOHR_MAGNETON,
            quadrupole=np.array([[0.1, -0.2, 0.5],
                                 [-0.2, 0.3, 0.1],
                                 [0.5, 0.1, -0.4]]) * QUADRUPOLE_AU_TO_SI),
    )
    return MolecularModel(label="example-chiral", ground_energy=0.0, states=states)


def random_chiral_model(rng, n_states=3, label="random-chiral"):
    """Random model with a guaranteed nonzero chiral response.

    Moments are drawn on physically sensible scales (Debye, Bohr magneton,
    atomic-unit quadrupoles) with transitions between 3.5 and 7 eV.  The
    first state's magnetic coefficient gets a component along its dipole so
    that sum_j mu.m_bar is bounded away from zero.
    """
    states = []
    for n in range(n_states):
        energy = (3.5 + 3.5 * rng.random()) * EV_TO_JOULE
        mu = rng.normal(0.0, 1.5, size=3) * DEBYE_TO_COULOMB_METER
        m_bar = rng.normal(0.0, 0.6, size=3) * BOHR_MAGNETON
        raw = rng.normal(0.0, 0.5, size=(3, 3))
        sym = 0.5 * (raw + raw.T)
        sym -= (np.trace(sym) / 3.0) * np.eye(3)
        if n == 0:
            mu_norm = np.linalg.norm(mu)
            if mu_norm < 0.5 * DEBYE_TO_COULOMB_METER:
                mu = np.array([1.0, 0.3, -0.2]) * DEBYE_TO_COULOMB_METER
                mu_norm = np.linalg.norm(mu)
            m_bar = m_bar + 0.8 * BOHR_MAGNETON * mu / mu_norm
        states.append(TransitionState(energy=energy, mu=mu, m_bar=m_bar,
                                      quadrupole=sym * QUADRUPOLE_AU_TO_SI))
    return MolecularModel(label=label, ground_energy=0.0, states=tuple(states))


def static_alpha_finite_field(model, field, axis):
    """Finite-field oracle for the static polarizability along one axis.

    Builds the explicit (N+1)-level Hamiltonian H = diag(E) - F*mu_axis with
    the ground-excited dipole couplings of the model, diagonalizes it at
    +/-F and +/-F/2, and extracts -d2W/dF2 of the ground level by a
    Richardson-extrapolated central second difference.  Entirely independent
    of the dispersion formulas in `build_response_tensors`.
    """
    axis = np.asarray(axis, dtype=float)
    axis = axis / np.linalg.norm(axis)
    energies = np.array([model.ground_energy] + [s.energy for s in model.states])
    couplings = np.array([s.mu @ axis for s in model.states])

    def ground_energy(f):
        h = np.diag(energies).astype(float)
        h[0, 1:] = -f * couplings
        h[1:, 0] = -f * couplings
        return float(np.linalg.eigvalsh(h)[0])

    def second_difference(f):
        return -(ground_energy(f) - 2.0 * ground_energy(0.0) + ground_energy(-f)) / f**2

    coarse = second_difference(field)
    fine = second_difference(field / 2.0)
    return (4.0 * fine - coarse) / 3.0
