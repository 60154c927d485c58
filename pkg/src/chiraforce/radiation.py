"""Beam modes, polarization states, and field densities.

Handedness convention (fixed here, used everywhere): for a right-handed
orthonormal triad (i_hat, j_hat, k_hat) with k_hat the propagation direction,

    e(L) = (i_hat + i j_hat)/sqrt(2),   b(L) = (j_hat - i i_hat)/sqrt(2)
    e(R) = (i_hat - i j_hat)/sqrt(2),   b(R) = (j_hat + i i_hat)/sqrt(2)
    e(linear, theta) = cos(theta) i_hat + sin(theta) j_hat   (all real)

and b = k_hat x e in every case.  The helicity sign is sigma = +1 for L,
-1 for R, 0 for linear.  A beam of intensity I carries (cycle-averaged)
energy density w = I/c and helicity density h = sigma*I/(c*omega); these are
the gradient carriers of the force decomposition in `force_engine`.

The Gaussian profile is a focal-plane model: the waist is constant along the
axis and the intensity varies only with transverse distance.  That is all
the gradient-force analysis needs; axial divergence is out of scope.
"""

import math
from dataclasses import dataclass

import numpy as np

from .constants import SPEED_OF_LIGHT, VACUUM_PERMITTIVITY
from .errors import InputDomainError

_FRAME_TOL = 1e-12


@dataclass(frozen=True)
class BeamMode:
    """Monochromatic plane-wave mode: wave-vector, polarizations, amplitude."""

    wavevector: np.ndarray      # real, rad/m
    e: np.ndarray               # complex unit electric polarization
    b: np.ndarray               # complex unit magnetic polarization
    amplitude: float = 1.0      # field amplitude E0, V/m
    handedness_tag: str = "linear:0"

    def __post_init__(self):
        k = np.asarray(self.wavevector, dtype=float)
        e = np.asarray(self.e, dtype=complex)
        b = np.asarray(self.b, dtype=complex)
        if k.shape != (3,) or e.shape != (3,) or b.shape != (3,):
            raise InputDomainError("beam vectors must have shape (3,)")
        k_norm = np.linalg.norm(k)
        if k_norm == 0.0:
            raise InputDomainError("wave-vector must be nonzero")
        k_hat = k / k_norm
        if abs(np.vdot(e, e).real - 1.0) > _FRAME_TOL:
            raise InputDomainError("electric polarization must be a unit vector")
        if abs(k_hat @ e) > _FRAME_TOL or abs(k_hat @ b) > _FRAME_TOL:
            raise InputDomainError("polarizations must be transverse to the wave-vector")
        if np.max(np.abs(b - np.cross(k_hat, e))) > _FRAME_TOL:
            raise InputDomainError("magnetic polarization must equal k_hat x e")
        object.__setattr__(self, "wavevector", k)
        object.__setattr__(self, "e", e)
        object.__setattr__(self, "b", b)

    @property
    def k_hat(self):
        return self.wavevector / np.linalg.norm(self.wavevector)

    @property
    def omega(self):
        """Angular frequency, rad/s (vacuum dispersion)."""
        return SPEED_OF_LIGHT * np.linalg.norm(self.wavevector)

    @property
    def helicity_sign(self):
        """+1 for L, -1 for R, 0 for linear polarization."""
        if self.handedness_tag == "L":
            return 1
        if self.handedness_tag == "R":
            return -1
        return 0


@dataclass(frozen=True)
class GaussianProfile:
    """Focal-plane Gaussian intensity profile."""

    waist: float                # w0, m
    power: float                # W
    axis: np.ndarray            # unit propagation axis
    focus: np.ndarray           # beam center, m

    def __post_init__(self):
        if self.waist <= 0 or self.power <= 0:
            raise InputDomainError("gaussian profile needs waist > 0 and power > 0")
        axis = np.asarray(self.axis, dtype=float)
        axis_norm = np.linalg.norm(axis)
        if axis_norm == 0.0:
            raise InputDomainError("profile axis must be nonzero")
        object.__setattr__(self, "axis", axis / axis_norm)
        object.__setattr__(self, "focus", np.asarray(self.focus, dtype=float))

    @property
    def peak_intensity(self):
        return 2.0 * self.power / (math.pi * self.waist**2)


@dataclass(frozen=True)
class PlaneWaveProfile:
    """Spatially uniform intensity."""

    intensity: float            # W/m^2

    def __post_init__(self):
        if self.intensity < 0:
            raise InputDomainError("plane-wave intensity must be >= 0")


@dataclass(frozen=True)
class FieldDensities:
    w: float                    # energy density, J/m^3
    h: float                    # helicity density, J*s/m^3


def orthonormal_frame(axis):
    """Right-handed orthonormal triad (i_hat, j_hat, k_hat) with k_hat = axis.

    Deterministic construction; reduces to (x, y, z) for axis = +z.
    """
    k_hat = np.asarray(axis, dtype=float)
    norm = np.linalg.norm(k_hat)
    if norm == 0.0:
        raise InputDomainError("axis must be nonzero")
    k_hat = k_hat / norm
    helper = np.array([1.0, 0.0, 0.0]) if abs(k_hat[0]) <= 0.9 else np.array([0.0, 1.0, 0.0])
    j_hat = np.cross(k_hat, helper)
    j_hat /= np.linalg.norm(j_hat)
    i_hat = np.cross(j_hat, k_hat)
    return i_hat, j_hat, k_hat


def _check_frame(frame):
    i_hat, j_hat, k_hat = (np.asarray(v, dtype=float) for v in frame)
    gram_err = max(abs(i_hat @ i_hat - 1), abs(j_hat @ j_hat - 1), abs(k_hat @ k_hat - 1),
                   abs(i_hat @ j_hat), abs(i_hat @ k_hat), abs(j_hat @ k_hat))
    if gram_err > _FRAME_TOL:
        raise InputDomainError("frame must be orthonormal")
    if np.max(np.abs(np.cross(i_hat, j_hat) - k_hat)) > _FRAME_TOL:
        raise InputDomainError("frame must be right-handed (i x j = k)")
    return i_hat, j_hat, k_hat


def make_circular(handedness, frame):
    """Circular polarization pair (e, b) for handedness "L" or "R"."""
    i_hat, j_hat, k_hat = _check_frame(frame)
    if handedness == "L":
        sign = 1.0
    elif handedness == "R":
        sign = -1.0
    else:
        raise InputDomainError(f"handedness must be 'L' or 'R', got {handedness!r}")
    e = (i_hat + sign * 1j * j_hat) / math.sqrt(2.0)
    b = (j_hat - sign * 1j * i_hat) / math.sqrt(2.0)
    return e, b


def make_linear(angle, frame):
    """Linear polarization pair (e, b); e is real, rotated by `angle` from i_hat."""
    i_hat, j_hat, k_hat = _check_frame(frame)
    e = (math.cos(angle) * i_hat + math.sin(angle) * j_hat).astype(complex)
    b = np.cross(k_hat, e)
    return e, b


def make_beam(wavelength, handedness="linear", axis=(0.0, 0.0, 1.0), angle=0.0,
              amplitude=1.0, frame=None):
    """Construct a BeamMode from wavelength (m) and polarization state.

    `handedness` is "L", "R", or "linear" (with `angle` in rad measured from
    the frame's first transverse axis).  A custom right-handed frame may be
    supplied; otherwise one is derived deterministically from `axis`.
    """
    if wavelength <= 0:
        raise InputDomainError("wavelength must be positive")
    if frame is None:
        frame = orthonormal_frame(axis)
    i_hat, j_hat, k_hat = _check_frame(frame)
    if handedness in ("L", "R"):
        e, b = make_circular(handedness, (i_hat, j_hat, k_hat))
        tag = handedness
    elif handedness == "linear":
        e, b = make_linear(angle, (i_hat, j_hat, k_hat))
        tag = f"linear:{angle:.17g}"
    else:
        raise InputDomainError(f"unknown handedness {handedness!r}")
    k = (2.0 * math.pi / wavelength) * k_hat
    return BeamMode(wavevector=k, e=e, b=b, amplitude=amplitude, handedness_tag=tag)


def intensity_at(profile, r):
    """Intensity I(r) in W/m^2 and field amplitude E0(r) in V/m.

    Gaussian (focal-plane model): I = (2P/(pi w0^2)) exp(-2 rho^2/w0^2) with
    rho the transverse distance from the axis.  Plane wave: constant.
    """
    if isinstance(profile, PlaneWaveProfile):
        intensity = profile.intensity
    elif isinstance(profile, GaussianProfile):
        rho = transverse_offset(profile, r)
        rho_sq = float(rho @ rho)
        intensity = profile.peak_intensity * math.exp(-2.0 * rho_sq / profile.waist**2)
    else:
        raise InputDomainError(f"unknown profile type {type(profile).__name__}")
    amplitude = math.sqrt(2.0 * intensity / (SPEED_OF_LIGHT * VACUUM_PERMITTIVITY))
    return intensity, amplitude


def transverse_offset(profile, r):
    """Component of r - focus perpendicular to the profile axis."""
    rel = np.asarray(r, dtype=float) - profile.focus
    return rel - (rel @ profile.axis) * profile.axis


def intensity_gradient(profile, r):
    """Analytic gradient of the intensity at position r (zero for plane waves)."""
    if isinstance(profile, PlaneWaveProfile):
        return np.zeros(3)
    intensity, _ = intensity_at(profile, r)
    rho = transverse_offset(profile, r)
    return (-4.0 / profile.waist**2) * intensity * rho


def field_densities(beam, intensity):
    """Energy density w = I/c and helicity density h = sigma*I/(c*omega)."""
    w = intensity / SPEED_OF_LIGHT
    h = beam.helicity_sign * intensity / (SPEED_OF_LIGHT * beam.omega)
    return FieldDensities(w=w, h=h)


def crossed_linear_beams(wavelength):
    """Counter-propagating beam pair with orthogonal linear polarizations.

    Beam 1 runs along +z polarized along x; beam 2 along -z polarized along
    y, so e1.e2 = e1.k2 = e2.k1 = 0.  This is the configuration in which
    every chirality-sensitive two-beam interference average vanishes.
    """
    x_hat = np.array([1.0, 0.0, 0.0])
    y_hat = np.array([0.0, 1.0, 0.0])
    z_hat = np.array([0.0, 0.0, 1.0])
    beam1 = make_beam(wavelength, "linear", frame=(x_hat, y_hat, z_hat))
    beam2 = make_beam(wavelength, "linear", frame=(y_hat, x_hat, -z_hat))
    return beam1, beam2
