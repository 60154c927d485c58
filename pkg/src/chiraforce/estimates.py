"""Order-of-magnitude estimators for the size-parameterized response model.

The achiral/chiral trace ratio is a construction parameter (the inverse
fine-structure constant, pinned in `constants`), so the estimator here
mostly guards the unit plumbing; the physically meaningful output is the
cubic scaling of the chiral force with molecular dimension.
"""

import math
from dataclasses import dataclass

import numpy as np

from .constants import INV_FINE_STRUCTURE, SPEED_OF_LIGHT
from .errors import InputDomainError
from .force_engine import gradient_force
from .molecule import model_from_dimension
from .radiation import GaussianProfile, make_beam

REFERENCE_DIMENSION = 1.0e-8   # m; the 10 nm working value of the estimates


@dataclass(frozen=True)
class EstimateReport:
    d: float                     # molecular dimension, m
    trace_alpha: float           # C^2 m^2 / J
    trace_g_over_c: float        # trace(g_bar)/c
    ratio: float                 # trace_alpha / (trace_g_bar/c) = 1/alpha_fs
    reference_force_ratio: float  # chiral force at d over that at 10 nm


@dataclass(frozen=True)
class SweepRow:
    d: float
    trace_alpha: float
    trace_g_bar: float
    chiral_force: float          # |helicity-gradient force component|, N
    total_force: float           # |total gradient force|, N


@dataclass(frozen=True)
class SweepTable:
    rows: tuple
    loglog_slope: float          # d(log|F_chiral|)/d(log d); 3 for the cubic law


def estimate_ratio(d):
    """Trace ratio report for a molecule of dimension d (m)."""
    if d <= 0:
        raise InputDomainError("molecular dimension d must be positive")
    tensors = model_from_dimension(d)
    trace_g_over_c = tensors.trace_g_bar / SPEED_OF_LIGHT
    return EstimateReport(
        d=d,
        trace_alpha=tensors.trace_alpha,
        trace_g_over_c=trace_g_over_c,
        ratio=tensors.trace_alpha / trace_g_over_c,
        reference_force_ratio=(d / REFERENCE_DIMENSION) ** 3)


def default_sweep_optics():
    """Reference beam for force sweeps: 532 nm, 1 W, 1 um waist, L circular."""
    profile = GaussianProfile(waist=1.0e-6, power=1.0,
                              axis=np.array([0.0, 0.0, 1.0]),
                              focus=np.zeros(3))
    beam = make_beam(532e-9, "L", axis=(0.0, 0.0, 1.0))
    return profile, beam


def default_sweep_position(profile):
    """Off-axis evaluation point: half a waist along the first transverse axis."""
    return profile.focus + np.array([0.5 * profile.waist, 0.0, 0.0])


def scaling_sweep(d_values, profile=None, beam=None, position=None):
    """Chiral-force magnitudes over a list of molecular dimensions.

    Evaluates the gradient force of the size-parameterized model at one
    off-axis position per dimension and fits the log-log slope of the
    chiral (helicity-gradient) component against d.
    """
    d_values = list(d_values)
    if not d_values:
        raise InputDomainError("sweep needs at least one dimension value")
    if any(d <= 0 for d in d_values):
        raise InputDomainError("all sweep dimensions must be positive")
    if profile is None or beam is None:
        profile, beam = default_sweep_optics()
    if position is None:
        position = default_sweep_position(profile)

    rows = []
    for d in d_values:
        tensors = model_from_dimension(d, omega=beam.omega)
        result = gradient_force(profile, beam, tensors, position)
        rows.append(SweepRow(
            d=d,
            trace_alpha=tensors.trace_alpha,
            trace_g_bar=tensors.trace_g_bar,
            chiral_force=float(np.linalg.norm(result.from_grad_h)),
            total_force=float(np.linalg.norm(result.force))))

    if len(rows) >= 2:
        logs_d = np.array([math.log(r.d) for r in rows])
        logs_f = np.array([math.log(r.chiral_force) for r in rows])
        slope = float(np.polyfit(logs_d, logs_f, 1)[0])
    else:
        slope = float("nan")
    return SweepTable(rows=tuple(rows), loglog_slope=slope)
