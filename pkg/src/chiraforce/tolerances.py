"""Central numeric tolerances.

Every comparison threshold used by the library and its verification suite is
defined here.  The environment variable CHIRAFORCE_TOLERANCE_SCALE (a float,
default 1.0) rescales all of them at once, which is occasionally useful on
platforms with unusual floating-point behaviour.  Individual callers may also
pass an explicit scale.
"""

import os

ENV_SCALE = "CHIRAFORCE_TOLERANCE_SCALE"

_BASE = {
    # generic componentwise / relative comparisons
    "componentwise": 1e-12,
    "relative": 1e-12,
    # rank-2 closed-form average, exactness-grade checks
    "trace_formula": 1e-14,
    # analytic gradient force vs finite differences of the energy shift
    "gradient_rel": 1e-6,
    # static polarizability vs the finite-field eigenvalue oracle
    "static_alpha_rel": 1e-6,
    # |part_G| <= ratio * |part_alpha| for linear polarization
    "linear_null_ratio": 1e-10,
    # residual imaginary part of the energy shift, relative to |total|
    "realness_ratio": 1e-10,
    # chiral shift must exceed ratio * |part_alpha| for the example model
    "chiral_floor_ratio": 1e-6,
    # d^3 scaling of the chiral force (ratios and log-log slope)
    "scaling_rel": 1e-9,
    # fine-structure ratio report
    "ratio_abs": 1e-6,
    # Monte Carlo agreement: number of standard errors allowed
    "mc_sigma": 3.0,
    # absolute floor added to Monte Carlo comparisons (covers zero-variance
    # components, where the only disagreement is arithmetic rounding)
    "mc_abs_floor": 1e-13,
}


def env_scale():
    """Tolerance multiplier taken from the environment (default 1.0)."""
    raw = os.environ.get(ENV_SCALE)
    if raw is None:
        return 1.0
    try:
        return float(raw)
    except ValueError:
        raise ValueError(f"{ENV_SCALE} must be a float, got {raw!r}") from None


def tolerance(name, scale=None):
    """Look up a named tolerance, rescaled by `scale` or the env multiplier."""
    if name not in _BASE:
        raise KeyError(f"unknown tolerance {name!r}")
    return _BASE[name] * (env_scale() if scale is None else scale)


def all_tolerances(scale=None):
    s = env_scale() if scale is None else scale
    return {k: v * s for k, v in _BASE.items()}
