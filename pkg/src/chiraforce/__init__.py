"""chiraforce: orientation-averaged optical energy shifts and
chirality-discriminating gradient forces on model molecules.

The package provides complex Cartesian tensor algebra with isotropic bases
(`tensor_core`), analytic and Monte Carlo SO(3) rotational averaging
(`rot_avg`), beam and polarization construction (`radiation`), sum-over-states
molecular response tensors (`molecule`), the energy-shift/force machinery with
its vanishing checks (`force_engine`), size-scaling estimators (`estimates`),
a claim-verification registry (`verify`), and a JSON/CSV CLI (`cli`).
"""

from .errors import (ChiralForceError, InputDomainError, NearResonanceError,
                     SchemaError)
from .estimates import EstimateReport, SweepTable, estimate_ratio, scaling_sweep
from .force_engine import (EnergyShift, Eq1Coefficients, ForceResult,
                           InterferenceResult, discriminatory_shift,
                           energy_shift, energy_shift_at, eq1_coefficients,
                           gradient_force, two_beam_interference_check)
from .molecule import (MolecularModel, ResponseTensors, TransitionState,
                       build_response_tensors, example_chiral_model,
                       mirror_molecule, model_from_dimension)
from .radiation import (BeamMode, FieldDensities, GaussianProfile,
                        PlaneWaveProfile, crossed_linear_beams, field_densities,
                        intensity_at, make_beam, make_circular, make_linear)
from .rot_avg import (AverageResult, averaged_observable, rotational_average,
                      so3_sample_average)
from .tensor_core import (CartesianTensor, IsotropicBasis, full_contraction,
                          isotropic_basis, kronecker_delta, levi_civita,
                          outer_product, rotate, tensor)

__version__ = "0.1.0"

__all__ = [
    "AverageResult", "BeamMode", "CartesianTensor", "ChiralForceError",
    "EnergyShift", "Eq1Coefficients", "EstimateReport", "FieldDensities",
    "ForceResult", "GaussianProfile", "InputDomainError", "InterferenceResult",
    "IsotropicBasis", "MolecularModel", "NearResonanceError", "PlaneWaveProfile",
    "ResponseTensors", "SchemaError", "SweepTable", "TransitionState",
    "averaged_observable", "build_response_tensors", "crossed_linear_beams",
    "discriminatory_shift", "energy_shift", "energy_shift_at",
    "eq1_coefficients", "estimate_ratio", "example_chiral_model",
    "field_densities", "full_contraction", "gradient_force", "intensity_at",
    "isotropic_basis", "kronecker_delta", "levi_civita", "make_beam",
    "make_circular", "make_linear", "mirror_molecule", "model_from_dimension",
    "outer_product", "rotate", "rotational_average", "scaling_sweep",
    "so3_sample_average", "tensor", "two_beam_interference_check",
]
