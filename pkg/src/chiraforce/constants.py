"""Physical constants and unit conversions (SI), pinned values.

Every convention-dependent prefactor used across the package is anchored
here so that all numeric results are reproducible bit for bit.  Values
marked "exact" are fixed by the 2019 SI definitions; the remainder are
CODATA 2018 recommended values.
"""

SPEED_OF_LIGHT = 299_792_458.0            # m/s (exact)
VACUUM_PERMITTIVITY = 8.8541878128e-12    # F/m (CODATA 2018)
REDUCED_PLANCK = 1.054571817e-34          # J*s (CODATA 2018)
ELEMENTARY_CHARGE = 1.602176634e-19       # C (exact)
BOHR_RADIUS = 5.29177210903e-11           # m (CODATA 2018)
BOHR_MAGNETON = 9.2740100783e-24          # J/T (CODATA 2018)

# Dimensionless fine-structure constant, pinned so that the size-parameterized
# response model can reproduce its inverse as an exact construction parameter.
INV_FINE_STRUCTURE = 137.035999
FINE_STRUCTURE = 1.0 / INV_FINE_STRUCTURE

# Unit conversions applied when reading molecular model files.
EV_TO_JOULE = ELEMENTARY_CHARGE                          # 1 eV in J (exact)
DEBYE_TO_COULOMB_METER = 1.0e-21 / SPEED_OF_LIGHT        # 1 D in C*m (exact)
QUADRUPOLE_AU_TO_SI = ELEMENTARY_CHARGE * BOHR_RADIUS**2  # e*a0^2 in C*m^2

# Unit annotations used by the response tensors (documented once, here):
#   alpha : C^2 m^2 / J      (electric dipole - electric dipole)
#   g_bar : C m / T          (electric dipole - magnetic dipole; G = i*g_bar)
#   a     : C^2 m^3 / J      (electric dipole - electric quadrupole)
UNIT_ALPHA = "C^2 m^2 J^-1"
UNIT_G_BAR = "C m T^-1"
UNIT_A = "C^2 m^3 J^-1"
