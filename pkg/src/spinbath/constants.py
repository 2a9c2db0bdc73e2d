"""Central tolerance table.

Tests, the validate subcommand and library-internal checks all read these
values so they cannot drift apart.
"""

# Structural checks: hermiticity of constructed operators, unitarity of
# eigenvector matrices, fixture reproducibility.
STRUCT_TOL = 1e-10

# Dynamical checks: trace and hermiticity conservation along a trajectory.
DYN_TOL = 1e-8

# Residual allowed on the imaginary part of quantities that are real by
# construction (energies, currents).
IMAG_TOL = 1e-10

# Entrywise agreement of the integrated closed-system limit with the exact
# unitary reference.
UNITARY_ORACLE_TOL = 1e-6

# Eigenvalue threshold below which an initial state is flagged non-positive.
PSD_TOL = -1e-12

# Ratio ||H||/T above which the high-temperature expansion is questionable.
HIGH_TEMP_RATIO_WARN = 0.1
