"""Constants shared by the nonlocal interface solver: config keys, defaults, sweeps, tolerances."""

# Environment variables
ENV_CONFIG_PATH = "NLI1D_CONFIG"
ENV_LOG_DIR = "NLI1D_LOG_DIR"
ENV_LOG_LEVEL = "NLI1D_LOG_LEVEL"
ENV_LOG_JSON = "NLI1D_LOG_JSON"

# Run configuration keys (flat, named exactly as RunConfig fields)
KAPPA1 = "kappa1"
KAPPA2 = "kappa2"
DELTA1 = "delta1"
DELTA2 = "delta2"
H = "h"
H_FINE = "h_fine"
KERNEL = "kernel"
SOURCE = "f"
G1 = "g1"
G2 = "g2"
DOMAIN_A = "a"
DOMAIN_X_GAMMA = "x_gamma"
DOMAIN_B = "b"

# Default configuration (left/right material, unit source, analytic constraint data)
DEFAULT_KAPPA1 = 1.0
DEFAULT_KAPPA2 = 3.0
DEFAULT_SOURCE = 1.0
DEFAULT_G1 = (1.0 / 16.0, -1.0 / 8.0, -1.0 / 2.0)
DEFAULT_G2 = (1.0 / 16.0, -1.0 / 24.0, -1.0 / 6.0)
DEFAULT_A = -0.5
DEFAULT_X_GAMMA = 0.0
DEFAULT_B = 0.5
DEFAULT_DELTA1 = 2.0 ** -5
DEFAULT_DELTA2 = 2.0 ** -4
DEFAULT_H = 2.0 ** -12
DEFAULT_H_FINE = 2.0 ** -12
DEFAULT_KERNEL = "k1"

# Default sweeps
DELTA_SWEEP = tuple((2.0 ** -k, 2.0 ** -(k - 1)) for k in range(5, 11))
H_SWEEP = tuple(2.0 ** -k for k in range(5, 10))
JUMP_H_SWEEP = tuple(2.0 ** -k for k in range(5, 12))
JUMP_DELTA_SWEEP = DELTA_SWEEP

# Tolerances
COMMENSURATE_RTOL = 1e-9
NODE_SPACING_RTOL = 1e-12

# Quadrature
GAUSS_POINTS = 3
OPERATOR_SUBINTERVALS_1D = 32
OPERATOR_RADIAL_POINTS_2D = 32
OPERATOR_ANGULAR_POINTS_2D = 64

# Verifier parameters and thresholds
GREEN_KAPPA = 1.0
GREEN_DELTA = 2.0 ** -4
GREEN_H = 2.0 ** -6
GREEN_TRIALS = 50
GREEN_SEED = 20240607
GREEN_TOLERANCE = 1e-10
OPERATOR_KAPPA = 1.0
OPERATOR_DELTAS = tuple(2.0 ** -k for k in range(3, 8))
OPERATOR_EXPECTED_ORDER = 2.0
OPERATOR_ORDER_TOLERANCE = 0.1
OPERATOR_EXACTNESS_TOLERANCE = 1e-10
LOCAL_FEM_H = 2.0 ** -12
LOCAL_FEM_TOLERANCE = 1e-8

# Output formats
SOLUTION_CSV_HEADER = ("x", "u_nonlocal", "u_local_exact")
STUDY_CSV_HEADER = ("param1", "param2", "quantity", "order")
CSV_FLOAT_FORMAT = ".6g"
MATRIX_DUMP_FLOAT_FORMAT = ".17g"
