"""Configuration settings for fracspde."""

from typing import List

# Special-function evaluation defaults
DEFAULT_ABS_TOL: float = 1e-14
DEFAULT_REL_TOL: float = 1e-12
DEFAULT_MAX_TERMS: int = 500

# Mittag-Leffler branch selection
ML_SERIES_FIRST_LIMIT: float = 10.0  # try the series before the expansion below this |z|
ML_INTEGRAL_LIMIT: int = 400  # subintervals for the contour integral

# Quadrature defaults
DEFAULT_QUAD_REL_TOL: float = 1e-10
DEFAULT_QUAD_ABS_TOL: float = 1e-13
DEFAULT_MAX_PANELS: int = 200
OSCILLATORY_LIMLST: int = 200  # QAWF cycles for Fourier tails

# Kernel
KERNEL_FOURIER_SPLIT: float = 8.0  # |xi| beyond which the symbol tail is integrated with a Fourier weight
ARITHMETIC_REL_TOL: float = 1e-12
SUPPORTED_PHYSICAL_DIMENSIONS: List[int] = [1, 3]

# Variance quadratures
TRIG_HEAD_CYCLES: int = 10  # periods of the fast frequency integrated before the Fourier tail
ML_ASYMPTOTIC_ONSET: float = 30.0  # sqrt of |argument| beyond which E_{2,b} splits into wave and smooth parts
BALAN_POLE_WINDOW: float = 1e-3  # relative distance to tau = a handled by the finite Fourier integral
BALAN_GAUSS_NODES: int = 96

# Covariance engine
RADIAL_GRID_POINTS: int = 121  # nodes per side of the radial product table
RADIAL_LOGIT_MIN: float = -12.0
RADIAL_LOGIT_MAX: float = 14.0
PROFILE_GRID_POINTS: int = 241
PROFILE_LOG_MIN: float = -10.0
PROFILE_LOG_MAX: float = 8.0

# Gram matrix jitter policy (relative to the largest diagonal entry)
JITTER_START: float = 1e-12
JITTER_MAX: float = 1e-6

# Caches
ENGINE_CACHE_SIZE: int = 16  # covariance engines kept per process
PAIR_CACHE_SIZE: int = 1 << 16  # covariance values kept per CovarianceModel

# Harmonizable sampler
MIN_MODE_COUNT: int = 16
DEFAULT_MODE_COUNT: int = 4096
DEFAULT_TAU_MAX: float = 400.0
DEFAULT_XI_MAX: float = 40.0
TIME_PANEL_NODES: int = 8  # Gauss nodes per panel of the transfer-function integral
MIN_TIME_PANELS: int = 12
ORIGIN_GRADING_LEVELS: int = 10  # geometric sub-panels of the first time panel
FREQUENCY_GRADING: float = 1e-3  # innermost graded cell edge as a fraction of the box half-width

# Monte Carlo
DEFAULT_MC_BATCH: int = 5000
DEFAULT_SEED: int = 20240601

# Concurrency
DEFAULT_THREADS: int = 4

# Output
OUTPUT_DIR_ENV: str = "FRACSPDE_OUTPUT_DIR"
FLOAT_DIGITS: int = 17
MODULI_SAMPLE_RADII: List[float] = [1e-1, 1e-2, 1e-3]
DEFAULT_COMPARE_DIGITS: int = 10

# Sweeps
DEFAULT_INCREMENT_LAGS: List[float] = [2.0**-k for k in range(10, 3, -1)]
DEFAULT_SLND_CONFIGS: int = 50
DEFAULT_SLND_GIVEN: int = 8

# Exit codes
EXIT_REGIME: int = 2
EXIT_NUMERICAL: int = 3
EXIT_USAGE: int = 64
