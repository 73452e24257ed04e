"""
Global variables for pyscmadetect.

Created on 17 Oct 2026

:author: pyscmadetect contributors
:copyright: pyscmadetect contributors © 2026
:license: BSD 3-Clause
"""

EPILOG = (
    "© 2026 pyscmadetect contributors BSD 3-Clause license"
    " - SCMA multiuser detection (MPA, log-domain MPA, discretized MPA)"
)
"""CLI argument parser epilog"""

# detector names
DET_MPA = "mpa"
"""Original (exhaustive) message passing detector"""
DET_LLR = "llr"
"""Log-domain message passing detector"""
DET_SPLIT_MPA = "split-mpa"
"""Real/imaginary split message passing detector"""
DET_DMPA = "dmpa"
"""Discretized message passing detector"""
DETECTORS = (DET_MPA, DET_LLR, DET_SPLIT_MPA, DET_DMPA)

# discretized detector modes
MODE_AUTO = "auto"
MODE_SPLIT = "split-1D"
MODE_COMPLEX = "complex-2D"
DMPA_MODES = (MODE_AUTO, MODE_SPLIT, MODE_COMPLEX)

# numeric fields
FIELD_REAL = "real"
FIELD_COMPLEX = "complex"

# complexity estimator paths
PATH_MPA = "mpa"
PATH_MPA_SPLIT = "mpa-split"
PATH_DMPA_1D = "dmpa-1d"
PATH_DMPA_2D = "dmpa-2d"
COMPLEXITY_PATHS = (PATH_MPA, PATH_MPA_SPLIT, PATH_DMPA_1D, PATH_DMPA_2D)

# simulation defaults
DEFAULT_K = 4
DEFAULT_M = 16
DEFAULT_NWID = 5.0
"""Noise PDF truncation half-width"""
DEFAULT_ITERATIONS = 5
DEFAULT_W = 0.05
"""Discretization sampling interval"""
DEFAULT_BLOCKS = 1000
DEFAULT_SEED = 1
DEFAULT_TIMING_TRIALS = 100
DEFAULT_DF_SWEEP = (2, 3, 4, 5)
DEFAULT_N0_SWEEP = (0.002, 0.004, 0.01, 0.02, 0.05, 0.1, 0.2)
"""Default N0 sweep, low to high noise"""

# codebook generation
MIN_SEPARATION = 0.05
"""Minimum spacing between drawn constellation values"""
AMPLITUDE = 1.0
"""Generated constellation values lie in [-AMPLITUDE, AMPLITUDE]"""

# numerical thresholds
UNDERFLOW = 1e-300
"""V vector sums below this are replaced by the uniform vector"""
TRUNCATION = 1e-12
"""Maximum allowed eta(nWid)/eta(0)"""
WILSON_CONFIDENCE = 0.95

VERBOSITY_CRITICAL = -1
"""Verbosity critical"""
VERBOSITY_LOW = 0
"""Verbosity error"""
VERBOSITY_MEDIUM = 1
"""Verbosity warning"""
VERBOSITY_HIGH = 2
"""Verbosity info"""
VERBOSITY_DEBUG = 3
"""Verbosity debug"""

LOGFORMAT = "{asctime}.{msecs:.0f} - {levelname} - {name} - {message}"
"""Logging format"""
LOGLIMIT = 10485760  # max size of logfile in bytes
"""Logfile limit"""

LOGGING_LEVELS = {
    VERBOSITY_CRITICAL: "CRITICAL",
    VERBOSITY_LOW: "ERROR",
    VERBOSITY_MEDIUM: "WARNING",
    VERBOSITY_HIGH: "INFO",
    VERBOSITY_DEBUG: "DEBUG",
}

BLER_COLUMNS = (
    "detector",
    "N0",
    "w",
    "blocks",
    "block_errors",
    "bler",
    "ci_lo",
    "ci_hi",
)
TIMING_COLUMNS = ("detector", "d_f", "trials", "mean_s", "std_s")
DIVERGENCE_COLUMNS = (
    "field",
    "N0",
    "w",
    "trials",
    "entries",
    "max_abs",
    "mean_abs",
    "max_rel",
    "mean_rel",
    "abs_bound",
    "rel_bound",
    "abs_exceeded",
    "rel_exceeded",
)
