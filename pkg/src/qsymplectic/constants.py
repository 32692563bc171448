# Defaults, guards and check names shared across the verifier

CONFIG_DIR = '.qsymplectic'
CONFIG_FILE = 'config.json'
REPORT_DIR_ENV = 'REPORT_DIR'
THREADS_ENV = 'QSYMPLECTIC_THREADS'
SEED_ENV = 'QSYMPLECTIC_SEED'
DEFAULT_REPORT_DIR = 'reports'
DEFAULT_SEED = 0
DEFAULT_FORMAT = 'json'

# Scalar modes
MODE_LAURENT = 'laurent'
MODE_RATFUNC = 'ratfunc'
MODE_MODP = 'modp'
MODE_EXACT = 'exact'
MODE_AUTO = 'auto'
LINEAR_ALGEBRA_MODES = (MODE_EXACT, MODE_MODP, MODE_AUTO)

# Size guards (dimension d of V^{(x)n})
EXACT_DIM_LIMIT = 64
MODP_DIM_LIMIT = 1024
AUTO_EXACT_DIM = 16
STRUCTURE_CONSTANTS_EXACT_MAX_N = 3
STRUCTURE_CONSTANTS_MODP_MAX_N = 4

# Prime-field evaluation
MIN_PRIME_BITS = 30
EVALUATION_RETRIES = 5

# Exit codes
EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_GUARD = 2
EXIT_BAD_EVALUATION = 3

# Report statuses
STATUS_PASS = 'pass'
STATUS_FAIL = 'fail'
STATUS_SKIPPED = 'skipped'

# Suites
SUITE_RELATIONS = 'relations'
SUITE_DUALITY = 'duality'
SUITE_COUNTS = 'counts'
SUITE_OEHMS = 'oehms'
SUITE_PROJECTORS = 'projectors'
SUITE_TRUNCATE = 'truncate'
SUITE_BIMODULE = 'bimodule'
SUITE_HECKE = 'hecke'
SUITE_SERRE = 'serre'
