"""Configuration settings for the gaussfactor project."""
import math
import os
from pathlib import Path

# Project root
PROJECT_ROOT = Path(__file__).parent.parent.parent

# Artifact paths
ARTIFACTS_DIR = PROJECT_ROOT / "artifacts"
CONFIG_DIR = PROJECT_ROOT / "config"
DEFAULT_PHYSICS_CONFIG_FILE = CONFIG_DIR / "physics.defaults.conf"

# Environment variables
CONFIG_ENV_VAR = "GAUSSFACTOR_CONFIG"
LOG_LEVEL_ENV_VAR = "GAUSSFACTOR_LOG_LEVEL"
LOG_LEVEL = os.environ.get(LOG_LEVEL_ENV_VAR, "INFO")

# Factorization defaults
DEFAULT_N = 263193
DEFAULT_M = 14
MAX_RECOMMENDED_M = 19
DEFAULT_THRESHOLD = 1.0 / math.sqrt(2.0)
DEFAULT_L_MIN = 2
DEFAULT_L_MAX = 200
DEFAULT_ADAPT_FACTORS = (3, 7, 151)

# Pulse timing (microseconds)
DEFAULT_T_US = 100.0
DEFAULT_TAU_PI_US = 23.0

# Output formats
CSV_FLOAT_FORMAT = "%.12g"
MANIFEST_SUFFIX = ".manifest.json"

# Ensure directories exist
ARTIFACTS_DIR.mkdir(parents=True, exist_ok=True)


def default_config_path() -> Path | None:
    """Physics config path from the environment, if set."""
    value = os.environ.get(CONFIG_ENV_VAR)
    return Path(value) if value else None
