"""
DecarbPath Configuration Module

Loads settings from environment variables with sensible defaults.
Scenario parameters (economy, MAC curve, goals) live in scenario documents;
this module only holds process-wide knobs.
"""

import os
from pathlib import Path
from dotenv import load_dotenv

# Load .env file if present
load_dotenv()


# =============================================================================
# Numerical Configuration
# =============================================================================

# grid step for runs without --config and for documents that omit grid.step
DEFAULT_STEP = float(os.getenv("DECARB_DEFAULT_STEP", "0.05"))  # years
SOLVER_MAX_ITER = int(os.getenv("DECARB_SOLVER_MAX_ITER", "200"))
C_MAX = float(os.getenv("DECARB_C_MAX", "1e9"))  # per trillion $


# =============================================================================
# Sweep Configuration
# =============================================================================

SWEEP_WORKERS = int(os.getenv("DECARB_SWEEP_WORKERS", "1"))


# =============================================================================
# Logging
# =============================================================================

LOG_LEVEL = os.getenv("DECARB_LOG_LEVEL", "WARNING").upper()


# =============================================================================
# Path Configuration
# =============================================================================

PROJECT_ROOT = Path(__file__).parent
OUTPUT_ROOT = Path(os.getenv("DECARB_OUTPUT_ROOT", str(PROJECT_ROOT / "DecarbPath_Output")))
SCENARIOS_DIR = PROJECT_ROOT / "scenarios"


def get_config_summary() -> dict:
    """Get a summary of current configuration."""
    return {
        "default_step": DEFAULT_STEP,
        "solver_max_iter": SOLVER_MAX_ITER,
        "c_max": C_MAX,
        "sweep_workers": SWEEP_WORKERS,
        "log_level": LOG_LEVEL,
        "output_root": str(OUTPUT_ROOT),
    }
