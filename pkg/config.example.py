# config.example.py
#
# Default configuration for the orbifold fusion toolkit.
# To customize, copy this file to `config.py` (in CONFIG_DIR or the working
# directory) and modify the values.
#
# IMPORTANT:
# 1. Environment variables prefixed with ORBIFOLD_FUSION_ override values in
#    `config.py`, e.g. ORBIFOLD_FUSION_MAX_ASSIGNMENTS=64.
# 2. Command-line flags override both.

from typing import List, Optional

# ===========================================
# Fusion Rules
# ===========================================

# Rule variant used when no --variant flag is given
# Options: corrected, printed
DEFAULT_VARIANT: str = "corrected"

# How degenerate pairs (a, a) in the rules are treated
# Options: split (unknown, resolved by the completion solver), fixed-split (m*D(a,0) + m*D(a,1))
DEGENERATE_POLICY: str = "split"

# ===========================================
# Completion and Verification
# ===========================================

# Upper bound on the number of candidate assignments the completion solver tries
MAX_ASSIGNMENTS: int = 256

# Counterexamples kept per axiom
MAX_COUNTEREXAMPLES: int = 20

# Worker processes for the associativity sweep (1 = in-process)
ASSOCIATIVITY_WORKERS: int = 1

# Axiom checks to run; dependencies are added automatically
ENABLED_AXIOMS: List[str] = [
    "integrality",
    "unit",
    "commutativity",
    "associativity",
    "unit-delta",
    "dual-involution",
    "dual-symmetry",
    "qdim-lower-bound",
    "qdim-homomorphism",
    "simple-currents",
]

# ===========================================
# Output
# ===========================================

# Options: text, json, csv
DEFAULT_FORMAT: str = "text"

# Directory for completion reports written when a completion fails
REPORT_DIR: str = "reports"

# SQLAlchemy URL of the table cache, e.g. "sqlite:///fusion_tables.db" (None disables caching)
TABLE_CACHE_URL: Optional[str] = None

# ===========================================
# Logging
# ===========================================

LOG_LEVEL: str = "WARNING"
LOG_FORMAT: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
