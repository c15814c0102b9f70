"""Constants and configuration values"""

# Tool identity (fixed field in every export)
TOOL_NAME = "orbifold-fusion"
TOOL_VERSION = "1.0.0"

# Rule variants
VARIANT_PRINTED = "printed"
VARIANT_CORRECTED = "corrected"
VARIANTS = (VARIANT_PRINTED, VARIANT_CORRECTED)

# Degenerate-summand policies
POLICY_SPLIT = "split"
POLICY_FIXED_SPLIT = "fixed-split"
DEGENERATE_POLICIES = (POLICY_SPLIT, POLICY_FIXED_SPLIT)

# Completion search
DEFAULT_MAX_ASSIGNMENTS = 256
MAX_COUNTEREXAMPLES = 20

# Output formats
OUTPUT_FORMATS = ("text", "json", "csv")

# Exit codes
EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INCONSISTENT = 3

# Environment
ENV_PREFIX = "ORBIFOLD_FUSION_"
ENV_VARIANT = "ORBIFOLD_FUSION_VARIANT"

# Axiom checks, in registry order
AXIOM_NAMES = (
    "integrality",
    "unit",
    "commutativity",
    "associativity",
    "dual-involution",
    "unit-delta",
    "dual-symmetry",
    "qdim-homomorphism",
    "qdim-lower-bound",
    "simple-currents",
)
