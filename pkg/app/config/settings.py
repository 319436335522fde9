import os
from dotenv import load_dotenv
load_dotenv()

# Resultant capacity
MAX_VARIABLES = int(os.getenv("POSCERT_MAX_VARIABLES", "4"))
MAX_MATRIX_SIZE = int(os.getenv("POSCERT_MAX_MATRIX_SIZE", "500"))

# Characteristic polynomial interpolation
CHARPOLY_MAX_RETRIES = int(os.getenv("POSCERT_CHARPOLY_MAX_RETRIES", "8"))

# Counterexample sampler
SAMPLER_SEED = int(os.getenv("POSCERT_SAMPLER_SEED", "7919"))
SAMPLER_BUDGET = int(os.getenv("POSCERT_SAMPLER_BUDGET", "200"))
SAMPLER_DENOMINATOR = int(os.getenv("POSCERT_SAMPLER_DENOMINATOR", "12"))

# Certification pipeline
MAX_SUBSPACE_VARIABLES = int(os.getenv("POSCERT_MAX_SUBSPACE_VARIABLES", "4"))
PARALLEL_WORKERS = int(os.getenv("POSCERT_PARALLEL_WORKERS", "4"))

# Logging settings
LOG_LEVEL = os.getenv("POSCERT_LOG_LEVEL", "WARNING")

# API server
API_HOST = os.getenv("POSCERT_API_HOST", "0.0.0.0")
API_PORT = int(os.getenv("POSCERT_API_PORT", "8000"))

# Validate settings
if MAX_VARIABLES < 1 or MAX_MATRIX_SIZE < 1:
    raise ValueError("Resultant capacity limits must be positive")

if CHARPOLY_MAX_RETRIES < 1:
    raise ValueError("POSCERT_CHARPOLY_MAX_RETRIES must be at least 1")

if SAMPLER_BUDGET < 0 or SAMPLER_DENOMINATOR < 1:
    raise ValueError("Sampler budget must be non-negative and the denominator positive")

if PARALLEL_WORKERS < 1:
    raise ValueError("POSCERT_PARALLEL_WORKERS must be at least 1")
