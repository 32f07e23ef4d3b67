"""Run-wide defaults: reproducibility seed, memory budget, size caps."""

import os

# Seed for the randomized factorization fallback.  Echoed in every report so
# runs can be reproduced exactly; override with --seed on the CLI.
DEFAULT_SEED = 1729

# Largest input accepted by is_prime / factorize.  The strong-pseudoprime
# witness set used by is_prime is a complete certificate only below this
# bound, so larger inputs are refused rather than answered probabilistically.
PRIMALITY_CERT_BOUND = 3_317_044_064_679_887_385_961_981

# Trial division handles primes up to this cutoff before the rho fallback.
TRIAL_DIVISION_LIMIT = 1 << 16

# Least-prime-factor table transparently used by factorize for small inputs.
DEFAULT_TABLE_LIMIT = 1 << 20

# Sieve segment length for window-table construction (indices per segment).
DEFAULT_SEGMENT_SIZE = 1 << 20

# Number of consecutive k values processed against one shared window table.
DEFAULT_KBAND = 32

# stirling2 refuses n, k above this unless the caller raises the cap.
STIRLING_DEFAULT_BOUND = 200

# lemma_product_gap cap: per-side exponent totals are 2^(k-1).
LEMMA_DEFAULT_MAX_K = 8

MEMORY_ENV_VAR = "BLOCKARITH_MEMORY_BYTES"
DEFAULT_MEMORY_BYTES = 2_000_000_000


def memory_budget() -> int:
    """Memory budget in bytes for sieve tables, from the environment."""
    raw = os.environ.get(MEMORY_ENV_VAR)
    if raw is None:
        return DEFAULT_MEMORY_BYTES
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"{MEMORY_ENV_VAR} must be an integer byte count, got {raw!r}") from exc
    if value <= 0:
        raise ValueError(f"{MEMORY_ENV_VAR} must be positive, got {value}")
    return value
