"""Resource guards and reproducibility defaults.

Guards bound the sizes accepted by expensive constructions so that dense
exact linear algebra stays in memory.  Setting the environment variable
ADINKRA_GUARD_OVERRIDE to a non-empty value lifts every guard.
"""

from __future__ import annotations

import os

# Default seed for every randomized experiment; CLI --seed overrides it.
DEFAULT_SEED = 0x5EED

MAX_CUBE_DIMENSION = 14          # hypercube_adinkra
MAX_QUOTIENT_VERTICES = 1 << 20  # quotient_graph
MAX_COSET_BITS = 20              # cosets: N - k
MAX_ENUM_DIMENSION = 24          # codeword enumeration: 2^k words
MAX_CLASS_DIMENSION = 8          # signature classes: 2^k representatives
MAX_MINOR_PAIRS = 10 ** 6        # minor_gcd_oracle brute force


class GuardExceeded(ValueError):
    """A resource guard rejected the requested instance size."""


def guards_lifted() -> bool:
    return bool(os.environ.get("ADINKRA_GUARD_OVERRIDE"))


def check_guard(ok: bool, message: str) -> None:
    """Raise GuardExceeded unless `ok` or guards are lifted via environment."""
    if not ok and not guards_lifted():
        raise GuardExceeded(message + " (set ADINKRA_GUARD_OVERRIDE to lift)")
