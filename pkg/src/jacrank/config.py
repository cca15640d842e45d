import os
from dataclasses import dataclass, field


def _env_threads():
    try:
        return max(1, int(os.environ.get("JACRANK_THREADS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class Budget:
    """Guards for the exponential enumerations."""

    max_terms: int = 10**9           # summation terms in one divisor sum
    max_field: int = 1 << 24         # largest field size with lookup tables
    chunk: int = 1 << 18             # vectorised block size
    threads: int = field(default_factory=_env_threads)


DEFAULT_BUDGET = Budget()
