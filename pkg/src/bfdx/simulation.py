"""Monte Carlo check of the Lindley-case probability under the null.

Sample means are drawn as ``z / sqrt(n)`` with ``z`` standard normal. The
normals come from inverse-CDF transforms of a Philox counter-based stream. The
stream is cut into fixed-size blocks, and block ``b`` uses counter ``b << 192``
under key ``seed``. A draw's value therefore depends only on its index, so the
hit count is identical for any number of workers.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtri

from .bayes_factors import JZS_SCALE, SI_PRIOR_VAR, BfKind, check_threshold
from .errors import DomainError, InfeasibleError
from .lindley import max_conventional_mean, min_lindley_mean

__all__ = ["SimulationResult", "BLOCK_SIZE", "lindley_t_band", "standard_normals", "simulate_lindley_rate"]

BLOCK_SIZE = 1 << 16
_U64 = 1 << 64


@dataclass(frozen=True)
class SimulationResult:
    reps: int
    hits: int
    rate: float
    stderr: float
    seed: int

    @classmethod
    def from_counts(cls, reps: int, hits: int, seed: int) -> "SimulationResult":
        rate = hits / reps
        return cls(reps, hits, rate, math.sqrt(rate * (1.0 - rate) / reps), seed)


def lindley_t_band(
    n: int, q: float, kind: BfKind, *, r: float = JZS_SCALE, prior_var: float = SI_PRIOR_VAR
) -> tuple[float, float] | None:
    """Band of ``|t| = |mean| sqrt(n)`` holding the Lindley cases.

    The lower edge is exclusive and the upper edge inclusive, matching
    :func:`bfdx.lindley.detect_lindley_case`. Returns ``None`` when the band
    is empty.
    """
    root_n = math.sqrt(n)
    try:
        hi = max_conventional_mean(n, q, kind, r=r, prior_var=prior_var) * root_n
    except InfeasibleError:
        return None
    lo = min_lindley_mean(n, q) * root_n
    return (lo, hi) if lo < hi else None


def standard_normals(seed: int, block: int, size: int) -> np.ndarray:
    """Standard normals for one block of the counter space."""
    raw = np.random.Philox(key=seed, counter=block << 192).random_raw(size)
    u = ((raw >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0**-53
    return ndtri(u)


def _count_block(seed: int, block: int, size: int, lo: float, hi: float) -> int:
    z = np.abs(standard_normals(seed, block, size))
    return int(np.count_nonzero((z > lo) & (z <= hi)))


def simulate_lindley_rate(
    n: int,
    q: float,
    kind: BfKind,
    reps: int,
    seed: int,
    *,
    workers: int | None = None,
    r: float = JZS_SCALE,
    prior_var: float = SI_PRIOR_VAR,
) -> SimulationResult:
    """Fraction of null-generated samples that are Lindley cases.

    Each draw is classified through the t-band from :func:`lindley_t_band`.
    Every conventional factor decreases in ``|t|``, so this matches
    :func:`bfdx.lindley.detect_lindley_case` without a quadrature per draw.
    """
    if int(reps) != reps or reps < 1:
        raise DomainError(f"reps must be a positive integer, got {reps!r}")
    if int(seed) != seed or not 0 <= seed < _U64:
        raise DomainError(f"seed must be a 64-bit unsigned integer, got {seed!r}")
    if int(n) != n or n < 1:
        raise DomainError(f"sample size must be a positive integer, got {n!r}")
    kind = BfKind.parse(kind)
    q = check_threshold(q)
    reps, seed = int(reps), int(seed)

    band = lindley_t_band(n, q, kind, r=r, prior_var=prior_var)
    if band is None:
        return SimulationResult.from_counts(reps, 0, seed)
    lo, hi = band

    sizes = [BLOCK_SIZE] * (reps // BLOCK_SIZE)
    if reps % BLOCK_SIZE:
        sizes.append(reps % BLOCK_SIZE)
    jobs = [(seed, b, size, lo, hi) for b, size in enumerate(sizes)]
    if workers is not None and workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            hits = sum(pool.map(lambda job: _count_block(*job), jobs))
    else:
        hits = sum(_count_block(*job) for job in jobs)
    return SimulationResult.from_counts(reps, hits, seed)
