"""Evidence ratios and the support / rejection regions they induce.

The evidence ratio of a parameter value is its posterior density over its
prior density. Values with ratio at least ``q`` form the support region. Values
with ratio at most ``1/q`` form the rejection region.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .bayes_factors import (
    BinomialData,
    GaussianSummary,
    Interval,
    check_threshold,
)
from .errors import DomainError, InfeasibleError
from .numerics import DEFAULT_TOL, Tolerance, find_root, ln_choose

__all__ = [
    "RegionSet",
    "gaussian_log_er",
    "gaussian_log_er_exact",
    "gaussian_required_mean",
    "gaussian_support_region",
    "gaussian_rejection_region",
    "gaussian_regions",
    "quandary_pair",
    "binom_log_er",
    "binom_er",
    "binom_support_region",
    "binom_rejection_region",
    "binom_regions",
    "er_from_point_bf",
]

# Binomial roots are bracketed away from the endpoints of (0, 1).
_EDGE = 1e-9


@dataclass(frozen=True)
class RegionSet:
    support: list[Interval] = field(default_factory=list)
    rejection: list[Interval] = field(default_factory=list)
    threshold: float = 3.0

    def __post_init__(self):
        check_threshold(self.threshold)
        for group in (self.support, self.rejection):
            ordered = sorted(group, key=lambda iv: iv.lo)
            for a, b in zip(ordered, ordered[1:]):
                if a.overlaps(b):
                    raise DomainError("intervals within a region must be disjoint")
        for s in self.support:
            for r in self.rejection:
                if s.overlaps(r):
                    raise DomainError("support and rejection regions overlap")


# -- Gaussian -------------------------------------------------------------------


def gaussian_log_er(s: GaussianSummary, mu: float) -> float:
    """Log evidence ratio at ``mu`` under a N(0, 1) prior worth one observation.

    This is the large-sample form ``(mean**2 - n (mean - mu)**2 + log n) / 2``.
    See :func:`gaussian_log_er_exact` for the exact conjugate value.
    """
    d = s.mean - mu
    return (s.mean * s.mean - s.n * d * d + math.log(s.n)) / 2


def gaussian_log_er_exact(s: GaussianSummary, mu: float) -> float:
    """Exact log posterior-over-prior density ratio for a N(0, 1) prior.

    Written as likelihood over marginal likelihood, the mean being
    ``N(0, 1 + 1/n)`` under the prior.
    """
    n = s.n
    d = s.mean - mu
    return (math.log(n + 1) - n * d * d + n * s.mean * s.mean / (n + 1)) / 2


def gaussian_required_mean(q: float, n: int) -> float:
    """Nonnegative sample mean at which the evidence ratio of ``mu = 0`` is ``q``."""
    if not q > 0:
        raise DomainError(f"target q must be positive, got {q!r}")
    if n < 2:
        raise DomainError("need n >= 2")
    radicand = math.log(n) - 2 * math.log(q)
    if radicand < 0:
        raise InfeasibleError(
            f"evidence ratio {q} for mu=0 is unreachable at n={n} (needs log n >= 2 log q)"
        )
    return math.sqrt(radicand / (n - 1))


def _gaussian_half_width(s: GaussianSummary, log_target: float) -> float | None:
    radicand = (s.mean * s.mean + math.log(s.n) - 2 * log_target) / s.n
    return math.sqrt(radicand) if radicand >= 0 else None


def gaussian_support_region(s: GaussianSummary, q: float) -> Interval | None:
    """Means whose evidence ratio is at least ``q``; ``None`` if there are none."""
    q = check_threshold(q)
    half = _gaussian_half_width(s, math.log(q))
    if half is None:
        return None
    return Interval(s.mean - half, s.mean + half)


def gaussian_rejection_region(s: GaussianSummary, q: float) -> list[Interval]:
    """The two half lines where the evidence ratio is at most ``1/q``."""
    q = check_threshold(q)
    half = _gaussian_half_width(s, -math.log(q))
    # log n >= 0 and log q > 0 make the radicand positive
    return [Interval(-math.inf, s.mean - half), Interval(s.mean + half, math.inf)]


def gaussian_regions(s: GaussianSummary, q: float) -> RegionSet:
    support = gaussian_support_region(s, q)
    return RegionSet(
        support=[] if support is None else [support],
        rejection=gaussian_rejection_region(s, q),
        threshold=q,
    )


def quandary_pair(n: int, q: float) -> tuple[float, float]:
    """Two means rejected at level ``1/q`` when the null is supported at ``q``.

    The sample mean is set so that ``mu = 0`` sits exactly on the support
    boundary. The returned pair is where the evidence ratio drops to ``1/q``.
    It straddles both that sample mean and 0.
    """
    q = check_threshold(q)
    centre = gaussian_required_mean(q, n)
    spread = math.sqrt((2 * math.log(q) * (n - 2) + n * math.log(n)) / (n * (n - 1)))
    return centre - spread, centre + spread


# -- binomial, uniform prior -------------------------------------------------------


def binom_log_er(theta: float, d: BinomialData) -> float:
    if not 0.0 < theta < 1.0:
        raise DomainError(f"theta must lie in (0, 1), got {theta!r}")
    n, k = d.n_trials, d.k_successes
    return (
        math.log(n + 1)
        + ln_choose(n, k)
        + k * math.log(theta)
        + (n - k) * math.log1p(-theta)
    )


def binom_er(theta: float, d: BinomialData) -> float:
    """Posterior over prior density at ``theta`` for a uniform prior.

    This is ``(n+1) C(n, k) theta**k (1-theta)**(n-k)``.
    """
    return math.exp(binom_log_er(theta, d))


def _binom_level_set(
    d: BinomialData, log_level: float, tol: Tolerance
) -> tuple[float | None, float | None]:
    """Crossings of ``log ER = log_level`` left and right of the mode.

    A side with no crossing (ER stays above the level up to the edge of
    (0, 1)) yields ``None``.
    """
    mode = min(max(d.k_successes / d.n_trials, _EDGE), 1.0 - _EDGE)

    def f(theta: float) -> float:
        return binom_log_er(theta, d) - log_level

    left = right = None
    if f(_EDGE) < 0:
        left = find_root(f, _EDGE, mode, tol)
    if f(1.0 - _EDGE) < 0:
        right = find_root(f, mode, 1.0 - _EDGE, tol)
    return left, right


def binom_support_region(
    d: BinomialData, q: float, tol: Tolerance = DEFAULT_TOL
) -> Interval | None:
    """Interval of theta with evidence ratio at least ``q``.

    The evidence ratio is unimodal with mode ``k/n``, so the region is a single
    interval around it, or empty.
    """
    q = check_threshold(q)
    if d.n_trials == 0:
        # posterior equals prior: ER is 1 everywhere
        return None
    mode = d.k_successes / d.n_trials
    peak = binom_log_er(min(max(mode, _EDGE), 1.0 - _EDGE), d)
    if peak < math.log(q):
        return None
    left, right = _binom_level_set(d, math.log(q), tol)
    return Interval(0.0 if left is None else left, 1.0 if right is None else right)


def binom_rejection_region(
    d: BinomialData, q: float, tol: Tolerance = DEFAULT_TOL
) -> list[Interval]:
    """Intervals of theta with evidence ratio at most ``1/q``."""
    q = check_threshold(q)
    if d.n_trials == 0:
        return []
    left, right = _binom_level_set(d, -math.log(q), tol)
    out = []
    if left is not None:
        out.append(Interval(0.0, left))
    if right is not None:
        out.append(Interval(right, 1.0))
    return out


def binom_regions(d: BinomialData, q: float, tol: Tolerance = DEFAULT_TOL) -> RegionSet:
    support = binom_support_region(d, q, tol)
    return RegionSet(
        support=[] if support is None else [support],
        rejection=binom_rejection_region(d, q, tol),
        threshold=q,
    )


def er_from_point_bf(point_bf_value: float, er_at_null: float) -> float:
    """Evidence ratio of an alternative from its factor against the null.

    ``ER(theta) = B(theta, theta0) * ER(theta0)``.
    """
    if not (point_bf_value > 0 and er_at_null > 0):
        raise DomainError("both factors must be positive")
    return point_bf_value * er_at_null
