"""Lindley cases: the same data supporting and rejecting the null at once.

A Gaussian sample is a Lindley case at threshold ``q`` when the conventional
(vague-alternative) Bayes factor favours ``mu = 0`` by at least ``q`` while
some interval of point alternatives beats the null by more than ``q``. The
second condition holds iff ``n * mean**2 > 2 log q``. The first holds iff
``|mean|`` is at most the kind's threshold mean. Under the null the sample
mean is ``N(0, 1/n)``, which gives the probability of a Lindley case in
closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .bayes_factors import (
    JZS_SCALE,
    SI_PRIOR_VAR,
    BfKind,
    GaussianSummary,
    Interval,
    bf_threshold_t,
    check_threshold,
    kind_bf01,
    mu_bounds,
    robert_bf,
    robert_required_mean,
    t_statistic,
)
from .errors import InfeasibleError
from .numerics import std_normal_sf

__all__ = [
    "LindleyReport",
    "min_lindley_mean",
    "max_conventional_mean",
    "lindley_mean_range",
    "lindley_bf_range",
    "lindley_probability",
    "lindley_asymptote",
    "detect_lindley_case",
]


@dataclass(frozen=True)
class LindleyReport:
    kind: BfKind
    q: float
    conventional_bf: float
    counter_interval: Interval | None
    is_lindley_case: bool


def min_lindley_mean(n: int, q: float) -> float:
    """Smallest ``|mean|`` for which some point alternative beats the null by ``q``."""
    q = check_threshold(q)
    return math.sqrt(2 * math.log(q) / n)


def max_conventional_mean(
    n: int,
    q: float,
    kind: BfKind,
    *,
    r: float = JZS_SCALE,
    prior_var: float = SI_PRIOR_VAR,
) -> float:
    """Largest ``|mean|`` at which the kind's factor still favours the null by ``q``.

    Raises :class:`InfeasibleError` when the factor never reaches ``q``.
    """
    kind = BfKind.parse(kind)
    q = check_threshold(q)
    if kind is BfKind.ROBERT:
        return robert_required_mean(q, n)
    return bf_threshold_t(kind, q, n, r=r, prior_var=prior_var) / math.sqrt(n)


def lindley_mean_range(n: int, q: float, kind: BfKind, **prior) -> Interval | None:
    """Positive sample means that produce a Lindley case, or ``None``.

    The mirror-image range of negative means is implied.
    """
    lo = min_lindley_mean(n, q)
    hi = max_conventional_mean(n, q, kind, **prior)
    if lo > hi:
        return None
    return Interval(lo, hi)


def lindley_bf_range(n: int, q: float, kind: BfKind, **prior) -> Interval:
    """Conventional Bayes factors that guarantee a Lindley case.

    The range runs from ``q`` up to the factor at the smallest Lindley mean.
    """
    kind = BfKind.parse(kind)
    means = lindley_mean_range(n, q, kind, **prior)
    if means is None:
        raise InfeasibleError(f"no Lindley cases at n={n}, q={q} for {kind.value}")
    if kind is BfKind.ROBERT:
        top = robert_bf(GaussianSummary(n, means.lo))
    else:
        top = kind_bf01(kind, means.lo * math.sqrt(n), n, **prior)
    return Interval(q, top)


def lindley_probability(n: int, q: float, kind: BfKind, **prior) -> float:
    """Probability of a Lindley case when the null is true.

    Both signs of the sample mean count.
    """
    try:
        means = lindley_mean_range(n, q, kind, **prior)
    except InfeasibleError:
        return 0.0
    if means is None:
        return 0.0
    root_n = math.sqrt(n)
    # upper tails avoid the cancellation in Phi(b) - Phi(a) near 1
    return 2 * (std_normal_sf(means.lo * root_n) - std_normal_sf(means.hi * root_n))


def lindley_asymptote(q: float) -> float:
    """Large-n limit of :func:`lindley_probability`, ``erfc(sqrt(log q))``.

    Equivalently ``2 - erfc(-sqrt(log q))``.
    """
    q = check_threshold(q, allow_one=True)
    return math.erfc(math.sqrt(math.log(q)))


def detect_lindley_case(
    s: GaussianSummary, q: float, kind: BfKind, **prior
) -> LindleyReport:
    kind = BfKind.parse(kind)
    q = check_threshold(q)
    if kind is BfKind.ROBERT:
        bf = robert_bf(s)
    else:
        bf = kind_bf01(kind, t_statistic(s), s.n, **prior)
    counter = mu_bounds(q, s)
    return LindleyReport(
        kind=kind,
        q=q,
        conventional_bf=bf,
        counter_interval=counter,
        is_lindley_case=bf >= q and counter is not None,
    )
