"""Accept / reject a point null against a region of practical equivalence."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .bayes_factors import GaussianSummary, Interval
from .errors import DomainError
from .evidence_ratios import RegionSet, gaussian_log_er
from .numerics import DEFAULT_TOL, Tolerance, integrate

__all__ = ["Rope", "Verdict", "RopeVerdict", "CONTAINMENT_SLACK", "decide", "mean_er_in_rope"]

CONTAINMENT_SLACK = 1e-12


@dataclass(frozen=True)
class Rope:
    interval: Interval
    null_value: float = 0.0

    def __post_init__(self):
        if not (self.interval.lo < self.null_value < self.interval.hi):
            raise DomainError(
                f"null value {self.null_value!r} must lie strictly inside "
                f"[{self.interval.lo!r}, {self.interval.hi!r}]"
            )

    @classmethod
    def around(cls, lo: float, hi: float, null_value: float = 0.0) -> "Rope":
        return cls(Interval(lo, hi), null_value)


class Verdict(enum.Enum):
    ACCEPT_NULL = "accept_null"
    REJECT_NULL = "reject_null"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class RopeVerdict:
    verdict: Verdict
    regions: RegionSet
    # a support interval holding the null spills outside the ROPE
    partial_overlap: bool = False
    mean_er: float | None = None


def decide(regions: RegionSet, rope: Rope, slack: float = CONTAINMENT_SLACK) -> RopeVerdict:
    """Compare support and rejection regions with the ROPE.

    The null is accepted when a support interval contains the null value and
    lies inside the ROPE. It is rejected when a rejection interval covers the
    whole ROPE. Anything else is indeterminate. ``partial_overlap`` marks the
    indeterminate case where the supporting interval sticks out of the ROPE.
    """
    holding = [iv for iv in regions.support if iv.contains(rope.null_value, slack)]
    if any(rope.interval.covers(iv, slack) for iv in holding):
        return RopeVerdict(Verdict.ACCEPT_NULL, regions)
    if any(iv.covers(rope.interval, slack) for iv in regions.rejection):
        return RopeVerdict(Verdict.REJECT_NULL, regions)
    return RopeVerdict(Verdict.INDETERMINATE, regions, partial_overlap=bool(holding))


def mean_er_in_rope(s: GaussianSummary, rope: Rope, tol: Tolerance = DEFAULT_TOL) -> float:
    """Average evidence ratio over the ROPE.

    This is reported next to the verdict and does not change it.
    """
    lo, hi = rope.interval.lo, rope.interval.hi
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise DomainError("mean ER needs a bounded ROPE")
    # scale by the largest value on the ROPE so the quadrature sees O(1) numbers
    peak = gaussian_log_er(s, min(max(s.mean, lo), hi))
    total = integrate(lambda mu: math.exp(gaussian_log_er(s, mu) - peak), lo, hi, tol)
    return math.exp(peak) * total / (hi - lo)
