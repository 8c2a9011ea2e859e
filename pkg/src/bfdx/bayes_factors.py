"""Bayes factors for point-null tests.

Two settings are covered. In the binomial setting the null is ``theta = 1/2``
against a uniform alternative. In the Gaussian setting a sample of size ``n``
is drawn from ``N(mu, 1)`` and the null is ``mu = 0``. Three vague
alternatives are available for it (:class:`BfKind`), and point-vs-point
factors compare the null with a single alternative mean.

Every ``*_bf01`` value is oriented so that large numbers favour the null.
:func:`point_bf` and :func:`binom_point_bf` are oriented the other way: they
return the factor for the *alternative* point against the null.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DomainError, InfeasibleError
from .numerics import DEFAULT_TOL, Tolerance, find_root, integrate, ln_choose

__all__ = [
    "BinomialData",
    "GaussianSummary",
    "BfKind",
    "Interval",
    "JZS_SCALE",
    "SI_PRIOR_VAR",
    "check_threshold",
    "binom_h0_likelihood",
    "binom_h1_marginal",
    "binom_bf01",
    "binom_log_point_bf",
    "binom_point_bf",
    "robert_bf",
    "robert_required_mean",
    "robert_bf_upper",
    "log_point_bf",
    "point_bf",
    "mu_bounds",
    "t_statistic",
    "jzs_bf01",
    "si_bf01",
    "kind_bf01",
    "bf_threshold_t",
    "calibrate_si_prior_var",
    "posterior_odds",
]

#: Cauchy scale on effect size for the JZS prior (the "medium" default).
JZS_SCALE = math.sqrt(2.0) / 2.0
#: Prior variance of effect size for the scaled-information prior.
SI_PRIOR_VAR = 0.5


@dataclass(frozen=True)
class BinomialData:
    n_trials: int
    k_successes: int

    def __post_init__(self):
        if self.n_trials < 0 or self.k_successes < 0:
            raise DomainError("trial and success counts must be nonnegative")
        if self.k_successes > self.n_trials:
            raise DomainError(
                f"k_successes={self.k_successes} exceeds n_trials={self.n_trials}"
            )

    @property
    def proportion(self) -> float:
        return self.k_successes / self.n_trials


@dataclass(frozen=True)
class GaussianSummary:
    """Sample size and sample mean from a unit-variance normal population."""

    n: int
    mean: float

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"sample size must be >= 1, got {self.n}")
        if not math.isfinite(self.mean):
            raise DomainError("sample mean must be finite")


class BfKind(enum.Enum):
    """Which vague alternative the conventional Bayes factor uses."""

    ROBERT = "robert"
    JZS = "jzs"
    SCALED_INFORMATION = "si"

    @classmethod
    def parse(cls, value: "str | BfKind") -> "BfKind":
        if isinstance(value, cls):
            return value
        aliases = {
            "robert": cls.ROBERT,
            "robertvague": cls.ROBERT,
            "jzs": cls.JZS,
            "si": cls.SCALED_INFORMATION,
            "scaledinformation": cls.SCALED_INFORMATION,
            "scaled-information": cls.SCALED_INFORMATION,
        }
        try:
            return aliases[str(value).lower()]
        except KeyError:
            raise DomainError(f"unknown Bayes factor kind {value!r}") from None


@dataclass(frozen=True)
class Interval:
    """Closed interval ``[lo, hi]``. Empty regions are ``None``, never lo > hi."""

    lo: float
    hi: float

    def __post_init__(self):
        if math.isnan(self.lo) or math.isnan(self.hi) or self.lo > self.hi:
            raise DomainError(f"invalid interval [{self.lo!r}, {self.hi!r}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, x: float, slack: float = 0.0) -> bool:
        return self.lo - slack <= x <= self.hi + slack

    def covers(self, other: "Interval", slack: float = 0.0) -> bool:
        """True if ``other`` lies entirely inside this interval."""
        return self.lo - slack <= other.lo and other.hi <= self.hi + slack

    def overlaps(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi


def _exp(x: float) -> float:
    # saturate instead of raising OverflowError
    return math.exp(x) if x < 709.0 else math.inf


def check_threshold(q: float, *, allow_one: bool = False) -> float:
    q = float(q)
    if math.isnan(q) or q < 1 or (q == 1 and not allow_one):
        bound = ">= 1" if allow_one else "> 1"
        raise DomainError(f"threshold q must be {bound}, got {q!r}")
    return q


def _check_n(n: int, minimum: int = 1) -> int:
    if int(n) != n or n < minimum:
        raise DomainError(f"sample size must be an integer >= {minimum}, got {n!r}")
    return int(n)


# -- binomial -----------------------------------------------------------------


def _binom_log_h0(d: BinomialData) -> float:
    return ln_choose(d.n_trials, d.k_successes) + d.n_trials * math.log(0.5)


def binom_h0_likelihood(d: BinomialData) -> float:
    """``C(n, k) * 0.5**n``, formed in log space."""
    return math.exp(_binom_log_h0(d))


def binom_h1_marginal(d: BinomialData) -> float:
    """Marginal likelihood under a uniform prior on theta, i.e. ``1/(n+1)``."""
    return 1.0 / (d.n_trials + 1)


def binom_bf01(d: BinomialData) -> float:
    """Bayes factor for ``theta = 1/2`` against a uniform alternative."""
    return math.exp(math.log(d.n_trials + 1) + _binom_log_h0(d))


def _xlogy(x: float, y: float) -> float:
    return 0.0 if x == 0 else x * math.log(y)


def binom_log_point_bf(theta: float, d: BinomialData, theta0: float = 0.5) -> float:
    for name, p in (("theta", theta), ("theta0", theta0)):
        if not 0.0 <= p <= 1.0:
            raise DomainError(f"{name} must lie in [0, 1], got {p!r}")
    k, n = d.k_successes, d.n_trials
    try:
        num = _xlogy(k, theta) + _xlogy(n - k, 1.0 - theta)
        den = _xlogy(k, theta0) + _xlogy(n - k, 1.0 - theta0)
    except ValueError:
        raise DomainError(
            f"likelihood vanishes at theta={theta!r}, theta0={theta0!r} for k={k}, n={n}"
        ) from None
    return num - den


def binom_point_bf(theta: float, d: BinomialData, theta0: float = 0.5) -> float:
    """Likelihood ratio of the point ``theta`` against the point ``theta0``.

    Values above 1 favour ``theta``.
    """
    return _exp(binom_log_point_bf(theta, d, theta0))


# -- Gaussian, known variance ---------------------------------------------------


def robert_bf(s: GaussianSummary) -> float:
    """Robert's closed-form Bayes factor for ``mu = 0`` with unit variance."""
    n = s.n
    return math.sqrt(n + 1) * math.exp(-(n * n * s.mean * s.mean) / (2 * n + 2))


def robert_required_mean(q: float, n: int) -> float:
    """Nonnegative sample mean at which :func:`robert_bf` equals ``q``."""
    n = _check_n(n)
    if not q > 0:
        raise DomainError(f"target q must be positive, got {q!r}")
    radicand = math.log(n + 1) - 2 * math.log(q)
    if radicand < 0:
        raise InfeasibleError(
            f"a Robert Bayes factor of {q} is unreachable at n={n} "
            f"(its maximum is sqrt(n+1)={math.sqrt(n + 1):.6g})"
        )
    return math.sqrt((n + 1) * radicand) / n


def robert_bf_upper(n: int, q: float) -> float:
    """Robert factor at the smallest mean that admits a Lindley case.

    That mean is ``sqrt(2 log q / n)``; substituting it gives
    ``sqrt(n+1) * exp(-n log q / (n+1))``.
    """
    n = _check_n(n)
    q = check_threshold(q)
    return robert_bf(GaussianSummary(n, math.sqrt(2 * math.log(q) / n)))


def log_point_bf(mu1: float, mu2: float, s: GaussianSummary) -> float:
    d1 = s.mean - mu1
    d2 = s.mean - mu2
    return s.n * (d1 * d1 - d2 * d2) / 2


def point_bf(mu1: float, mu2: float, s: GaussianSummary) -> float:
    """Bayes factor for the point ``mu2`` against the point ``mu1``.

    ``point_bf(0, mu, s) > 1`` exactly when ``mu`` is closer to the sample
    mean than 0 is.
    """
    return _exp(log_point_bf(mu1, mu2, s))


def mu_bounds(q: float, s: GaussianSummary) -> Interval | None:
    """Alternative means beating the null ``mu = 0`` by a factor of at least ``q``.

    Returns ``None`` when no mean does, i.e. when ``n * mean**2 <= 2 log q``.
    """
    q = check_threshold(q)
    radicand = s.n * s.mean * s.mean - 2 * math.log(q)
    if radicand <= 0:
        return None
    half = math.sqrt(radicand) / math.sqrt(s.n)
    return Interval(s.mean - half, s.mean + half)


# -- default-prior one-sample t-test factors - ---------------------------------------


def t_statistic(s: GaussianSummary) -> float:
    """``mean * sqrt(n)``; the variance is known to be 1."""
    return s.mean * math.sqrt(s.n)


def _log_t_kernel(t: float, nu: int, scale: float) -> float:
    # log of (1 + t^2 / (scale * nu))^(-(nu+1)/2)
    return -0.5 * (nu + 1) * math.log1p(t * t / (scale * nu))


def jzs_bf01(t: float, n: int, r: float = JZS_SCALE, tol: Tolerance = DEFAULT_TOL) -> float:
    """JZS Bayes factor for the null in a one-sample t test.

    A Cauchy(0, r) prior on effect size is written as a normal with variance
    ``r**2 * g`` and ``g`` inverse-chi-square with one degree of freedom. The
    marginal over ``g`` is integrated numerically on the half line.
    """
    n = _check_n(n, 2)
    if not r > 0:
        raise DomainError(f"prior scale r must be positive, got {r!r}")
    nu = n - 1
    log_num = _log_t_kernel(t, nu, 1.0)
    r2n = r * r * n
    log_norm = -0.5 * math.log(2 * math.pi)

    def log_integrand(g: float) -> float:
        spread = 1.0 + r2n * g
        return (
            -0.5 * math.log(spread)
            + _log_t_kernel(t, nu, spread)
            + log_norm
            - 1.5 * math.log(g)
            - 0.5 / g
        )

    # shift by the integrand's peak so large |t| cannot overflow
    shift = max(log_integrand(10.0 ** (e / 8.0)) for e in range(-80, 121))

    def integrand(g: float) -> float:
        if g <= 0.0 or math.isinf(g):
            return 0.0
        return math.exp(log_integrand(g) - shift)

    mass = integrate(integrand, 0.0, math.inf, tol)
    return math.exp(log_num - shift - math.log(mass))


def si_bf01(t: float, n: int, prior_var: float = SI_PRIOR_VAR) -> float:
    """Scaled-information Bayes factor for the null in a one-sample t test.

    The alternative puts a ``N(0, prior_var)`` prior on effect size, which
    gives a closed form.
    """
    n = _check_n(n, 2)
    if not prior_var > 0:
        raise DomainError(f"prior variance must be positive, got {prior_var!r}")
    nu = n - 1
    spread = 1.0 + n * prior_var
    log_alt = -0.5 * math.log(spread) + _log_t_kernel(t, nu, spread)
    return math.exp(_log_t_kernel(t, nu, 1.0) - log_alt)


def kind_bf01(
    kind: BfKind,
    t: float,
    n: int,
    *,
    r: float = JZS_SCALE,
    prior_var: float = SI_PRIOR_VAR,
) -> float:
    """Conventional factor of the given kind at t statistic ``t``."""
    kind = BfKind.parse(kind)
    if kind is BfKind.ROBERT:
        n = _check_n(n)
        return robert_bf(GaussianSummary(n, t / math.sqrt(n)))
    if kind is BfKind.JZS:
        return jzs_bf01(t, n, r)
    return si_bf01(t, n, prior_var)


def bf_threshold_t(
    kind: BfKind,
    q: float,
    n: int,
    *,
    r: float = JZS_SCALE,
    prior_var: float = SI_PRIOR_VAR,
    tol: Tolerance = DEFAULT_TOL,
) -> float:
    """Nonnegative t at which the kind's factor for the null falls to ``q``.

    Each factor decreases strictly in ``|t|``, so the crossing is unique.
    The search bracket is ``[0, 10]``.
    """
    kind = BfKind.parse(kind)
    q = check_threshold(q)
    log_q = math.log(q)

    def excess(t: float) -> float:
        return math.log(kind_bf01(kind, t, n, r=r, prior_var=prior_var)) - log_q

    at_zero = excess(0.0)
    if at_zero < 0:
        raise InfeasibleError(
            f"{kind.value} Bayes factor never reaches {q} at n={n} "
            f"(its value at t=0 is {math.exp(at_zero + log_q):.6g})"
        )
    if excess(10.0) > 0:
        raise InfeasibleError(f"{kind.value} Bayes factor stays above {q} for |t| <= 10")
    return find_root(excess, 0.0, 10.0, tol)


def calibrate_si_prior_var(
    target_t: float,
    q: float,
    n: int,
    lo: float = 0.25,
    hi: float = 1.5,
    tol: Tolerance = DEFAULT_TOL,
) -> float:
    """Prior variance making the scaled-information threshold t equal ``target_t``.

    Used to reconcile the prior scale against published threshold values.
    """

    def gap(v: float) -> float:
        return bf_threshold_t(BfKind.SCALED_INFORMATION, q, n, prior_var=v) - target_t

    return find_root(gap, lo, hi, tol)


def posterior_odds(bf01: float, prior_odds: float = 1.0) -> float:
    if not (bf01 > 0 and prior_odds > 0):
        raise DomainError("Bayes factor and prior odds must be positive")
    return bf01 * prior_odds
