"""Special functions, adaptive quadrature and bracketed root finding.

Everything here is a pure function of its arguments. Probabilities that can
underflow (binomial likelihoods at n in the thousands) are handled in log
space by the callers; this module supplies the log-space primitives.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable

from .errors import BracketError, ConvergenceError, DomainError

__all__ = [
    "Tolerance",
    "DEFAULT_TOL",
    "ln_gamma",
    "ln_choose",
    "std_normal_cdf",
    "std_normal_sf",
    "integrate",
    "find_root",
]


@dataclass(frozen=True)
class Tolerance:
    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_iter: int = 200

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise DomainError("tolerances must be positive")
        if int(self.max_iter) != self.max_iter or self.max_iter < 1:
            raise DomainError("max_iter must be a positive integer")


DEFAULT_TOL = Tolerance()


def ln_gamma(x: float) -> float:
    """Natural log of the gamma function for ``x > 0``."""
    if not x > 0:
        raise DomainError(f"ln_gamma requires x > 0, got {x!r}")
    if math.isinf(x):
        return math.inf
    return math.lgamma(x)


def ln_choose(n: int, k: int) -> float:
    """Log of the binomial coefficient C(n, k).

    Symmetric by construction: the arguments are reordered so that
    ``ln_choose(n, k)`` and ``ln_choose(n, n - k)`` execute the same
    floating-point operations.
    """
    if n < 0 or k < 0:
        raise DomainError("ln_choose requires nonnegative n and k")
    if k > n:
        raise DomainError(f"ln_choose requires k <= n, got n={n}, k={k}")
    k = min(k, n - k)
    if k == 0:
        return 0.0
    return ln_gamma(n + 1.0) - ln_gamma(k + 1.0) - ln_gamma(n - k + 1.0)


_SQRT2 = math.sqrt(2.0)


def std_normal_cdf(z: float) -> float:
    """Standard normal CDF, evaluated through ``erfc`` to keep tail accuracy."""
    if math.isnan(z):
        return math.nan
    return 0.5 * math.erfc(-z / _SQRT2)


def std_normal_sf(z: float) -> float:
    """Upper tail ``1 - Phi(z)`` without cancellation."""
    if math.isnan(z):
        return math.nan
    return 0.5 * math.erfc(z / _SQRT2)


# 7-point Gauss / 15-point Kronrod nodes on [-1, 1] (nonnegative half).
_XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
_WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
_WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)


def _gk15(f: Callable[[float], float], a: float, b: float) -> tuple[float, float]:
    centre = 0.5 * (a + b)
    half = 0.5 * (b - a)
    fc = f(centre)
    resk = fc * _WGK[7]
    resg = fc * _WG[3]
    for j in range(7):
        dx = half * _XGK[j]
        fsum = f(centre - dx) + f(centre + dx)
        resk += _WGK[j] * fsum
        if j % 2 == 1:
            resg += _WG[j // 2] * fsum
    resk *= half
    resg *= half
    return resk, abs(resk - resg)


def integrate(
    f: Callable[[float], float],
    lower: float,
    upper: float,
    tol: Tolerance = DEFAULT_TOL,
) -> float:
    """Adaptive Gauss-Kronrod quadrature of ``f`` over ``[lower, upper]``.

    ``upper`` may be ``math.inf``; the half line is then mapped onto (0, 1)
    with ``x = lower + u / (1 - u)``. The half ``u > 1/2`` is evaluated in
    terms of ``w = 1 - u`` so that tails like ``x**-1.5``, which leave an
    integrable singularity at ``u = 1``, keep full floating-point resolution.
    The integrand is never evaluated at interval endpoints.

    The interval with the largest error estimate is bisected until the total
    estimated error is at most ``max(tol.abs_tol, tol.rel_tol * |I|)``.

    Raises
    ------
    ConvergenceError
        If ``tol.max_iter`` bisections do not reach the requested accuracy or
        the integrand produces a non-finite value.
    """
    if math.isinf(lower) or math.isnan(lower) or math.isnan(upper):
        raise DomainError("lower limit must be finite")
    if upper == lower:
        return 0.0
    if upper < lower:
        return -integrate(f, upper, lower, tol)

    if math.isinf(upper):

        def near(u: float) -> float:
            w = 1.0 - u
            return f(lower + u / w) / (w * w)

        def far(w: float) -> float:
            x = lower + (1.0 - w) / w
            if math.isinf(x):
                return 0.0
            return f(x) / (w * w)

        pieces = [(near, 0.0, 0.5), (far, 0.0, 0.5)]
    else:
        pieces = [(f, lower, upper)]

    heap = []
    for idx, (fn, a, b) in enumerate(pieces):
        val, err = _gk15(fn, a, b)
        heap.append((-err, idx, a, b, val))
    heapq.heapify(heap)
    total = sum(item[4] for item in heap)
    total_err = sum(-item[0] for item in heap)
    for _ in range(tol.max_iter):
        if not (math.isfinite(total) and math.isfinite(total_err)):
            raise ConvergenceError("integrand produced a non-finite value")
        if total_err <= max(tol.abs_tol, tol.rel_tol * abs(total)):
            return total
        neg_err, idx, lo, hi, val = heapq.heappop(heap)
        fn = pieces[idx][0]
        mid = 0.5 * (lo + hi)
        left, lerr = _gk15(fn, lo, mid)
        right, rerr = _gk15(fn, mid, hi)
        total += left + right - val
        total_err += lerr + rerr + neg_err
        heapq.heappush(heap, (-lerr, idx, lo, mid, left))
        heapq.heappush(heap, (-rerr, idx, mid, hi, right))
    # re-sum to shed accumulated rounding before the final check
    total = math.fsum(item[4] for item in heap)
    total_err = math.fsum(-item[0] for item in heap)
    if math.isfinite(total) and total_err <= max(tol.abs_tol, tol.rel_tol * abs(total)):
        return total
    raise ConvergenceError(
        f"quadrature did not converge after {tol.max_iter} subdivisions "
        f"(estimate {total!r}, error {total_err!r})"
    )


def find_root(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: Tolerance = DEFAULT_TOL,
) -> float:
    """Root of ``f`` in ``[lo, hi]`` by bisection with secant acceleration.

    A secant step is tried first on every iteration; whenever it fails to at
    least halve the bracket a bisection step follows, so the bracket width is
    guaranteed to shrink geometrically. Iteration stops once the bracket is no
    wider than ``tol.abs_tol`` and the end with the smaller ``|f|`` is
    returned.
    """
    a, b = (lo, hi) if lo <= hi else (hi, lo)
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if math.isnan(fa) or math.isnan(fb) or (fa > 0) == (fb > 0):
        raise BracketError(
            f"no sign change on [{a!r}, {b!r}]: f(lo)={fa!r}, f(hi)={fb!r}"
        )

    def pick() -> float:
        return a if abs(fa) <= abs(fb) else b

    for _ in range(tol.max_iter):
        width = b - a
        if width <= tol.abs_tol:
            return pick()
        x = b - fb * (b - a) / (fb - fa)
        if not (a < x < b):
            x = 0.5 * (a + b)
        fx = f(x)
        if fx == 0.0:
            return x
        if (fx > 0) == (fa > 0):
            a, fa = x, fx
        else:
            b, fb = x, fx
        if b - a > 0.5 * width:
            m = 0.5 * (a + b)
            if not (a < m < b):
                # bracket is down to adjacent floats
                return pick()
            fm = f(m)
            if fm == 0.0:
                return m
            if (fm > 0) == (fa > 0):
                a, fa = m, fm
            else:
                b, fb = m, fm
    if b - a <= tol.abs_tol:
        return pick()
    raise ConvergenceError(
        f"root finding did not converge after {tol.max_iter} iterations "
        f"(bracket [{a!r}, {b!r}])"
    )
