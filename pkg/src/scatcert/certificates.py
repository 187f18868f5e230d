"""Closed-form guaranteed-scattering certificates for plane waves.

For a penetrable planar inhomogeneity with constant material contrast
(a, q) and refractive index n = sqrt(q/a), this module assembles the
wave-number bands on which an incident plane wave in direction eta is
guaranteed to produce a nonzero scattered field:

  * n <= 1: every wave number (the full spectrum).
  * n > 1:  a low band k in (0, pi/h0], where h0 minimizes
    w(lam) * M(lam . eta) over directions lam, with M the oscillation
    factor M(r) = r + sqrt(n^2 - 1 + r^2).
  * strictly convex domains additionally get resonance bands
    [2 pi m / h1, 2 pi m / h0], m = 1, 2, ..., which eventually overlap
    and cover a tail [k0, infinity).

When n > 1 and n*a <= 1 there are two exceptional directions lam_(+-)
(at angles +-arccos r0 from eta) where the certificate coefficient
vanishes; band endpoints realized exactly by those directions are
punctured (excluded as isolated wave numbers) rather than claimed.
"""

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import ParameterError, RegimeError
from .geometry import (
    STRICTLY_CONVEX,
    ComplexDirection,
    Direction,
    Domain,
    _golden_refine,
    classify_convexity,
    extremal_widths,
    widths,
)

TWO_PI = 2.0 * math.pi

# angular tolerance for deciding that an optimizing direction coincides
# with an exceptional direction
EXCEPTIONAL_ANGLE_TOL = 1e-9

# relative tolerance used when comparing band endpoints and h-values
REL_TOL = 1e-12


# ---------------------------------------------------------------------------
# material
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Material:
    """Constant material pair (a, q) with derived refractive index n."""

    a: float
    q: float

    def __post_init__(self):
        if not (self.a > 0.0 and self.q > 0.0):
            raise ParameterError(f"material parameters must be positive, got ({self.a}, {self.q})")
        if self.a == 1.0 and self.q == 1.0:
            raise ParameterError("(a, q) = (1, 1) is the background medium, not an inhomogeneity")

    @property
    def n(self) -> float:
        return math.sqrt(self.q / self.a)

    @property
    def na_at_most_one(self) -> bool:
        return self.n * self.a <= 1.0

    @property
    def index_regime(self) -> str:
        n = self.n
        if n < 1.0:
            return "subunit"
        if n == 1.0:
            return "unit"
        return "superunit"


# ---------------------------------------------------------------------------
# the oscillation factor M and its relatives
# ---------------------------------------------------------------------------


def oscillation_factor(r, n):
    """M(r) = r + sqrt(n^2 - 1 + r^2) for |r| <= 1, n >= 1.

    Positive and strictly increasing in r for n > 1; it converts a test
    direction's alignment r = lam . eta into the oscillation rate R = k M(r).
    """
    r_arr = np.asarray(r, dtype=float)
    if np.any(np.abs(r_arr) > 1.0 + 1e-15):
        raise ParameterError(f"alignment r must lie in [-1, 1], got {r!r}")
    if n < 1.0:
        raise RegimeError(f"oscillation factor needs n >= 1, got n = {n}")
    out = r_arr + np.sqrt(n * n - 1.0 + r_arr * r_arr)
    return out if np.ndim(r) else float(out)


def oscillation_rate(lam: Direction, eta: Direction, n: float, k: float) -> float:
    """R = k M(lam . eta): the positive root of (R/k)^2 - 2 (R/k) lam.eta + 1 - n^2 = 0."""
    if n <= 1.0:
        raise RegimeError(f"oscillation rate needs n > 1, got n = {n}")
    if k <= 0.0:
        raise ParameterError(f"wave number must be positive, got {k}")
    r = lam.dot(eta)
    rate = k * oscillation_factor(r, n)
    rho = rate / k
    residual = abs(rho * rho - 2.0 * rho * r + 1.0 - n * n)
    if residual > 1e-10 * max(1.0, rho * rho):
        raise RuntimeError(f"quadratic root check failed (residual {residual:.3e})")
    return rate


def probe_vector_from_direction(
    lam: Direction, eta: Direction, material: Material, k: float
) -> ComplexDirection:
    """The real test vector xi with k(eta + n xi) = R lam, for n > 1."""
    n = material.n
    rate = oscillation_rate(lam, eta, n, k)
    xi = ((rate / k) * lam.vector - eta.vector) / n
    norm_err = abs(xi @ xi - 1.0)
    if norm_err > 1e-10:
        raise RuntimeError(f"xi is not a unit test vector (|xi.xi - 1| = {norm_err:.3e})")
    recon = k * (eta.vector + n * xi) - rate * lam.vector
    if np.linalg.norm(recon) > 1e-10 * rate:
        raise RuntimeError("xi does not reproduce k(eta + n xi) = R lam")
    return ComplexDirection(complex(xi[0]), complex(xi[1]))


# ---------------------------------------------------------------------------
# exceptional directions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExceptionalDirections:
    """Directions where the certificate coefficient vanishes (n > 1, na <= 1)."""

    r0: float
    lambda_plus: Direction
    lambda_minus: Direction


def exceptional_directions(material: Material, eta: Direction) -> Optional[ExceptionalDirections]:
    """lam_(+-) at angles +-arccos r0 from eta, or None when na > 1.

    r0 = a sqrt(n^2 - 1) / sqrt(1 - a^2) lies in (0, 1] exactly when
    n > 1 and n a <= 1 (which forces a < 1).
    """
    n = material.n
    if n <= 1.0:
        raise RegimeError(f"exceptional directions exist only for n > 1, got n = {n}")
    a = material.a
    if a >= 1.0 or n * a > 1.0:
        return None
    r0 = min(1.0, a * math.sqrt(n * n - 1.0) / math.sqrt(1.0 - a * a))
    c0 = a * (n * n - 1.0) / (1.0 - a)
    residual = abs(r0 * oscillation_factor(r0, n) - c0)
    if residual > 1e-10 * max(1.0, abs(c0)):
        raise RuntimeError(f"r0 fails its defining equation (residual {residual:.3e})")
    offset = math.acos(r0)
    return ExceptionalDirections(
        r0=r0,
        lambda_plus=Direction(eta.angle + offset),
        lambda_minus=Direction(eta.angle - offset),
    )


# ---------------------------------------------------------------------------
# extremal h values
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HExtrema:
    h0: float
    h1: float
    argmin: Direction
    argmax: Direction


def _polish_extremum(g, theta, half_width=1e-5, fd_step=1e-7):
    """Sharpen an extremum location by bisecting the derivative sign change.

    Value-based searches stall at ~sqrt(eps) from the true optimizer (the
    objective is flat there); bisecting the central-difference derivative
    recovers the location to ~1e-10, which the exceptional-direction
    matching tolerance requires.
    """

    def deriv(t):
        return g(t + fd_step) - g(t - fd_step)

    a, b = theta - half_width, theta + half_width
    da, db = deriv(a), deriv(b)
    if da == 0.0:
        return a
    if da * db > 0.0:
        return theta  # no bracketed sign change; keep the search result
    for _ in range(60):
        mid = 0.5 * (a + b)
        dm = deriv(mid)
        if dm == 0.0:
            return mid
        if da * dm < 0.0:
            b = mid
        else:
            a, da = mid, dm
    return 0.5 * (a + b)


def h_extrema(dom: Domain, eta: Direction, material: Material, samples: int = 8192) -> HExtrema:
    """Min and max of w(lam) M(lam . eta) over the full circle of directions.

    The product is not symmetric under lam -> -lam (M is not even), so the
    whole circle is sampled, then both extrema are sharpened by
    golden-section refinement plus a derivative polish.
    """
    n = material.n
    if n <= 1.0:
        raise RegimeError(f"h extrema need n > 1, got n = {n}")
    grid = np.linspace(0.0, TWO_PI, samples, endpoint=False)
    vals = widths(dom, grid) * oscillation_factor(np.cos(grid - eta.angle), n)
    step = TWO_PI / samples

    def g(theta):
        return float(widths(dom, theta)) * oscillation_factor(math.cos(theta - eta.angle), n)

    i_min, i_max = int(np.argmin(vals)), int(np.argmax(vals))
    th_min = _polish_extremum(g, _golden_refine(g, grid[i_min] - step, grid[i_min] + step))
    th_max = _polish_extremum(
        lambda t: -g(t), _golden_refine(lambda t: -g(t), grid[i_max] - step, grid[i_max] + step)
    )
    h0, h1 = g(th_min), g(th_max)
    if not h1 > h0:
        raise RuntimeError("h1 <= h0: extrema refinement failed")
    return HExtrema(h0=h0, h1=h1, argmin=Direction(th_min), argmax=Direction(th_max))


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Band:
    """One guaranteed-scattering wave-number interval, minus punctures."""

    lo: float
    hi: float  # math.inf for an unbounded band
    lo_closed: bool
    hi_closed: bool
    source: str
    punctures: tuple = ()

    def contains(self, k: float) -> bool:
        if self.lo < k < self.hi:
            inside = True
        elif k == self.lo:
            inside = self.lo_closed
        elif k == self.hi:
            inside = self.hi_closed
        else:
            inside = False
        if not inside:
            return False
        return all(abs(k - p) > REL_TOL * max(1.0, p) for p in self.punctures)

    def to_dict(self) -> dict:
        return {
            "lo": self.lo,
            "hi": None if math.isinf(self.hi) else self.hi,
            "lo_closed": self.lo_closed,
            "hi_closed": self.hi_closed,
            "source": self.source,
            "punctures": list(self.punctures),
        }


@dataclass(frozen=True)
class Certificate:
    """Guaranteed-scattering report for one (domain, eta, material)."""

    eta: Direction
    material: Material
    bands: tuple
    h0: Optional[float]
    h1: Optional[float]
    argmin_angle: Optional[float]
    argmax_angle: Optional[float]
    full_spectrum: bool
    coverage_gaps: tuple
    k_max: float

    def covers(self, k: float) -> bool:
        """Is scattering guaranteed at wave number k?"""
        if k <= 0.0:
            return False
        return any(band.contains(k) for band in self.bands)

    def punctures(self) -> list:
        out = []
        for band in self.bands:
            out.extend(band.punctures)
        return sorted(out)

    def first_uncovered(self) -> Optional[float]:
        """Infimum of the uncovered set below k_max, None if fully covered."""
        candidates = [p for p in self.punctures() if p <= self.k_max]
        if self.coverage_gaps:
            candidates.append(self.coverage_gaps[0][0])
        return min(candidates) if candidates else None

    def to_dict(self) -> dict:
        return {
            "eta_angle": self.eta.angle,
            "material": {"a": self.material.a, "q": self.material.q, "n": self.material.n},
            "h0": self.h0,
            "h1": self.h1,
            "argmin_angle": self.argmin_angle,
            "argmax_angle": self.argmax_angle,
            "full_spectrum": self.full_spectrum,
            "k_max": self.k_max,
            "bands": [band.to_dict() for band in self.bands],
            "coverage_gaps": [list(gap) for gap in self.coverage_gaps],
        }


def _angular_distance(a: float, b: float) -> float:
    d = abs(a - b) % TWO_PI
    return min(d, TWO_PI - d)


def _merge_bands(bands):
    ordered = sorted(bands, key=lambda b: (b.lo, b.hi))
    merged = [ordered[0]]
    for band in ordered[1:]:
        cur = merged[-1]
        touching = band.lo <= cur.hi * (1.0 + REL_TOL) and (
            band.lo < cur.hi or band.lo_closed or cur.hi_closed
        )
        if touching:
            merged[-1] = Band(
                lo=cur.lo,
                hi=max(cur.hi, band.hi),
                lo_closed=cur.lo_closed,
                hi_closed=band.hi_closed if band.hi >= cur.hi else cur.hi_closed,
                source=cur.source if cur.source == band.source else f"{cur.source}+{band.source}",
                punctures=tuple(sorted(set(cur.punctures) | set(band.punctures))),
            )
        else:
            merged.append(band)
    return merged


def certify(dom: Domain, eta: Direction, material: Material, k_max: float = 1000.0) -> Certificate:
    """Assemble the guaranteed-scattering bands for an incident direction.

    k_max only bounds the reported coverage gaps; the band list itself is
    complete (it is finite, with one final unbounded band when the domain
    is strictly convex).
    """
    if k_max <= 0.0:
        raise ParameterError(f"k_max must be positive, got {k_max}")
    n = material.n

    if n <= 1.0:
        band = Band(0.0, math.inf, False, False, "index_at_most_one")
        return Certificate(
            eta=eta,
            material=material,
            bands=(band,),
            h0=None,
            h1=None,
            argmin_angle=None,
            argmax_angle=None,
            full_spectrum=True,
            coverage_gaps=(),
            k_max=k_max,
        )

    ext = h_extrema(dom, eta, material)
    h0, h1 = ext.h0, ext.h1
    strictly_convex = classify_convexity(dom) == STRICTLY_CONVEX

    # exceptional-direction matching (only possible when na <= 1)
    match_min = match_max = False
    if material.na_at_most_one:
        exc = exceptional_directions(material, eta)
        if exc is not None:
            for lam_exc in (exc.lambda_plus, exc.lambda_minus):
                if _angular_distance(ext.argmin.angle, lam_exc.angle) <= EXCEPTIONAL_ANGLE_TOL:
                    match_min = True
                if _angular_distance(ext.argmax.angle, lam_exc.angle) <= EXCEPTIONAL_ANGLE_TOL:
                    match_max = True

    # Hulls first; punctures are resolved against them afterwards.  A
    # candidate puncture (a band endpoint realized only by an exceptional
    # direction) stays excluded only if *every* certified route through
    # that wave number would also puncture it; if any band covers it away
    # from its own exceptional endpoints, it is certified after all.
    m_star = max(1, math.ceil(h0 / (h1 - h0) - REL_TOL)) if strictly_convex else 0
    hulls = [(0.0, math.pi / h0, "low_band")]
    if strictly_convex:
        for m in range(1, m_star):
            hulls.append((TWO_PI * m / h1, TWO_PI * m / h0, "resonance_band"))
        hulls.append((TWO_PI * m_star / h1, math.inf, "overlap_tail"))

    surviving = ()
    if strictly_convex and (match_min or match_max):
        # probe coverage against the elementary bands, with the unbounded
        # tail expanded into its first few overlapping constituents
        probes = [(0.0, math.pi / h0, ((math.pi / h0,) if match_min else ()))]
        for m in range(1, m_star + 3):
            nat = []
            if match_max:
                nat.append(TWO_PI * m / h1)
            if match_min:
                nat.append(TWO_PI * m / h0)
            probes.append((TWO_PI * m / h1, TWO_PI * m / h0, tuple(nat)))
        candidates = []
        if match_min:
            candidates.append(math.pi / h0)
            candidates.extend(TWO_PI * m / h0 for m in range(1, m_star + 2))
        if match_max:
            candidates.extend(TWO_PI * m / h1 for m in range(1, m_star + 2))

        def cleanly_covered(p):
            for lo, hi, native in probes:
                inside = lo * (1.0 - REL_TOL) <= p <= hi * (1.0 + REL_TOL)
                if inside and all(abs(p - v) > REL_TOL * max(1.0, v) for v in native):
                    return True
            return False

        surviving = tuple(sorted(p for p in set(candidates) if not cleanly_covered(p)))

    bands = []
    for lo, hi, source in hulls:
        punct = tuple(
            p
            for p in surviving
            if lo * (1.0 - REL_TOL) <= p and (math.isinf(hi) or p <= hi * (1.0 + REL_TOL))
        )
        bands.append(Band(lo, hi, lo > 0.0, not math.isinf(hi), source, punct))

    merged = tuple(_merge_bands(bands))
    punctured = any(band.punctures for band in merged)
    full = strictly_convex and h1 >= 2.0 * h0 * (1.0 - REL_TOL) and not punctured

    gaps = []
    for prev, nxt in zip(merged, merged[1:]):
        if nxt.lo > prev.hi and prev.hi < k_max:
            gaps.append((prev.hi, min(nxt.lo, k_max)))
    if not math.isinf(merged[-1].hi) and merged[-1].hi < k_max:
        gaps.append((merged[-1].hi, k_max))

    return Certificate(
        eta=eta,
        material=material,
        bands=merged,
        h0=h0,
        h1=h1,
        argmin_angle=ext.argmin.angle,
        argmax_angle=ext.argmax.angle,
        full_spectrum=full,
        coverage_gaps=tuple(gaps),
        k_max=k_max,
    )


def high_k_threshold(dom: Domain, material: Material) -> Optional[float]:
    """Wave number beyond which scattering holds for every incidence direction.

    Requires n > 1, na > 1 and a strictly convex domain.  Returns
    2 pi / (w_max (n - 1) - w_min (n + 1)) when that denominator is
    positive, None otherwise.
    """
    n = material.n
    if n <= 1.0:
        raise RegimeError(f"high-k threshold needs n > 1, got n = {n}")
    if material.na_at_most_one:
        raise RegimeError("high-k threshold needs n a > 1")
    if classify_convexity(dom) != STRICTLY_CONVEX:
        raise RegimeError("high-k threshold needs a strictly convex domain")
    ext = extremal_widths(dom)
    span = ext.w_max * (n - 1.0) - ext.w_min * (n + 1.0)
    if span <= 0.0:
        return None
    return TWO_PI / span
