"""Planar domain representations and their width / slicing machinery.

Four concrete families are supported: simple polygons, ellipses, Reuleaux
polygons (constant-width bodies built from circular arcs over a regular
odd-gon), and smooth strictly convex bodies given by their support
function.  Every operation here is a pure function of immutable inputs.

Directional width:  w(lam) = sup lam.x - inf lam.x over the domain.
Slice length:       L(t) = 1-D measure of the chord at offset t from the
                    start of the projection onto lam, t in [0, w(lam)].
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

import numpy as np

from .errors import GeometryError, ParameterError

TWO_PI = 2.0 * math.pi

STRICTLY_CONVEX = "strictly_convex"
CONVEX = "convex"
NONCONVEX = "nonconvex"


# ---------------------------------------------------------------------------
# directions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Direction:
    """A unit vector on the circle, stored by its angle in [0, 2*pi)."""

    angle: float

    def __post_init__(self):
        object.__setattr__(self, "angle", float(self.angle) % TWO_PI)

    @property
    def vector(self):
        return np.array([math.cos(self.angle), math.sin(self.angle)])

    @property
    def perp(self):
        """The counterclockwise-rotated perpendicular unit vector."""
        return np.array([-math.sin(self.angle), math.cos(self.angle)])

    def opposite(self):
        return Direction(self.angle + math.pi)

    def dot(self, other):
        return math.cos(self.angle - other.angle)


@dataclass(frozen=True)
class ComplexDirection:
    """A complex 2-vector xi with xi.xi = 1 (the complexified unit circle)."""

    xi1: complex
    xi2: complex

    def __post_init__(self):
        s = self.xi1 * self.xi1 + self.xi2 * self.xi2
        if abs(s - 1.0) > 1e-12:
            raise ParameterError(f"xi.xi = {s} is not 1 within 1e-12")

    @property
    def vector(self):
        return np.array([self.xi1, self.xi2], dtype=complex)

    @property
    def is_real(self):
        return abs(self.xi1.imag) <= 1e-12 and abs(self.xi2.imag) <= 1e-12


def complex_direction_from_real(lam: Direction) -> ComplexDirection:
    v = lam.vector
    return ComplexDirection(complex(v[0]), complex(v[1]))


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------


def _cross2(a, b):
    return a[0] * b[1] - a[1] * b[0]


def _segments_properly_intersect(p1, p2, q1, q2):
    d1 = _cross2(q2 - q1, p1 - q1)
    d2 = _cross2(q2 - q1, p2 - q1)
    d3 = _cross2(p2 - p1, q1 - p1)
    d4 = _cross2(p2 - p1, q2 - p1)
    return ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0))


class Polygon:
    """Simple polygon with counterclockwise vertices and positive area."""

    def __init__(self, vertices):
        arr = np.asarray(vertices, dtype=float)
        if arr.ndim != 2 or arr.shape[1] != 2 or arr.shape[0] < 3:
            raise GeometryError("polygon needs at least 3 planar vertices")
        if not np.all(np.isfinite(arr)):
            raise GeometryError("polygon vertices must be finite")
        nxt = np.roll(arr, -1, axis=0)
        if np.any(np.hypot(*(nxt - arr).T) == 0.0):
            raise GeometryError("polygon has a repeated consecutive vertex")
        signed = 0.5 * np.sum(arr[:, 0] * nxt[:, 1] - nxt[:, 0] * arr[:, 1])
        if signed <= 0.0:
            raise GeometryError(
                "polygon vertices must be in counterclockwise order with positive area"
            )
        n = arr.shape[0]
        for i in range(n):
            for j in range(i + 1, n):
                if abs(i - j) in (1, n - 1):
                    continue  # adjacent edges share a vertex
                if _segments_properly_intersect(arr[i], arr[(i + 1) % n], arr[j], arr[(j + 1) % n]):
                    raise GeometryError("polygon is not simple (edges cross)")
        self.vertices = arr
        self._signed_area = signed

    def __repr__(self):
        return f"Polygon({self.vertices.shape[0]} vertices)"


class Ellipse:
    """Ellipse by center, semi-axes (A, B) and rotation of the A-axis."""

    def __init__(self, center=(0.0, 0.0), semi_axes=(1.0, 1.0), rotation=0.0):
        a, b = float(semi_axes[0]), float(semi_axes[1])
        if not (a > 0.0 and b > 0.0):
            raise GeometryError(f"ellipse semi-axes must be positive, got {semi_axes}")
        self.center = np.asarray(center, dtype=float)
        self.semi_axes = (a, b)
        self.rotation = float(rotation)

    @property
    def axis_vectors(self):
        c, s = math.cos(self.rotation), math.sin(self.rotation)
        return np.array([c, s]), np.array([-s, c])

    def __repr__(self):
        return f"Ellipse(center={tuple(self.center)}, semi_axes={self.semi_axes}, rotation={self.rotation})"


class ReuleauxPolygon:
    """Constant-width body: circular arcs over a regular odd vertex set.

    Each boundary arc is centered at the vertex opposite to it and has
    radius equal to the width.
    """

    def __init__(self, vertex_count=3, width=1.0, center=(0.0, 0.0), rotation=0.0):
        n = int(vertex_count)
        if n < 3 or n % 2 == 0:
            raise GeometryError(f"vertex count must be odd and >= 3, got {vertex_count}")
        w = float(width)
        if not w > 0.0:
            raise GeometryError(f"width must be positive, got {width}")
        self.vertex_count = n
        self.width = w
        self.center = np.asarray(center, dtype=float)
        self.rotation = float(rotation)
        circumradius = w / (2.0 * math.sin(math.pi * (n - 1) / (2.0 * n)))
        angles = self.rotation + TWO_PI * np.arange(n) / n
        self.vertices = self.center + circumradius * np.stack(
            [np.cos(angles), np.sin(angles)], axis=1
        )
        # window of arc i: outward normals for which the support point lies
        # on the arc centered at vertex i; spans pi/n starting at the
        # direction from vertex i to the first opposite vertex
        j1 = (np.arange(n) + (n - 1) // 2) % n
        d = self.vertices[j1] - self.vertices
        self._window_start = np.arctan2(d[:, 1], d[:, 0]) % TWO_PI
        self._window_width = math.pi / n

    def __repr__(self):
        return f"ReuleauxPolygon({self.vertex_count} vertices, width={self.width})"


class SupportBody:
    """Smooth strictly convex body given by its support function h(theta).

    Accepts either samples of h on a uniform angular grid (>= 64 nodes,
    converted to trigonometric-interpolation coefficients), or explicit
    cosine/sine coefficient lists.  Strict convexity h + h'' > 0 is
    validated on the grid nodes.
    """

    VALIDATION_GRID = 1024

    def __init__(self, support_values=None, cos_coefficients=None, sin_coefficients=None):
        if support_values is not None:
            vals = np.asarray(support_values, dtype=float)
            if vals.ndim != 1 or vals.size < 64:
                raise GeometryError("support_values needs a 1-D grid of size >= 64")
            if not np.all(np.isfinite(vals)):
                raise GeometryError("support_values must be finite")
            n = vals.size
            spec = np.fft.rfft(vals) / n
            cos_c = np.empty(spec.size)
            sin_c = np.empty(spec.size)
            cos_c[0], sin_c[0] = spec[0].real, 0.0
            cos_c[1:] = 2.0 * spec[1:].real
            sin_c[1:] = -2.0 * spec[1:].imag
            if n % 2 == 0:
                cos_c[-1] = spec[-1].real  # Nyquist mode appears once
            self._grid_size = n
        else:
            if cos_coefficients is None:
                raise GeometryError("need support_values or coefficient lists")
            cos_c = np.asarray(cos_coefficients, dtype=float)
            sin_c = (
                np.zeros_like(cos_c)
                if sin_coefficients is None
                else np.asarray(sin_coefficients, dtype=float)
            )
            if cos_c.ndim != 1 or sin_c.ndim != 1:
                raise GeometryError("coefficient lists must be 1-D")
            m = max(cos_c.size, sin_c.size)
            cos_c = np.pad(cos_c, (0, m - cos_c.size))
            sin_c = np.pad(sin_c, (0, m - sin_c.size))
            sin_c[0] = 0.0
            self._grid_size = max(self.VALIDATION_GRID, 2 * m)
        self.cos_coefficients = cos_c
        self.sin_coefficients = sin_c
        self._orders = np.arange(cos_c.size)
        grid = np.linspace(0.0, TWO_PI, max(self._grid_size, self.VALIDATION_GRID), endpoint=False)
        curvature_radius = self.support(grid) + self.support_second(grid)
        if np.min(curvature_radius) <= 0.0:
            raise GeometryError(
                "support function is not strictly convex: h + h'' must be positive "
                f"(min {np.min(curvature_radius):.3e})"
            )

    def _trig(self, thetas, factor):
        th = np.atleast_1d(np.asarray(thetas, dtype=float))
        phase = np.outer(th, self._orders)
        out = np.cos(phase) @ (factor[0] * self.cos_coefficients) + np.sin(phase) @ (
            factor[1] * self.sin_coefficients
        )
        return out if np.ndim(thetas) else float(out[0])

    def support(self, thetas):
        j = self._orders
        return self._trig(thetas, (np.ones_like(j, dtype=float), np.ones_like(j, dtype=float)))

    def support_prime(self, thetas):
        j = self._orders.astype(float)
        th = np.atleast_1d(np.asarray(thetas, dtype=float))
        phase = np.outer(th, self._orders)
        out = np.cos(phase) @ (j * self.sin_coefficients) - np.sin(phase) @ (
            j * self.cos_coefficients
        )
        return out if np.ndim(thetas) else float(out[0])

    def support_second(self, thetas):
        j = self._orders.astype(float)
        return self._trig(thetas, (-(j**2), -(j**2)))

    @property
    def steiner_point(self):
        # first harmonic of h = translation part; always interior
        if self.cos_coefficients.size < 2:
            return np.zeros(2)
        return np.array([self.cos_coefficients[1], self.sin_coefficients[1]])

    def __repr__(self):
        return f"SupportBody({self.cos_coefficients.size} harmonics)"


Domain = Union[Polygon, Ellipse, ReuleauxPolygon, SupportBody]


# ---------------------------------------------------------------------------
# support evaluation shared by the curved families
# ---------------------------------------------------------------------------


def _reuleaux_support(dom: ReuleauxPolygon, thetas):
    """h, h' and boundary points for a Reuleaux polygon, vectorized."""
    th = np.atleast_1d(np.asarray(thetas, dtype=float)) % TWO_PI
    u = np.stack([np.cos(th), np.sin(th)], axis=1)
    uperp = np.stack([-np.sin(th), np.cos(th)], axis=1)
    vert_proj = u @ dom.vertices.T  # (T, n)
    best = np.argmax(vert_proj, axis=1)
    h = vert_proj[np.arange(th.size), best]
    hp = uperp @ dom.vertices.T
    h_prime = hp[np.arange(th.size), best]
    points = dom.vertices[best].copy()
    for i in range(dom.vertex_count):
        delta = (th - dom._window_start[i]) % TWO_PI
        mask = delta <= dom._window_width
        if np.any(mask):
            h[mask] = u[mask] @ dom.vertices[i] + dom.width
            h_prime[mask] = uperp[mask] @ dom.vertices[i]
            points[mask] = dom.vertices[i] + dom.width * u[mask]
    return h, h_prime, points


def support_function(dom: Domain, thetas):
    """h(theta) = sup over the domain of x . (cos theta, sin theta)."""
    th = np.atleast_1d(np.asarray(thetas, dtype=float))
    if isinstance(dom, Polygon):
        u = np.stack([np.cos(th), np.sin(th)], axis=1)
        out = np.max(u @ dom.vertices.T, axis=1)
    elif isinstance(dom, Ellipse):
        e1, e2 = dom.axis_vectors
        u = np.stack([np.cos(th), np.sin(th)], axis=1)
        a, b = dom.semi_axes
        out = u @ dom.center + np.sqrt((a * (u @ e1)) ** 2 + (b * (u @ e2)) ** 2)
    elif isinstance(dom, ReuleauxPolygon):
        out = _reuleaux_support(dom, th)[0]
    elif isinstance(dom, SupportBody):
        out = np.atleast_1d(dom.support(th))
    else:
        raise GeometryError(f"unsupported domain type {type(dom).__name__}")
    return out if np.ndim(thetas) else float(out[0])


def _boundary_points(dom: Domain, thetas):
    """Boundary point with outward normal angle theta (curved domains only)."""
    th = np.atleast_1d(np.asarray(thetas, dtype=float))
    if isinstance(dom, ReuleauxPolygon):
        return _reuleaux_support(dom, th)[2]
    if isinstance(dom, SupportBody):
        h = np.atleast_1d(dom.support(th))
        hp = np.atleast_1d(dom.support_prime(th))
        u = np.stack([np.cos(th), np.sin(th)], axis=1)
        uperp = np.stack([-np.sin(th), np.cos(th)], axis=1)
        return h[:, None] * u + hp[:, None] * uperp
    raise GeometryError(f"no support parametrization for {type(dom).__name__}")


# ---------------------------------------------------------------------------
# widths
# ---------------------------------------------------------------------------


def widths(dom: Domain, angles):
    """Vectorized directional widths w(lam) for an array of angles."""
    th = np.atleast_1d(np.asarray(angles, dtype=float))
    if isinstance(dom, Polygon):
        u = np.stack([np.cos(th), np.sin(th)], axis=1)
        proj = u @ dom.vertices.T
        out = np.max(proj, axis=1) - np.min(proj, axis=1)
    elif isinstance(dom, Ellipse):
        e1, e2 = dom.axis_vectors
        u = np.stack([np.cos(th), np.sin(th)], axis=1)
        a, b = dom.semi_axes
        out = 2.0 * np.sqrt((a * (u @ e1)) ** 2 + (b * (u @ e2)) ** 2)
    elif isinstance(dom, ReuleauxPolygon):
        out = np.full(th.shape, dom.width)
    elif isinstance(dom, SupportBody):
        out = np.atleast_1d(dom.support(th)) + np.atleast_1d(dom.support(th + math.pi))
    else:
        raise GeometryError(f"unsupported domain type {type(dom).__name__}")
    return out if np.ndim(angles) else float(out[0])


def width(dom: Domain, lam: Direction) -> float:
    """Width of the domain in direction lam."""
    return float(widths(dom, lam.angle))


def projection_interval(dom: Domain, lam: Direction):
    """(inf, sup) of lam . x over the domain."""
    hi = support_function(dom, lam.angle)
    lo = -support_function(dom, lam.angle + math.pi)
    return float(lo), float(hi)


def area(dom: Domain) -> float:
    """Exact area of the domain."""
    if isinstance(dom, Polygon):
        return float(dom._signed_area)
    if isinstance(dom, Ellipse):
        return math.pi * dom.semi_axes[0] * dom.semi_axes[1]
    if isinstance(dom, ReuleauxPolygon):
        n, w = dom.vertex_count, dom.width
        circumradius = w / (2.0 * math.sin(math.pi * (n - 1) / (2.0 * n)))
        polygon_part = 0.5 * n * circumradius**2 * math.sin(TWO_PI / n)
        segment_part = n * 0.5 * w * w * (math.pi / n - math.sin(math.pi / n))
        return polygon_part + segment_part
    if isinstance(dom, SupportBody):
        # area = (1/2) integral (h^2 - h'^2); exact for trig polynomials
        a_c, b_c = dom.cos_coefficients, dom.sin_coefficients
        j = np.arange(a_c.size)
        power = a_c**2 + b_c**2
        return float(
            math.pi * a_c[0] ** 2 + 0.5 * math.pi * np.sum((1.0 - j[1:] ** 2) * power[1:])
        )
    raise GeometryError(f"unsupported domain type {type(dom).__name__}")


def diameter(dom: Domain) -> float:
    """Maximal width over all directions (= diameter of the convex hull)."""
    if isinstance(dom, Polygon):
        v = dom.vertices
        d2 = np.sum((v[:, None, :] - v[None, :, :]) ** 2, axis=2)
        return float(np.sqrt(np.max(d2)))
    if isinstance(dom, ReuleauxPolygon):
        return dom.width
    return float(np.max(widths(dom, np.linspace(0.0, math.pi, 2048, endpoint=False))))


# ---------------------------------------------------------------------------
# chord lengths (slice measures)
# ---------------------------------------------------------------------------


def _polygon_chords(dom: Polygon, lam: Direction, ts, lo):
    lvec, pvec = lam.vector, lam.perp
    heights = dom.vertices @ lvec
    perps = dom.vertices @ pvec
    h_next, p_next = np.roll(heights, -1), np.roll(perps, -1)
    out = np.empty(len(ts))
    w = float(np.max(heights)) - float(np.min(heights))
    scale = w + 1.0
    # levels are clamped just inside the projection so that boundary edges
    # lying exactly on the first/last slice line keep their closure length
    delta = 1e-12 * scale
    for idx, t in enumerate(ts):
        t_eff = min(max(t, delta), w - delta)
        out[idx] = _polygon_chord_at(heights, perps, h_next, p_next, lo + t_eff, scale)
    return out


def _polygon_chord_at(heights, perps, h_next, p_next, level, scale, _retry=True):
    d1 = heights - level
    d2 = h_next - level
    crossing = ((d1 <= 0.0) & (d2 > 0.0)) | ((d2 <= 0.0) & (d1 > 0.0))
    if not np.any(crossing):
        return 0.0
    s = d1[crossing] / (d1[crossing] - d2[crossing])
    cuts = np.sort(perps[crossing] + s * (p_next[crossing] - perps[crossing]))
    if cuts.size % 2 == 1:
        # grazing degeneracy: retry at a nudged level (measure-zero event)
        if _retry:
            return _polygon_chord_at(
                heights, perps, h_next, p_next, level + 1e-12 * scale, scale, _retry=False
            )
        raise GeometryError("degenerate polygon slice")
    return float(np.sum(cuts[1::2] - cuts[0::2]))


def _ellipse_chords(dom: Ellipse, lam: Direction, ts, lo):
    e1, e2 = dom.axis_vectors
    a, b = dom.semi_axes
    lvec = lam.vector
    alpha, beta = a * float(e1 @ lvec), b * float(e2 @ lvec)
    s = math.hypot(alpha, beta)
    # offset from the slab midline, kept as t - s so the endpoints cancel
    # exactly and L(0) = L(w) = 0 without square-root noise
    d = np.asarray(ts) - s
    frac = np.clip(1.0 - (d / s) ** 2, 0.0, None)
    return 2.0 * np.sqrt(frac) * math.hypot(a * beta, b * alpha) / s


def _support_chords(dom: Domain, lam: Direction, ts, lo):
    # bracket each chord endpoint by bisection on the two monotone boundary
    # arcs between the support points with normals +-lam
    levels = lo + np.asarray(ts, dtype=float)
    th_top = lam.angle
    lvec, pvec = lam.vector, lam.perp

    def g(th):
        return _boundary_points(dom, th) @ lvec

    def bisect(th_a, th_b, increasing):
        a = np.full(levels.shape, th_a)
        b = np.full(levels.shape, th_b)
        for _ in range(64):
            mid = 0.5 * (a + b)
            gm = g(mid)
            go_right = (gm < levels) if increasing else (gm > levels)
            a = np.where(go_right, mid, a)
            b = np.where(go_right, b, mid)
        return 0.5 * (a + b)

    th_hi = bisect(th_top, th_top + math.pi, increasing=False)
    th_lo = bisect(th_top + math.pi, th_top + TWO_PI, increasing=True)
    out = np.abs(_boundary_points(dom, th_hi) @ pvec - _boundary_points(dom, th_lo) @ pvec)
    # the chord vanishes at the projection endpoints; bisection noise there
    # is O(sqrt(eps)), so pin the extreme slices to zero explicitly
    w_here = float(support_function(dom, lam.angle)) - lo
    tau = 1e-12 * (abs(lo) + abs(w_here) + 1.0)
    ts_arr = levels - lo
    out[(ts_arr <= tau) | (ts_arr >= w_here - tau)] = 0.0
    return out


def chord_lengths(dom: Domain, lam: Direction, ts):
    """L(t) for an array of offsets t measured from the projection start."""
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    lo, hi = projection_interval(dom, lam)
    w = hi - lo
    if np.any((ts < -1e-9 * (w + 1.0)) | (ts > w + 1e-9 * (w + 1.0))):
        raise ParameterError("slice offsets must lie in [0, w(lam)]")
    if isinstance(dom, Polygon):
        return _polygon_chords(dom, lam, ts, lo)
    if isinstance(dom, Ellipse):
        return _ellipse_chords(dom, lam, ts, lo)
    if isinstance(dom, (ReuleauxPolygon, SupportBody)):
        return _support_chords(dom, lam, ts, lo)
    raise GeometryError(f"unsupported domain type {type(dom).__name__}")


def chord_length(dom: Domain, lam: Direction, t: float) -> float:
    return float(chord_lengths(dom, lam, [t])[0])


@dataclass(frozen=True)
class SliceProfile:
    """Tabulated perpendicular slice lengths of a domain along a direction."""

    direction: Direction
    width: float
    ts: np.ndarray
    values: np.ndarray
    length_fn: Callable = field(repr=False)

    def __call__(self, t):
        return self.length_fn(t)


def slice_profile(dom: Domain, lam: Direction, grid_size: int = 256) -> SliceProfile:
    """Tabulate L(t) on a uniform grid over [0, w(lam)].

    The domain is implicitly translated so the projection starts at 0.
    """
    if grid_size < 16:
        raise ParameterError(f"grid_size must be >= 16, got {grid_size}")
    w = width(dom, lam)
    ts = np.linspace(0.0, w, grid_size)
    values = chord_lengths(dom, lam, ts)

    def length_fn(t):
        scalar = np.ndim(t) == 0
        out = chord_lengths(dom, lam, np.atleast_1d(t))
        return float(out[0]) if scalar else out

    return SliceProfile(direction=lam, width=w, ts=ts, values=values, length_fn=length_fn)


# ---------------------------------------------------------------------------
# convexity classification and extremal widths
# ---------------------------------------------------------------------------


def classify_convexity(dom: Domain) -> str:
    """strictly_convex / convex / nonconvex.

    A polygon is never strictly convex (its boundary contains segments).
    """
    if isinstance(dom, (Ellipse, ReuleauxPolygon, SupportBody)):
        return STRICTLY_CONVEX
    if isinstance(dom, Polygon):
        v = dom.vertices
        e = np.roll(v, -1, axis=0) - v
        cross = e[:, 0] * np.roll(e, -1, axis=0)[:, 1] - e[:, 1] * np.roll(e, -1, axis=0)[:, 0]
        return CONVEX if np.all(cross >= 0.0) else NONCONVEX
    raise GeometryError(f"unsupported domain type {type(dom).__name__}")


def _golden_refine(f, a, b, tol=1e-10):
    """Minimize f on [a, b] by golden-section search to angular tol."""
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


@dataclass(frozen=True)
class WidthExtremes:
    w_max: float
    w_min: float
    argmax: Direction
    argmin: Direction


def extremal_widths(dom: Domain, samples: int = 4096) -> WidthExtremes:
    """Global max / min of w(lam) over the circle.

    Samples [0, pi) (widths are symmetric under lam -> -lam) and refines
    the best nodes by golden-section search.
    """
    if isinstance(dom, ReuleauxPolygon):
        d = Direction(dom.rotation)
        return WidthExtremes(dom.width, dom.width, d, d)
    grid = np.linspace(0.0, math.pi, samples, endpoint=False)
    vals = widths(dom, grid)
    step = math.pi / samples

    def w_of(theta):
        return float(widths(dom, theta))

    i_min, i_max = int(np.argmin(vals)), int(np.argmax(vals))
    th_min = _golden_refine(w_of, grid[i_min] - step, grid[i_min] + step)
    th_max = _golden_refine(lambda t: -w_of(t), grid[i_max] - step, grid[i_max] + step)
    return WidthExtremes(
        w_max=w_of(th_max),
        w_min=w_of(th_min),
        argmax=Direction(th_max),
        argmin=Direction(th_min),
    )


# ---------------------------------------------------------------------------
# JSON interface
# ---------------------------------------------------------------------------


def domain_from_dict(spec: dict) -> Domain:
    """Build a domain from its JSON document form."""
    if not isinstance(spec, dict) or "type" not in spec:
        raise GeometryError("domain document must be an object with a 'type' field")
    kind = spec["type"]
    try:
        if kind == "polygon":
            return Polygon(spec["vertices"])
        if kind == "ellipse":
            return Ellipse(
                center=spec.get("center", (0.0, 0.0)),
                semi_axes=spec["semi_axes"],
                rotation=spec.get("rotation", 0.0),
            )
        if kind == "reuleaux":
            return ReuleauxPolygon(
                vertex_count=spec["vertex_count"],
                width=spec["width"],
                center=spec.get("center", (0.0, 0.0)),
                rotation=spec.get("rotation", 0.0),
            )
        if kind == "support":
            if "support_values" in spec:
                return SupportBody(support_values=spec["support_values"])
            return SupportBody(
                cos_coefficients=spec.get("cos_coefficients"),
                sin_coefficients=spec.get("sin_coefficients"),
            )
    except KeyError as exc:
        raise GeometryError(f"domain document is missing field {exc}") from exc
    raise GeometryError(f"unknown domain type {kind!r}")


def domain_to_dict(dom: Domain) -> dict:
    if isinstance(dom, Polygon):
        return {"type": "polygon", "vertices": dom.vertices.tolist()}
    if isinstance(dom, Ellipse):
        return {
            "type": "ellipse",
            "center": dom.center.tolist(),
            "semi_axes": list(dom.semi_axes),
            "rotation": dom.rotation,
        }
    if isinstance(dom, ReuleauxPolygon):
        return {
            "type": "reuleaux",
            "vertex_count": dom.vertex_count,
            "width": dom.width,
            "center": dom.center.tolist(),
            "rotation": dom.rotation,
        }
    if isinstance(dom, SupportBody):
        return {
            "type": "support",
            "cos_coefficients": dom.cos_coefficients.tolist(),
            "sin_coefficients": dom.sin_coefficients.tolist(),
        }
    raise GeometryError(f"unsupported domain type {type(dom).__name__}")
