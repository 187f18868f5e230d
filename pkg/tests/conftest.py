"""Shared random-domain factories for the test suites (seeded, deterministic)."""

import math

import numpy as np

from scatcert.geometry import Direction, Ellipse, Polygon, ReuleauxPolygon, SupportBody


def rand_direction(rng):
    return Direction(rng.uniform(0.0, 2.0 * math.pi))


def rand_ellipse(rng):
    return Ellipse(
        center=rng.uniform(-2.0, 2.0, size=2),
        semi_axes=(rng.uniform(0.5, 1.5), rng.uniform(0.25, 1.2)),
        rotation=rng.uniform(0.0, math.pi),
    )


def rand_reuleaux(rng):
    return ReuleauxPolygon(
        vertex_count=int(rng.choice([3, 5, 7])),
        width=rng.uniform(0.6, 1.6),
        center=rng.uniform(-2.0, 2.0, size=2),
        rotation=rng.uniform(0.0, 2.0 * math.pi),
    )


def rand_support_body(rng, harmonics=5):
    base = rng.uniform(0.8, 1.4)
    cos_c = np.zeros(harmonics + 1)
    sin_c = np.zeros(harmonics + 1)
    cos_c[0] = base
    cos_c[1], sin_c[1] = rng.uniform(-0.3, 0.3, size=2)  # translation part
    budget = 0.35 * base
    for j in range(2, harmonics + 1):
        amp = budget / (harmonics - 1) / (j * j - 1)
        cos_c[j] = rng.uniform(-amp, amp)
        sin_c[j] = rng.uniform(-amp, amp)
    return SupportBody(cos_coefficients=cos_c, sin_coefficients=sin_c)


def rand_strictly_convex(rng):
    kind = rng.integers(0, 3)
    if kind == 0:
        return rand_ellipse(rng)
    if kind == 1:
        return rand_reuleaux(rng)
    return rand_support_body(rng)


def rand_rectangle(rng):
    p0 = rng.uniform(-2.0, 2.0, size=2)
    phi = rng.uniform(0.0, math.pi)
    l1, l2 = rng.uniform(0.5, 2.0), rng.uniform(0.3, 1.5)
    e1 = l1 * np.array([math.cos(phi), math.sin(phi)])
    e2 = l2 * np.array([-math.sin(phi), math.cos(phi)])
    return Polygon([p0, p0 + e1, p0 + e1 + e2, p0 + e2])


def rand_convex_polygon(rng, n_vertices=8):
    # vertices on a random ellipse at sorted angles: convex and ccw
    angles = np.sort(rng.uniform(0.0, 2.0 * math.pi, size=n_vertices))
    if np.min(np.diff(angles)) < 1e-3:
        angles = np.linspace(0.0, 2.0 * math.pi, n_vertices, endpoint=False)
        angles += rng.uniform(0.0, 2.0 * math.pi / n_vertices)
    a, b = rng.uniform(0.6, 1.8), rng.uniform(0.4, 1.2)
    phi = rng.uniform(0.0, math.pi)
    rot = np.array([[math.cos(phi), -math.sin(phi)], [math.sin(phi), math.cos(phi)]])
    pts = np.stack([a * np.cos(angles), b * np.sin(angles)], axis=1) @ rot.T
    return Polygon(pts + rng.uniform(-1.0, 1.0, size=2))


def rand_domain(rng):
    kind = rng.integers(0, 5)
    if kind == 0:
        return rand_ellipse(rng)
    if kind == 1:
        return rand_reuleaux(rng)
    if kind == 2:
        return rand_support_body(rng)
    if kind == 3:
        return rand_rectangle(rng)
    return rand_convex_polygon(rng)
