import math

import numpy as np
import pytest

from conftest import (
    rand_convex_polygon,
    rand_direction,
    rand_domain,
    rand_ellipse,
    rand_reuleaux,
    rand_strictly_convex,
    rand_support_body,
)
from scatcert.errors import GeometryError, ParameterError
from scatcert.geometry import (
    CONVEX,
    NONCONVEX,
    STRICTLY_CONVEX,
    ComplexDirection,
    Direction,
    Ellipse,
    Polygon,
    ReuleauxPolygon,
    SupportBody,
    area,
    chord_lengths,
    classify_convexity,
    diameter,
    domain_from_dict,
    domain_to_dict,
    extremal_widths,
    slice_profile,
    width,
    widths,
)

UNIT_SQUARE = Polygon([(0, 0), (1, 0), (1, 1), (0, 1)])
L_SHAPE = Polygon([(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)])


# ---------------------------------------------------------------------------
# directions
# ---------------------------------------------------------------------------


def test_direction_unit_norm():
    for ang in (-1.0, 0.0, 3.9, 12.7):
        d = Direction(ang)
        assert 0.0 <= d.angle < 2 * math.pi
        assert abs(np.linalg.norm(d.vector) - 1.0) <= 1e-12
        assert abs(d.vector @ d.perp) <= 1e-12


def test_complex_direction_invariant():
    ComplexDirection(complex(-2.0), complex(0, math.sqrt(3.0)))  # (-2)^2 + (i sqrt3)^2 = 1
    with pytest.raises(ParameterError):
        ComplexDirection(complex(1.0), complex(0.5))


# ---------------------------------------------------------------------------
# widths
# ---------------------------------------------------------------------------


def test_square_axis_width():
    assert width(UNIT_SQUARE, Direction(0.0)) == pytest.approx(1.0, abs=1e-15)


def test_square_diagonal_width():
    assert width(UNIT_SQUARE, Direction(math.pi / 4)) == pytest.approx(math.sqrt(2.0), abs=1e-12)


def test_reuleaux_constant_width():
    body = ReuleauxPolygon(3, width=1.0)
    for ang in np.linspace(0.0, 2 * math.pi, 17):
        assert width(body, Direction(float(ang))) == pytest.approx(1.0, abs=1e-12)


def test_width_symmetry_all_families():
    rng = np.random.default_rng(7)
    for _ in range(12):
        dom = rand_domain(rng)
        for _ in range(8):
            lam = rand_direction(rng)
            assert width(dom, lam) == pytest.approx(width(dom, lam.opposite()), rel=1e-12)


def test_width_translation_invariance():
    rng = np.random.default_rng(11)
    shift = np.array([3.7, -1.9])
    ell = rand_ellipse(rng)
    moved = Ellipse(center=ell.center + shift, semi_axes=ell.semi_axes, rotation=ell.rotation)
    sq = Polygon(UNIT_SQUARE.vertices + shift)
    for _ in range(8):
        lam = rand_direction(rng)
        assert width(ell, lam) == pytest.approx(width(moved, lam), rel=1e-12)
        assert width(UNIT_SQUARE, lam) == pytest.approx(width(sq, lam), rel=1e-12)


# ---------------------------------------------------------------------------
# slice profiles
# ---------------------------------------------------------------------------


def test_square_axis_profile_is_constant():
    prof = slice_profile(UNIT_SQUARE, Direction(0.0), 64)
    assert prof.width == pytest.approx(1.0)
    assert np.max(np.abs(prof.values - 1.0)) <= 1e-9


def test_unit_disk_profile_closed_form():
    disk = Ellipse(center=(0.4, -0.7), semi_axes=(1.0, 1.0))
    for ang in (0.0, 1.0, 2.5):
        prof = slice_profile(disk, Direction(ang), 64)
        expect = 2.0 * np.sqrt(np.clip(1.0 - (prof.ts - 1.0) ** 2, 0.0, None))
        assert np.max(np.abs(prof.values - expect)) <= 1e-10


def test_square_diagonal_profile_matches_monte_carlo():
    # independent oracle: Monte-Carlo chord density estimate
    lam = Direction(math.pi / 4)
    prof = slice_profile(UNIT_SQUARE, lam, 64)
    w = math.sqrt(2.0)
    rng = np.random.default_rng(123)
    pts = rng.random((2_000_000, 2))
    proj = pts @ lam.vector
    hist, edges = np.histogram(proj, bins=40, range=(0.0, w))
    density = hist / len(pts) / (w / 40)  # area 1, so density(t) ~ L(t)
    mids = 0.5 * (edges[:-1] + edges[1:])
    sampled = prof.length_fn(mids)
    assert np.max(np.abs(sampled - density)) <= 0.02
    # triangular hat: peak sqrt(2) at w/2
    assert prof.length_fn(w / 2) == pytest.approx(math.sqrt(2.0), abs=1e-9)
    assert prof.length_fn(0.3) == pytest.approx(0.6, abs=1e-9)


def test_profile_grid_size_validation():
    with pytest.raises(ParameterError):
        slice_profile(UNIT_SQUARE, Direction(0.0), 8)


def test_profile_endpoints_vanish_for_strictly_convex():
    rng = np.random.default_rng(3)
    for _ in range(6):
        dom = rand_strictly_convex(rng)
        lam = rand_direction(rng)
        prof = slice_profile(dom, lam, 32)
        assert prof.values[0] <= 1e-9 * prof.width
        assert prof.values[-1] <= 1e-9 * prof.width
        assert np.all(prof.values >= -1e-12)


def test_profile_concavity_for_strictly_convex():
    rng = np.random.default_rng(5)
    for _ in range(6):
        dom = rand_strictly_convex(rng)
        lam = rand_direction(rng)
        prof = slice_profile(dom, lam, 65)
        vals, w = prof.values, prof.width
        # midpoint inequality on all grid pairs with matching midpoint
        for i in range(0, 65, 4):
            for j in range(i, 65, 4):
                mid = prof.length_fn(0.5 * (prof.ts[i] + prof.ts[j]))
                assert mid >= 0.5 * (vals[i] + vals[j]) - 1e-9 * w


def test_profile_translation_invariance():
    rng = np.random.default_rng(9)
    body = rand_support_body(rng)
    shifted = SupportBody(
        cos_coefficients=body.cos_coefficients + np.array([0.0, 1.3] + [0.0] * (body.cos_coefficients.size - 2)),
        sin_coefficients=body.sin_coefficients + np.array([0.0, -0.8] + [0.0] * (body.sin_coefficients.size - 2)),
    )
    lam = Direction(0.83)
    p1 = slice_profile(body, lam, 48)
    p2 = slice_profile(shifted, lam, 48)
    assert p1.width == pytest.approx(p2.width, rel=1e-12)
    assert np.max(np.abs(p1.values - p2.values)) <= 1e-9 * p1.width


def test_lshape_profile_multiple_segments():
    # slicing the L-shape along y: chords of length 2 in the fat part, 1 above
    prof = slice_profile(L_SHAPE, Direction(math.pi / 2), 64)
    assert prof.length_fn(0.5) == pytest.approx(2.0, abs=1e-9)
    assert prof.length_fn(1.5) == pytest.approx(1.0, abs=1e-9)


def test_nonconvex_slice_sums_segments():
    # U-shape: two disjoint chord segments at mid height
    u_shape = Polygon([(0, 0), (3, 0), (3, 2), (2, 2), (2, 1), (1, 1), (1, 2), (0, 2)])
    prof = slice_profile(u_shape, Direction(math.pi / 2), 32)
    assert prof.length_fn(1.5) == pytest.approx(2.0, abs=1e-9)  # 2 segments of 1
    assert prof.length_fn(0.5) == pytest.approx(3.0, abs=1e-9)


# ---------------------------------------------------------------------------
# areas and diameters
# ---------------------------------------------------------------------------


def test_slice_integral_reproduces_area():
    # integral of L(t) dt over [0, w] must equal the domain area, for every
    # direction on a 64-point grid (quadrature via the oscillatory engine
    # at zero rate)
    from scatcert.oscillatory import slice_oscillatory_integral

    rng = np.random.default_rng(21)
    domains = [
        UNIT_SQUARE,
        L_SHAPE,
        rand_ellipse(rng),
        rand_reuleaux(rng),
        rand_support_body(rng),
        rand_convex_polygon(rng),
    ]
    for dom in domains:
        target = area(dom)
        for ang in np.linspace(0.0, 2 * math.pi, 64, endpoint=False):
            value, _ = slice_oscillatory_integral(dom, Direction(float(ang)), 0.0)
            assert abs(value.real - target) <= 1e-9 * target
            assert abs(value.imag) <= 1e-12 * target


def test_reuleaux_area_closed_form():
    assert area(ReuleauxPolygon(3, width=1.0)) == pytest.approx((math.pi - math.sqrt(3.0)) / 2, abs=1e-14)


def test_basic_areas():
    assert area(UNIT_SQUARE) == pytest.approx(1.0)
    assert area(Ellipse(semi_axes=(2.0, 0.5))) == pytest.approx(math.pi)
    assert area(L_SHAPE) == pytest.approx(3.0)


def test_diameter():
    assert diameter(UNIT_SQUARE) == pytest.approx(math.sqrt(2.0))
    assert diameter(Ellipse(semi_axes=(1.5, 0.2))) == pytest.approx(3.0, rel=1e-6)
    assert diameter(ReuleauxPolygon(5, width=0.8)) == pytest.approx(0.8)


# ---------------------------------------------------------------------------
# convexity classification
# ---------------------------------------------------------------------------


def test_classification_examples():
    assert classify_convexity(Ellipse(semi_axes=(2.0, 1.0))) == STRICTLY_CONVEX
    assert classify_convexity(UNIT_SQUARE) == CONVEX
    assert classify_convexity(L_SHAPE) == NONCONVEX
    assert classify_convexity(ReuleauxPolygon(5, width=1.0)) == STRICTLY_CONVEX
    rng = np.random.default_rng(2)
    assert classify_convexity(rand_support_body(rng)) == STRICTLY_CONVEX
    assert classify_convexity(rand_convex_polygon(rng)) == CONVEX


# ---------------------------------------------------------------------------
# extremal widths
# ---------------------------------------------------------------------------


def test_extremal_widths_ellipse():
    ext = extremal_widths(Ellipse(semi_axes=(1.0, 0.4)))
    assert ext.w_max == pytest.approx(2.0, abs=1e-9)
    assert ext.w_min == pytest.approx(0.8, abs=1e-9)


def test_extremal_widths_square():
    ext = extremal_widths(UNIT_SQUARE)
    assert ext.w_max == pytest.approx(math.sqrt(2.0), abs=1e-9)
    assert ext.w_min == pytest.approx(1.0, abs=1e-9)


def test_extremal_widths_reuleaux():
    ext = extremal_widths(ReuleauxPolygon(3, width=1.0))
    assert ext.w_max == 1.0 and ext.w_min == 1.0


# ---------------------------------------------------------------------------
# construction validation
# ---------------------------------------------------------------------------


def test_polygon_validation():
    with pytest.raises(GeometryError):
        Polygon([(0, 0), (1, 0)])  # too few
    with pytest.raises(GeometryError):
        Polygon([(0, 0), (0, 1), (1, 1), (1, 0)])  # clockwise
    with pytest.raises(GeometryError):
        Polygon([(0, 0), (1, 1), (1, 0), (0, 1)])  # bowtie
    with pytest.raises(GeometryError):
        Polygon([(0, 0), (1, 0), (1, 0), (0, 1)])  # repeated vertex


def test_ellipse_validation():
    with pytest.raises(GeometryError):
        Ellipse(semi_axes=(0.0, 1.0))
    with pytest.raises(GeometryError):
        Ellipse(semi_axes=(1.0, -2.0))


def test_reuleaux_validation():
    with pytest.raises(GeometryError):
        ReuleauxPolygon(4, width=1.0)
    with pytest.raises(GeometryError):
        ReuleauxPolygon(3, width=0.0)


def test_support_body_validation():
    with pytest.raises(GeometryError):
        SupportBody(support_values=np.ones(32))  # grid too small
    with pytest.raises(GeometryError):
        # strong second harmonic: h + h'' changes sign
        SupportBody(cos_coefficients=[1.0, 0.0, 0.5])
    with pytest.raises(GeometryError):
        SupportBody()


def test_support_body_from_samples_reproduces_function():
    grid = np.linspace(0.0, 2 * math.pi, 256, endpoint=False)
    h = 1.0 + 0.1 * np.cos(2 * grid) - 0.05 * np.sin(3 * grid)
    body = SupportBody(support_values=h)
    probe = np.linspace(0.0, 2 * math.pi, 101)
    expect = 1.0 + 0.1 * np.cos(2 * probe) - 0.05 * np.sin(3 * probe)
    assert np.max(np.abs(body.support(probe) - expect)) <= 1e-12


# ---------------------------------------------------------------------------
# JSON interface
# ---------------------------------------------------------------------------


def test_domain_json_round_trip():
    rng = np.random.default_rng(13)
    for dom in (UNIT_SQUARE, rand_ellipse(rng), rand_reuleaux(rng), rand_support_body(rng)):
        clone = domain_from_dict(domain_to_dict(dom))
        for _ in range(6):
            lam = rand_direction(rng)
            assert width(dom, lam) == pytest.approx(width(clone, lam), rel=1e-12)


def test_domain_from_dict_errors():
    with pytest.raises(GeometryError):
        domain_from_dict({"type": "heptagon"})
    with pytest.raises(GeometryError):
        domain_from_dict({"type": "ellipse"})  # missing semi_axes
    with pytest.raises(GeometryError):
        domain_from_dict([1, 2, 3])


def test_domain_from_dict_support_samples():
    grid = np.linspace(0.0, 2 * math.pi, 128, endpoint=False)
    doc = {"type": "support", "support_values": (1.0 + 0.05 * np.cos(2 * grid)).tolist()}
    dom = domain_from_dict(doc)
    assert classify_convexity(dom) == STRICTLY_CONVEX
