import math

import numpy as np
import pytest

from conftest import (
    rand_direction,
    rand_domain,
    rand_ellipse,
    rand_rectangle,
    rand_reuleaux,
    rand_strictly_convex,
    rand_support_body,
)
from scatcert.bessel import bessel_zero
from scatcert.certificates import Material, exceptional_directions, probe_vector_from_direction
from scatcert.errors import MethodError, ParameterError
from scatcert.geometry import (
    ComplexDirection,
    Direction,
    Ellipse,
    Polygon,
    ReuleauxPolygon,
    area,
    complex_direction_from_real,
    diameter,
    width,
)
from scatcert.oscillatory import (
    area_integral,
    closed_form_integral,
    contrast_coefficient,
    evanescent_test_vector,
    exponent_vector,
    nonscattering_identity_residual,
    plane_wave_integral,
    sign_properties,
    slice_oscillatory_integral,
)
from scatcert.oscillatory import _anchor_shift

UNIT_SQUARE = Polygon([(0, 0), (1, 0), (1, 1), (0, 1)])


# ---------------------------------------------------------------------------
# the contrast coefficient C
# ---------------------------------------------------------------------------


def test_contrast_coefficient_matched_a():
    # a = 1 kills the direction-dependent term: C = 1 - n^2 = -3 for n = 2
    mat = Material(1.0, 4.0)
    eta = Direction(0.4)
    for ang in (0.0, 1.0, 2.2):
        xi = complex_direction_from_real(Direction(ang))
        assert contrast_coefficient(xi, eta, mat) == pytest.approx(-3.0, abs=1e-14)


def test_contrast_coefficient_vanishes_at_exceptional():
    eta = Direction(0.9)
    mat = Material(0.5, 1.0)  # n = sqrt(2), na = sqrt(2)/2 <= 1
    exc = exceptional_directions(mat, eta)
    k = 1.7
    for lam in (exc.lambda_plus, exc.lambda_minus):
        xi = probe_vector_from_direction(lam, eta, mat, k)
        assert abs(contrast_coefficient(xi, eta, mat)) <= 1e-10


def test_contrast_coefficient_evanescent():
    mat = Material(1.0, 0.25)  # n = 1/2; a = 1
    eta = Direction(0.0)
    xi = evanescent_test_vector(mat, eta)
    c = contrast_coefficient(xi, eta, mat)
    assert c == pytest.approx(1.0 - 0.25, abs=1e-14)  # 1 - n^2


# ---------------------------------------------------------------------------
# the evanescent test vector (n < 1)
# ---------------------------------------------------------------------------


def test_evanescent_vector_half():
    eta = Direction(0.0)
    xi = evanescent_test_vector(Material(1.0, 0.25), eta)  # n = 1/2
    assert xi.vector[0] == pytest.approx(-2.0, abs=1e-14)
    assert xi.vector[1] == pytest.approx(1j * math.sqrt(3.0), abs=1e-14)
    assert (xi.vector @ xi.vector) == pytest.approx(1.0, abs=1e-14)


def test_evanescent_vector_inverse_sqrt2():
    eta = Direction(0.0)
    xi = evanescent_test_vector(Material(1.0, 0.5), eta)  # n = 1/sqrt(2)
    assert xi.vector[0] == pytest.approx(-math.sqrt(2.0), abs=1e-14)
    assert xi.vector[1] == pytest.approx(1j, abs=1e-14)


def test_evanescent_vector_near_one():
    eta = Direction(1.3)
    xi = evanescent_test_vector(Material(1.0, 0.99**2), eta)
    y = math.sqrt(1.0 / 0.99**2 - 1.0)
    assert y == pytest.approx(0.14249, abs=1e-5)
    assert abs(xi.vector @ xi.vector - 1.0) <= 1e-12


def test_evanescent_vector_regime():
    with pytest.raises(ParameterError):
        evanescent_test_vector(Material(1.0, 4.0), Direction(0.0))


# ---------------------------------------------------------------------------
# the plane-wave integral I
# ---------------------------------------------------------------------------


def test_square_full_period_vanishes():
    # exponent i 2 pi in x1 only: integral of a full complex period
    value, err = slice_oscillatory_integral(UNIT_SQUARE, Direction(0.0), 2.0 * math.pi)
    assert abs(value) <= 1e-12
    value2, _ = area_integral(UNIT_SQUARE, np.array([2.0 * math.pi, 0.0], dtype=complex))
    assert abs(value2) <= 1e-10


def test_square_half_period_analytic():
    expect = 2j / math.pi
    value, _ = slice_oscillatory_integral(UNIT_SQUARE, Direction(0.0), math.pi)
    assert value == pytest.approx(expect, abs=1e-12)
    closed = closed_form_integral(UNIT_SQUARE, np.array([math.pi, 0.0], dtype=complex))
    assert closed == pytest.approx(expect, abs=1e-13)


def test_disk_vanishes_at_first_bessel_zero():
    # |kappa| at the first positive zero of J1 (bracketing oracle value)
    disk = Ellipse(semi_axes=(1.0, 1.0))
    j11 = bessel_zero(1, 1)
    for ang in (0.0, 0.7):
        value, _ = slice_oscillatory_integral(disk, Direction(ang), j11)
        assert abs(value) <= 1e-10


def test_plane_wave_integral_report_consistency():
    mat = Material(1.0, 4.0)
    eta = Direction(0.3)
    lam = Direction(1.1)
    xi = probe_vector_from_direction(lam, eta, mat, 2.0)
    rep = plane_wave_integral(UNIT_SQUARE, eta, mat, 2.0, xi)
    assert rep.product == rep.C_value * rep.I_value  # exactly as stored
    assert rep.est_error >= 0.0


def test_slice_method_rejects_complex_exponent():
    mat = Material(1.0, 0.25)
    eta = Direction(0.0)
    xi = evanescent_test_vector(mat, eta)
    with pytest.raises(MethodError):
        plane_wave_integral(UNIT_SQUARE, eta, mat, 1.0, xi, method="slice")


def test_closed_form_unavailable_for_reuleaux():
    mat = Material(1.0, 4.0)
    eta = Direction(0.0)
    xi = probe_vector_from_direction(Direction(0.5), eta, mat, 1.0)
    with pytest.raises(MethodError):
        plane_wave_integral(ReuleauxPolygon(3, width=1.0), eta, mat, 1.0, xi, method="closed_form")


def test_method_agreement_randomized():
    rng = np.random.default_rng(41)
    for _ in range(40):
        dom = rand_domain(rng)
        lam = rand_direction(rng)
        w = width(dom, lam)
        rate = rng.uniform(0.1, 40.0 / max(w, 1e-6))
        rate = min(rate, 40.0 / w)
        v_slice, e_slice = slice_oscillatory_integral(dom, lam, rate)
        kappa = (rate * lam.vector).astype(complex)
        shift = _anchor_shift(dom, kappa)
        v_area, e_area = area_integral(dom, kappa, shift)
        tol = max(1e-6 * area(dom), 10.0 * (e_slice + e_area))
        assert abs(v_slice - v_area) <= tol


def test_closed_form_agreement_randomized():
    rng = np.random.default_rng(43)
    for _ in range(20):
        dom = rand_rectangle(rng) if rng.integers(0, 2) == 0 else rand_ellipse(rng)
        lam = rand_direction(rng)
        d = diameter(dom)
        rate = rng.uniform(0.1, 40.0 / d)
        kappa = (rate * lam.vector).astype(complex)
        shift = _anchor_shift(dom, kappa)
        closed = closed_form_integral(dom, kappa, shift)
        assert closed is not None
        v_area, _ = area_integral(dom, kappa, shift)
        assert abs(closed - v_area) <= 1e-8 * max(abs(closed), area(dom))


def test_evanescent_integral_positive_randomized():
    rng = np.random.default_rng(47)
    for _ in range(15):
        dom = rand_domain(rng)
        eta = rand_direction(rng)
        n = rng.uniform(0.2, 0.95)
        mat = Material(1.0, n * n)
        k = rng.uniform(0.2, 5.0)
        xi = evanescent_test_vector(mat, eta)
        rep = plane_wave_integral(dom, eta, mat, k, xi)
        assert abs(rep.I_value.imag) <= 1e-10 * abs(rep.I_value)
        y = math.sqrt(1.0 / (n * n) - 1.0)
        lower = area(dom) * math.exp(-k * n * y * diameter(dom))
        assert rep.I_value.real >= lower * (1.0 - 1e-9)


# ---------------------------------------------------------------------------
# sign properties
# ---------------------------------------------------------------------------


def test_sign_low_band_disk():
    disk = Ellipse(semi_axes=(0.5, 0.5))
    checks = sign_properties(disk, Direction(0.2), math.pi / 1.0)  # R w = pi
    assert checks.im_positive is True


def test_sign_resonance_ellipse():
    ell = Ellipse(semi_axes=(1.0, 0.4))
    lam = Direction(0.0)
    w = width(ell, lam)
    checks = sign_properties(ell, lam, 2.0 * math.pi / w)
    assert checks.re_negative_at_resonance is True
    assert checks.re_value < 0.0


def test_sign_square_resonance_not_applicable():
    # convex but not strictly convex: flagged n/a, integral exactly 0
    checks = sign_properties(UNIT_SQUARE, Direction(0.0), 2.0 * math.pi)
    assert checks.re_negative_at_resonance is None
    assert abs(complex(checks.re_value, checks.im_value)) <= 1e-10


def test_sign_fast_oscillation_not_applicable():
    checks = sign_properties(UNIT_SQUARE, Direction(0.0), 100.0)
    assert checks.im_positive is None


def test_sign_randomized_low_band():
    rng = np.random.default_rng(53)
    for _ in range(25):
        dom = rand_strictly_convex(rng)
        lam = rand_direction(rng)
        w = width(dom, lam)
        rate = rng.uniform(0.05, 1.0) * math.pi / w
        checks = sign_properties(dom, lam, rate)
        assert checks.im_positive is True


def test_sign_randomized_resonance():
    rng = np.random.default_rng(59)
    for dom in (Ellipse(semi_axes=(1.0, 0.4)), ReuleauxPolygon(3, width=1.0), rand_support_body(rng)):
        lam = rand_direction(rng)
        w = width(dom, lam)
        for m in (1, 2, 3):
            checks = sign_properties(dom, lam, 2.0 * math.pi * m / w)
            assert checks.re_negative_at_resonance is True


# ---------------------------------------------------------------------------
# the non-scattering identity
# ---------------------------------------------------------------------------


def test_identity_residual_small_randomized():
    rng = np.random.default_rng(61)
    for _ in range(10):
        dom = rand_domain(rng)
        eta = rand_direction(rng)
        choice = rng.integers(0, 3)
        if choice == 0:
            mat = Material(1.0, rng.uniform(1.2, 3.0) ** 2)
            xi = probe_vector_from_direction(rand_direction(rng), eta, mat, 1.0)
        elif choice == 1:
            mat = Material(rng.uniform(0.3, 0.9), rng.uniform(1.1, 2.0))
            xi = complex_direction_from_real(rand_direction(rng))
        else:
            n = rng.uniform(0.3, 0.9)
            mat = Material(1.0, n * n)
            xi = evanescent_test_vector(mat, eta)
        k = rng.uniform(0.3, 6.0)
        assert nonscattering_identity_residual(dom, eta, mat, k, xi) <= 1e-8


def test_identity_square_matched_contrast():
    # a = 1, n = 2: the right side must be -3 k^2 I
    mat = Material(1.0, 4.0)
    eta = Direction(0.0)
    xi = probe_vector_from_direction(Direction(0.8), eta, mat, 2.0)
    rep = plane_wave_integral(UNIT_SQUARE, eta, mat, 2.0, xi)
    assert rep.C_value == pytest.approx(-3.0, abs=1e-13)
    assert nonscattering_identity_residual(UNIT_SQUARE, eta, mat, 2.0, xi) <= 1e-8


def test_identity_evanescent_square():
    mat = Material(1.0, 0.25)
    eta = Direction(0.25)
    xi = evanescent_test_vector(mat, eta)
    rep = plane_wave_integral(UNIT_SQUARE, eta, mat, 1.5, xi)
    assert rep.I_value.real > 0.0
    assert nonscattering_identity_residual(UNIT_SQUARE, eta, mat, 1.5, xi) <= 1e-8


# ---------------------------------------------------------------------------
# exponent vector plumbing
# ---------------------------------------------------------------------------


def test_exponent_vector_matches_rate():
    mat = Material(1.0, 4.0)
    eta, lam = Direction(0.2), Direction(1.4)
    k = 1.3
    xi = probe_vector_from_direction(lam, eta, mat, k)
    kappa = exponent_vector(eta, mat, k, xi)
    assert np.linalg.norm(kappa.imag) <= 1e-12 * np.linalg.norm(kappa)
    from scatcert.certificates import oscillation_rate

    rate = oscillation_rate(lam, eta, mat.n, k)
    assert np.linalg.norm(kappa.real - rate * lam.vector) <= 1e-10 * rate
