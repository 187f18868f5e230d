"""Exact one-dimensional models: the infinite slab and the radial disk wave.

The slab of thickness w (material a = 1, q = n^2) hit at normal incidence
by exp(-i k x) is the one setting with a complete non-scattering
characterization: it is non-scattering exactly on a lattice of (k w, n)
pairs.  The detector below tests the residual pair

    |sin(k n w)|  and  |exp(-i k w) - cos(k n w)|

(which is the authoritative criterion) and reports the matching integer
pair as a diagnosis.  An independent transfer-matrix oracle computes the
actual scattered amplitudes on both sides of the slab.

The disk analogue replaces the plane wave by the radial wave J0(k|x|);
non-scattering reduces to a scalar Bessel condition in k.
"""

import cmath
import math
from dataclasses import dataclass
from typing import Optional

from .bessel import bessel_j
from .certificates import Material
from .errors import ParameterError, RegimeError

LATTICE_TOL = 1e-9


@dataclass(frozen=True)
class SlabModel:
    """Slab of thickness w with matched principal part (a = 1)."""

    thickness: float
    material: Material
    k: float

    def __post_init__(self):
        if self.material.a != 1.0:
            raise RegimeError(f"slab model requires a = 1, got a = {self.material.a}")
        if self.material.n == 1.0:
            raise RegimeError("slab model requires n != 1 (no contrast otherwise)")
        if not self.thickness > 0.0:
            raise ParameterError(f"thickness must be positive, got {self.thickness}")
        if not self.k > 0.0:
            raise ParameterError(f"wave number must be positive, got {self.k}")


@dataclass(frozen=True)
class SlabSolution:
    """Interior correction u = -exp(-ikx) + c1 sin(knx) + c2 cos(knx)."""

    c1: complex
    c2: complex
    residuals: tuple  # (|sin(knw)|, |exp(-ikw) - cos(knw)|)

    def evaluate(self, model: SlabModel, x):
        k, n = model.k, model.material.n
        return -cmath.exp(-1j * k * x) + self.c1 * cmath.sin(k * n * x) + self.c2 * cmath.cos(k * n * x)


@dataclass(frozen=True)
class SlabReport:
    nonscattering: bool
    matched_case: str  # "even" | "odd" | "none"
    m: Optional[int]
    l: Optional[int]
    residuals: tuple

    def to_dict(self):
        return {
            "nonscattering": self.nonscattering,
            "matched_case": self.matched_case,
            "m": self.m,
            "l": self.l,
            "residuals": list(self.residuals),
        }


def interior_correction(model: SlabModel) -> SlabSolution:
    """The interior correction forced by u(0) = u'(0) = 0: c2 = 1, c1 = -i/n."""
    k, n, w = model.k, model.material.n, model.thickness
    r1 = abs(math.sin(k * n * w))
    r2 = abs(cmath.exp(-1j * k * w) - math.cos(k * n * w))
    return SlabSolution(c1=-1j / n, c2=1.0 + 0.0j, residuals=(r1, r2))


def _match_lattice(kw: float, n: float):
    """Integer diagnosis of the non-scattering lattice, tolerance 1e-9."""
    # even family: kw = 2 pi m, n = l/m, m >= 1, l >= 1, l != m
    m = round(kw / (2.0 * math.pi))
    if m >= 1 and abs(kw - 2.0 * math.pi * m) <= LATTICE_TOL:
        l = round(n * m)
        if l >= 1 and l != m and abs(n - l / m) <= LATTICE_TOL:
            return "even", m, l
    # odd family: kw = pi + 2 pi m, n = (1 + 2l)/(1 + 2m), m >= 0, l >= 0, l != m
    m = round((kw - math.pi) / (2.0 * math.pi))
    if m >= 0 and abs(kw - math.pi - 2.0 * math.pi * m) <= LATTICE_TOL:
        l = round((n * (1 + 2 * m) - 1) / 2.0)
        if l >= 0 and l != m and abs(n - (1 + 2 * l) / (1 + 2 * m)) <= LATTICE_TOL:
            return "odd", m, l
    return "none", None, None


def slab_nonscattering(model: SlabModel) -> SlabReport:
    """Decide non-scattering from the residual pair; diagnose the lattice."""
    sol = interior_correction(model)
    r1, r2 = sol.residuals
    case, m, l = _match_lattice(model.k * model.thickness, model.material.n)
    return SlabReport(
        nonscattering=bool(r1 <= LATTICE_TOL and r2 <= LATTICE_TOL),
        matched_case=case,
        m=m,
        l=l,
        residuals=(r1, r2),
    )


def slab_reflection(model: SlabModel) -> complex:
    """Scattered amplitude from exact 2x2 interface matching.

    The incident wave exp(-ikx) arrives from x = +infinity; the scattered
    field is r exp(+ikx) on the incidence side and s exp(-ikx) beyond the
    slab.  Both must vanish for non-scattering; the larger-magnitude
    amplitude is returned (a Fabry-Perot resonance has r = 0 but s != 0
    and does scatter).
    """
    k, n, w = model.k, model.material.n, model.thickness
    e_plus = cmath.exp(1j * k * n * w)
    e_minus = cmath.exp(-1j * k * n * w)
    big_e_plus = cmath.exp(1j * k * w)
    big_e_minus = cmath.exp(-1j * k * w)
    denom = big_e_plus * ((n + 1.0) ** 2 * e_minus - (n - 1.0) ** 2 * e_plus)
    r = (n * n - 1.0) * big_e_minus * (e_plus - e_minus) / denom
    s = cmath.exp(1j * (k * n * w - k * w)) * ((n + 1.0) + (n - 1.0) * r * cmath.exp(2j * k * w)) / (
        n + 1.0
    ) - 1.0
    return r if abs(r) >= abs(s) else s


def disk_herglotz_residual(radius: float, material: Material, k: float) -> float:
    """J0'(kw) J0(knw) - n J0(kw) J0'(knw), the disk non-scattering condition.

    Zero exactly at the wave numbers where the radial wave J0(k|x|) passes
    through the disk of radius w without scattering (a = 1 required).
    """
    if material.a != 1.0:
        raise RegimeError(f"disk model requires a = 1, got a = {material.a}")
    n = material.n
    if n == 1.0:
        raise RegimeError("disk model requires n != 1")
    if not (radius > 0.0 and k > 0.0):
        raise ParameterError("radius and wave number must be positive")
    kw, knw = k * radius, k * n * radius
    return -bessel_j(1, kw) * bessel_j(0, knw) + n * bessel_j(0, kw) * bessel_j(1, knw)


def disk_herglotz_roots(radius: float, material: Material, k_max: float) -> list:
    """All zeros of the disk residual in (0, k_max], by bracketing + bisection."""
    if k_max <= 0.0:
        raise ParameterError(f"k_max must be positive, got {k_max}")
    n = material.n
    step = min(math.pi / (10.0 * n * radius), math.pi / (10.0 * radius))
    roots = []
    k_prev = step
    f_prev = disk_herglotz_residual(radius, material, k_prev)
    k_cur = k_prev
    while k_cur < k_max:
        k_cur = min(k_cur + step, k_max)
        f_cur = disk_herglotz_residual(radius, material, k_cur)
        if f_prev == 0.0:
            roots.append(k_prev)
        elif f_prev * f_cur < 0.0:
            lo, hi = k_prev, k_cur
            f_lo = f_prev
            for _ in range(200):
                mid = 0.5 * (lo + hi)
                f_mid = disk_herglotz_residual(radius, material, mid)
                if f_mid == 0.0:
                    lo = hi = mid
                    break
                if f_lo * f_mid < 0.0:
                    hi = mid
                else:
                    lo, f_lo = mid, f_mid
                if hi - lo <= 1e-12:
                    break
            roots.append(0.5 * (lo + hi))
        k_prev, f_prev = k_cur, f_cur
    if f_prev == 0.0 and (not roots or roots[-1] != k_prev):
        roots.append(k_prev)
    return roots
