"""Guaranteed-scattering certificates for planar penetrable obstacles.

Closed-form wave-number bands on which an incident plane wave provably
scatters from a 2-D inhomogeneity with constant material contrast, plus an
independent quadrature engine that re-verifies the underlying oscillatory
integral identities, and exact 1-D slab / radial-disk reference models.
"""

__version__ = "0.1.0"

from .bessel import bessel_j, bessel_zero
from .certificates import (
    Band,
    Certificate,
    ExceptionalDirections,
    HExtrema,
    Material,
    certify,
    exceptional_directions,
    h_extrema,
    high_k_threshold,
    oscillation_factor,
    oscillation_rate,
    probe_vector_from_direction,
)
from .errors import GeometryError, MethodError, ParameterError, RegimeError, ScatcertError
from .geometry import (
    ComplexDirection,
    Direction,
    Ellipse,
    Polygon,
    ReuleauxPolygon,
    SliceProfile,
    SupportBody,
    area,
    chord_length,
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
from .onedim import (
    SlabModel,
    SlabReport,
    SlabSolution,
    disk_herglotz_residual,
    disk_herglotz_roots,
    interior_correction,
    slab_nonscattering,
    slab_reflection,
)
from .oscillatory import (
    OscillatoryIntegralReport,
    SignChecks,
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

__all__ = [
    "__version__",
    "Band",
    "Certificate",
    "ComplexDirection",
    "Direction",
    "Ellipse",
    "ExceptionalDirections",
    "GeometryError",
    "HExtrema",
    "Material",
    "MethodError",
    "OscillatoryIntegralReport",
    "ParameterError",
    "Polygon",
    "RegimeError",
    "ReuleauxPolygon",
    "ScatcertError",
    "SignChecks",
    "SlabModel",
    "SlabReport",
    "SlabSolution",
    "SliceProfile",
    "SupportBody",
    "area",
    "area_integral",
    "bessel_j",
    "bessel_zero",
    "certify",
    "chord_length",
    "chord_lengths",
    "classify_convexity",
    "closed_form_integral",
    "contrast_coefficient",
    "diameter",
    "disk_herglotz_residual",
    "disk_herglotz_roots",
    "domain_from_dict",
    "domain_to_dict",
    "evanescent_test_vector",
    "exceptional_directions",
    "exponent_vector",
    "extremal_widths",
    "h_extrema",
    "high_k_threshold",
    "interior_correction",
    "nonscattering_identity_residual",
    "oscillation_factor",
    "oscillation_rate",
    "plane_wave_integral",
    "probe_vector_from_direction",
    "sign_properties",
    "slab_nonscattering",
    "slab_reflection",
    "slice_oscillatory_integral",
    "slice_profile",
    "width",
    "widths",
]
