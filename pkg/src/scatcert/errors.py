"""Exception types shared across the package."""


class ScatcertError(Exception):
    """Base class for all scatcert errors."""


class GeometryError(ScatcertError):
    """Invalid domain construction or geometric input."""


class RegimeError(ScatcertError):
    """Operation called outside its material regime (e.g. needs n > 1)."""


class MethodError(ScatcertError):
    """Requested evaluation method is not applicable to the inputs."""


class ParameterError(ScatcertError):
    """Numeric parameter outside its admissible range."""
