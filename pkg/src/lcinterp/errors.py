"""Exception types shared across the package."""


class LcinterpError(Exception):
    """Base class for all lcinterp errors."""


class DomainError(LcinterpError):
    """An argument lies outside the domain an operation is defined on."""


class CoprimalityError(DomainError):
    """A degree pair whose entries are not relatively prime."""


class ConsistencyError(LcinterpError):
    """Two constructions that must agree produced different results."""


class DataError(LcinterpError):
    """Input data is unusable (non-finite samples, empty arrays, ...)."""


class QuadratureError(LcinterpError):
    """A quadrature refinement loop failed to meet its tolerance."""


class CapabilityError(LcinterpError):
    """A requested computation exceeds what the implementation supports."""
