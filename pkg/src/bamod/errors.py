"""Exception types shared across the package."""


class BamodError(Exception):
    """Base class for every error raised by this package."""


class ContextMismatch(BamodError):
    """Two exponential-rational values live over different derivation contexts."""


class ArityMismatch(BamodError):
    """Bihomogeneous forms with incompatible variable counts or bidegrees."""


class IdentityViolation(BamodError):
    """A defining identity of the spectral data fails.

    Carries the short name of the violated identity and the first monomial
    whose coefficient came out nonzero, so callers can report exactly what
    broke and where.
    """

    def __init__(self, identity, monomial=None, value=None):
        self.identity = identity
        self.monomial = monomial
        self.value = value
        detail = f"identity '{identity}' violated"
        if monomial is not None:
            detail += f" at monomial {monomial}"
        if value is not None:
            detail += f" (coefficient {value})"
        super().__init__(detail)


class GenericityFailure(BamodError):
    """A genericity hypothesis fails; nothing is perturbed automatically."""

    def __init__(self, condition):
        self.condition = condition
        super().__init__(f"genericity condition failed: {condition}")


class PreconditionViolated(BamodError):
    """An operation was called outside its stated precondition."""


class NotInModule(BamodError):
    """The target element is not a differential-operator combination of the basis."""


class OrderTooHigh(BamodError):
    """An operator row exceeds the order budget of the target grade."""


class SizeMismatch(BamodError):
    """Matrix operators of different sizes cannot be combined."""


class VarietyMismatch(BamodError):
    """Operands are attached to different spectral data."""


class NotAdmissible(BamodError):
    """A meromorphic function fails its descent identity."""


class ConfigError(BamodError):
    """Malformed configuration input (file, form string, or option)."""
