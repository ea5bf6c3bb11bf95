"""Exception types shared across the package."""


class CurveSymError(Exception):
    """Base class for all package errors."""


class DegenerateCurveError(CurveSymError):
    """The curve is a line, a circle or planar; the detector refuses it."""

    def __init__(self, kind: str, reason: str):
        super().__init__(f"{kind}: {reason}")
        self.kind = kind
        self.reason = reason


class DenominatorVanishes(CurveSymError, ZeroDivisionError):
    """A rational function in xi has a pole at the chosen algebraic number."""


class InconsistentSymmetry(CurveSymError):
    """An isometry failed exact verification; indicates an internal bug."""


class CurveParseError(CurveSymError, ValueError):
    """Malformed curve input."""
