"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations


class CSPolyError(Exception):
    """Base class for every library error."""

    code = "error"

    def to_json(self) -> dict:
        return {"error": self.code, "message": str(self)}


class MathError(CSPolyError):
    """A mathematical obstruction (CLI exit code 3)."""

    code = "math_error"


class LengthMismatch(CSPolyError, ValueError):
    code = "length_mismatch"


class NegativePart(CSPolyError, ValueError):
    code = "negative_part"


class NotHomogeneous(CSPolyError, ValueError):
    code = "not_homogeneous"


class NotInFatHook(CSPolyError, ValueError):
    code = "not_in_fat_hook"


class CacheCorrupt(CSPolyError):
    code = "cache_corrupt"


class NotDivisible(MathError):
    code = "not_divisible"


class DenominatorVanishes(MathError, ZeroDivisionError):
    code = "denominator_vanishes"


class KappaZero(MathError, ZeroDivisionError):
    code = "kappa_zero"


class DegenerateEigenvalue(MathError):
    code = "degenerate_eigenvalue"

    def __init__(self, m, message: str | None = None):
        self.m = tuple(m)
        super().__init__(message or f"eigenvalue gap vanishes at m={list(self.m)}")


class NotProportional(MathError):
    code = "not_proportional"


class PoleAtPoint(MathError, ZeroDivisionError):
    code = "pole_at_point"


class CutoffExceeded(MathError):
    code = "cutoff_exceeded"
