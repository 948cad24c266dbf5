"""Exception types raised across the library.

Every domain error has its own class so callers (and the CLI) can report
failures by name.  All inherit from :class:`QbgError`.
"""

from __future__ import annotations


class QbgError(Exception):
    """Base class for all library errors."""


class EmptySpectrum(QbgError):
    """A spectrum needs at least one energy level."""


class UnsortedLevels(QbgError):
    """Energy levels must be strictly increasing."""


class NonPositiveDegeneracy(QbgError):
    """Every degeneracy must be an integer >= 1."""


class LengthMismatch(QbgError):
    """Per-level sequences must match the number of levels."""


class NonPositiveScale(QbgError):
    """Rescaling requires a strictly positive scale."""


class AllLevelsCutOff(QbgError):
    """Every level has zero weight; the parameters are incompatible with the spectrum."""


class NonFiniteExponent(QbgError):
    """Some multiplier/energy-power product is not finite."""


class OrderTooLarge(QbgError):
    """Truncation order exceeds the supported cap."""


class ZeroLeadingMultiplier(QbgError):
    """The inverse mapping needs a nonzero first multiplier."""


class OutsideConvergenceDomain(QbgError):
    """max |(1-q)*beta*E| >= 1; the truncated expansion is not guaranteed to converge."""


class OrderMismatch(QbgError):
    """Multiplier and moment orders must agree."""


class TooFewLevels(QbgError):
    """Moment matching of order N needs at least N+1 distinct levels."""


class InfeasibleTargets(QbgError):
    """Target moments fail a cheap necessary feasibility condition."""


class NotConverged(QbgError):
    """The dual solver stopped without meeting the residual tolerance.

    Carries the best multipliers found (``multipliers``) and the final
    ``report`` so callers can inspect the residual.
    """

    def __init__(self, message, multipliers=None, report=None):
        super().__init__(message)
        self.multipliers = multipliers
        self.report = report


class ParseError(QbgError):
    """An input file could not be parsed; carries path and line number."""

    def __init__(self, path, line_number, message):
        super().__init__(f"{path}:{line_number}: {message}")
        self.path = path
        self.line_number = line_number
