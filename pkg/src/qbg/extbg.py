"""Moment-constrained exponential distributions P(E) = Z**-1 exp(-sum_n beta_n E**n).

The multiplier vector (beta_1, ..., beta_N) parameterizes the distribution;
the zeroth multiplier is fixed by normalization and appears only as log Z.
Multipliers can equivalently be expressed around a reference energy,
``sum_n bt_n (E - Eb)**n``; the two parameterizations are related by the
binomial change of basis implemented in :func:`center_multipliers` and
:func:`uncenter_multipliers`.  Those transforms are evaluated in exact
rational arithmetic (binomials stay integers), so the returned coefficients
are correctly rounded.

All exponent arithmetic runs in log space with a max shift, so spectra with
exponents up to ~1e4 in magnitude do not overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.special import logsumexp

from .errors import LengthMismatch, NonFiniteExponent, OrderTooLarge, ParseError
from .spectrum import Distribution, EnergySpectrum

#: Largest supported multiplier/moment order; binomial transforms use exact
#: integer arithmetic and refuse beyond this.
MAX_ORDER = 20


def _as_number(x):
    # normalize numpy scalars to float; keep exact types (int, Fraction) as-is
    if isinstance(x, (np.floating, np.integer)):
        return float(x)
    return x


def _check_finite(values, what):
    for v in values:
        if not math.isfinite(float(v)):
            raise ValueError(f"{what} must be finite, got {v!r}")


@dataclass(frozen=True)
class MultiplierVector:
    """Multipliers (beta_1, ..., beta_N), beta_n in units of energy**-n."""

    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(_as_number(c) for c in self.coeffs)
        if len(coeffs) < 1:
            raise ValueError("at least one multiplier is required")
        _check_finite(coeffs, "multipliers")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs)


@dataclass(frozen=True)
class CenteredMultiplierVector:
    """Multipliers for powers of (E - center)."""

    coeffs: tuple
    center: float

    def __post_init__(self):
        coeffs = tuple(_as_number(c) for c in self.coeffs)
        if len(coeffs) < 1:
            raise ValueError("at least one multiplier is required")
        _check_finite(coeffs, "multipliers")
        if not math.isfinite(float(self.center)):
            raise ValueError(f"center must be finite, got {self.center!r}")
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "center", _as_number(self.center))

    @property
    def order(self) -> int:
        return len(self.coeffs)


@dataclass(frozen=True)
class MomentVector:
    """Raw moments (mu_1, ..., mu_N), mu_n = <E**n> in units of energy**n."""

    values: tuple[float, ...]

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        if len(values) < 1:
            raise ValueError("at least one moment is required")
        _check_finite(values, "moments")
        object.__setattr__(self, "values", values)

    @property
    def order(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class ClaytonParams:
    """Inverse temperature beta and the small quadratic correction delta of
    the modified Boltzmann factor exp(-beta*E - delta*(beta*E)**2)."""

    beta: float
    delta: float

    def __post_init__(self):
        if not float(self.beta) > 0 or not math.isfinite(float(self.beta)):
            raise ValueError(f"beta must be positive and finite, got {self.beta!r}")
        if not math.isfinite(float(self.delta)):
            raise ValueError(f"delta must be finite, got {self.delta!r}")


def _exponents(spectrum: EnergySpectrum, m: MultiplierVector) -> np.ndarray:
    """Per-level exponents s_i = sum_n beta_n * E_i**n."""
    e = np.asarray(spectrum.levels)
    orders = np.arange(1, m.order + 1)
    coeffs = np.asarray([float(c) for c in m.coeffs])
    with np.errstate(over="ignore", invalid="ignore"):
        terms = coeffs[None, :] * e[:, None] ** orders[None, :]
    if not np.all(np.isfinite(terms)):
        raise NonFiniteExponent(
            "some beta_n * E**n is not finite; rescale the spectrum or multipliers"
        )
    return terms.sum(axis=1)


def log_partition(spectrum: EnergySpectrum, m: MultiplierVector) -> float:
    """log of ``sum_i g_i * exp(-sum_n beta_n E_i**n)``, max-shift stable."""
    s = _exponents(spectrum, m)
    log_g = np.log(np.asarray(spectrum.degeneracies, dtype=float))
    return float(logsumexp(log_g - s))


def ext_distribution(
    spectrum: EnergySpectrum, m: MultiplierVector
) -> tuple[Distribution, float]:
    """Distribution ``P_i = g_i * exp(-sum_n beta_n E_i**n - log Z)`` and log Z."""
    s = _exponents(spectrum, m)
    log_g = np.log(np.asarray(spectrum.degeneracies, dtype=float))
    a = log_g - s
    log_z = float(logsumexp(a))
    probs = np.exp(a - log_z)
    return Distribution(tuple(probs)), log_z


def bg_entropy(dist: Distribution) -> float:
    """Gibbs entropy -sum_i P_i log P_i with k = 1 and 0*log(0) = 0."""
    p = np.asarray(dist.probs)
    p = p[p > 0]
    return float(-(p * np.log(p)).sum())


def _power_matrix(spectrum: EnergySpectrum, order: int) -> np.ndarray:
    e = np.asarray(spectrum.levels)
    return e[:, None] ** np.arange(1, order + 1)[None, :]


def raw_moments(
    dist: Distribution, spectrum: EnergySpectrum, order: int
) -> MomentVector:
    """Raw moments mu_n = sum_i P_i * E_i**n for n = 1..order."""
    if len(dist) != len(spectrum):
        raise LengthMismatch(f"{len(spectrum)} levels but {len(dist)} probabilities")
    if order < 1:
        raise ValueError("order must be >= 1")
    p = np.asarray(dist.probs)
    mu = p @ _power_matrix(spectrum, order)
    return MomentVector(tuple(mu))


def central_moments(
    dist: Distribution, spectrum: EnergySpectrum, order: int
) -> MomentVector:
    """Central moments <(E - mu_1)**n> for n = 1..order; the first entry is
    exactly 0 (it is analytically forced)."""
    if len(dist) != len(spectrum):
        raise LengthMismatch(f"{len(spectrum)} levels but {len(dist)} probabilities")
    if order < 1:
        raise ValueError("order must be >= 1")
    p = np.asarray(dist.probs)
    e = np.asarray(spectrum.levels)
    mean = float(p @ e)
    d = e - mean
    values = [float(p @ d ** n) for n in range(1, order + 1)]
    values[0] = 0.0
    return MomentVector(tuple(values))


def _require_order(n: int):
    if n > MAX_ORDER:
        raise OrderTooLarge(f"order {n} exceeds the cap of {MAX_ORDER}")


def center_multipliers(m: MultiplierVector, center) -> CenteredMultiplierVector:
    """Re-express raw multipliers around a reference energy.

    ``bt_n = sum_{k>=n} C(k, n) * beta_k * center**(k-n)``; exact inverse of
    :func:`uncenter_multipliers` at the same center.
    """
    _require_order(m.order)
    n_max = m.order
    coeffs = [Fraction(c) for c in m.coeffs]
    cc = Fraction(center)
    out = []
    for n in range(1, n_max + 1):
        acc = sum(
            math.comb(k, n) * coeffs[k - 1] * cc ** (k - n)
            for k in range(n, n_max + 1)
        )
        out.append(float(acc))
    return CenteredMultiplierVector(tuple(out), float(center))


def uncenter_multipliers(
    c: CenteredMultiplierVector,
) -> tuple[MultiplierVector, float]:
    """Expand centered multipliers back to raw powers of E.

    Returns the raw vector ``beta_k = sum_{n>=k} C(n, k) * bt_n * (-Eb)**(n-k)``
    together with the power-zero term ``sum_n bt_n * (-Eb)**n``; that constant
    shift is absorbed by normalization, so the distribution built from the raw
    vector coincides with the centered form.
    """
    _require_order(c.order)
    n_max = c.order
    coeffs = [Fraction(x) for x in c.coeffs]
    neg_center = -Fraction(c.center)
    out = []
    for k in range(1, n_max + 1):
        acc = sum(
            math.comb(n, k) * coeffs[n - 1] * neg_center ** (n - k)
            for n in range(k, n_max + 1)
        )
        out.append(float(acc))
    shift = float(sum(coeffs[n - 1] * neg_center ** n for n in range(1, n_max + 1)))
    return MultiplierVector(tuple(out)), shift


def clayton_multipliers(p: ClaytonParams) -> MultiplierVector:
    """Order-2 multipliers (beta, delta*beta**2) of the quadratic-corrected
    Boltzmann factor exp(-beta*E - delta*(beta*E)**2)."""
    return MultiplierVector((p.beta, p.delta * p.beta ** 2))


def load_multipliers(path) -> MultiplierVector:
    """Read a multiplier file: one ``n,beta_n`` pair per line, n ascending
    from 1.  Lines starting with ``#`` and blank lines are ignored."""
    coeffs: list[float] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split(",")
            if len(parts) != 2:
                raise ParseError(path, lineno, f"expected 'n,beta_n', got {line!r}")
            try:
                n = int(parts[0])
            except ValueError:
                raise ParseError(path, lineno, f"bad order {parts[0]!r}") from None
            if n != len(coeffs) + 1:
                raise ParseError(
                    path, lineno, f"orders must ascend from 1, got {n} after {len(coeffs)}"
                )
            try:
                value = float(parts[1])
            except ValueError:
                raise ParseError(path, lineno, f"bad multiplier {parts[1]!r}") from None
            if not math.isfinite(value):
                raise ParseError(path, lineno, f"multiplier {parts[1]!r} is not finite")
            coeffs.append(value)
    if not coeffs:
        raise ParseError(path, 0, "no multipliers found")
    return MultiplierVector(tuple(coeffs))
