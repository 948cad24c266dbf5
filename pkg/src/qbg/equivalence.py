"""Mapping between the deformation parameters (q, beta) and multiplier vectors.

Expanding ``log([1-(1-q)*beta*E]**(1/(1-q)))`` as a series in E gives the
exponential-polynomial form with

    beta_n = (1-q)**(n-1) * beta**n / n,

exact term by term inside the domain ``max_i |(1-q)*beta*E_i| < 1`` where the
logarithm series converges.  The quadratic special case truncates at n = 2 and
matches the delta-corrected Boltzmann factor with q = 1 - 2*delta.

The parameter mappings below use plain Python arithmetic, so exact numeric
types (e.g. ``fractions.Fraction``) pass through unchanged; this lets the
closed-form identities be checked with zero tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import OrderTooLarge, OutsideConvergenceDomain, ZeroLeadingMultiplier
from .extbg import MAX_ORDER, MultiplierVector, ext_distribution
from .qstat import QParams, q_distribution
from .spectrum import EnergySpectrum

#: Predicted coefficients smaller than this are compared absolutely
#: (tolerance 1e-12) instead of relatively in the inverse mapping.
_ABS_FALLBACK_FLOOR = 1e-300
_ABS_FALLBACK_TOL = 1e-12


@dataclass(frozen=True)
class EquivalenceReport:
    """Sup-norm distances between truncated exponential-polynomial
    distributions and the exact q-distribution, per truncation order."""

    orders: tuple[int, ...]
    sup_distances: tuple[float, ...]
    domain_ratio: float

    def __post_init__(self):
        if len(self.orders) != len(self.sup_distances):
            raise ValueError("orders and distances must have equal length")
        if any(d < 0 for d in self.sup_distances):
            raise ValueError("distances must be >= 0")
        if self.domain_ratio < 0:
            raise ValueError("domain ratio must be >= 0")


def q_to_multipliers(params: QParams, order: int) -> MultiplierVector:
    """Multipliers beta_n = (1-q)**(n-1) * beta**n / n for n = 1..order.

    At q = 1 this is (beta, 0, ..., 0): the series terminates.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    if order > MAX_ORDER:
        raise OrderTooLarge(f"order {order} exceeds the cap of {MAX_ORDER}")
    one_minus_q = 1 - params.q
    beta = params.beta
    coeffs = tuple(
        one_minus_q ** (n - 1) * beta ** n / n for n in range(1, order + 1)
    )
    return MultiplierVector(coeffs)


def multipliers_to_q(m: MultiplierVector, tol: float):
    """Invert the mapping: recover (q, beta) from a multiplier vector.

    The candidate is ``beta = beta_1`` and ``q = 1 - 2*beta_2/beta_1**2``
    (q = 1 when the order is 1 or beta_2 = 0).  It is returned only if every
    remaining beta_n matches ``(1-q)**(n-1) * beta**n / n`` within ``tol``
    relative (absolute 1e-12 for predicted values below 1e-300); otherwise
    None.  A negative beta_1 also yields None, since a nonnegative inverse
    temperature cannot reproduce it.
    """
    b1 = m.coeffs[0]
    if b1 == 0:
        raise ZeroLeadingMultiplier("the first multiplier must be nonzero")
    if b1 < 0:
        return None
    beta = b1
    if m.order >= 2:
        q = 1 - 2 * m.coeffs[1] / (b1 * b1)
    else:
        q = 1.0
    one_minus_q = 1 - q
    for n in range(2, m.order + 1):
        predicted = one_minus_q ** (n - 1) * beta ** n / n
        actual = m.coeffs[n - 1]
        if abs(predicted) < _ABS_FALLBACK_FLOOR:
            if abs(actual - predicted) > _ABS_FALLBACK_TOL:
                return None
        elif abs(actual - predicted) > tol * abs(predicted):
            return None
    return QParams(q, beta)


def clayton_to_q(delta):
    """q = 1 - 2*delta: the deformation index matching the quadratic
    Boltzmann-factor correction."""
    if not math.isfinite(float(delta)):
        raise ValueError(f"delta must be finite, got {delta!r}")
    return 1 - 2 * delta


def convergence_domain_ratio(spectrum: EnergySpectrum, params: QParams) -> float:
    """max_i |(1-q)*beta*E_i|; the expansion converges at every level iff
    this is < 1."""
    e = np.asarray(spectrum.levels)
    return float(np.max(np.abs((1.0 - params.q) * params.beta * e)))


def equivalence_report(
    spectrum: EnergySpectrum, params: QParams, max_order: int
) -> EquivalenceReport:
    """Sup-norm distance to the exact q-distribution for each truncation
    order N = 1..max_order.

    Refuses with :class:`OutsideConvergenceDomain` when the domain ratio is
    >= 1: there the truncated series is not guaranteed to approach the
    q-distribution and the distances would be noise.
    """
    if max_order < 1:
        raise ValueError("max_order must be >= 1")
    if max_order > MAX_ORDER:
        raise OrderTooLarge(f"max_order {max_order} exceeds the cap of {MAX_ORDER}")
    ratio = convergence_domain_ratio(spectrum, params)
    if ratio >= 1.0:
        raise OutsideConvergenceDomain(
            f"domain ratio {ratio} >= 1; the expansion does not converge on this spectrum"
        )
    exact, _ = q_distribution(spectrum, params)
    exact_p = np.asarray(exact.probs)
    orders = []
    distances = []
    for order in range(1, max_order + 1):
        truncated, _ = ext_distribution(spectrum, q_to_multipliers(params, order))
        distances.append(float(np.max(np.abs(np.asarray(truncated.probs) - exact_p))))
        orders.append(order)
    return EquivalenceReport(tuple(orders), tuple(distances), ratio)
