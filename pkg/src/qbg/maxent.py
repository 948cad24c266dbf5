"""Recover multipliers from prescribed raw moments by entropy maximization.

On a finite spectrum the entropy maximizer under raw-moment constraints
``<E**n> = mu_n`` is the exponential-polynomial distribution, and the
multipliers are the unique minimizer of the strictly convex dual

    F(b) = log Z(b) + sum_n b_n * mu_n^target.

Since ``d log Z / d b_n = -mu_n(b)``, the gradient of F is
``mu_target - mu(b)`` and its Hessian is the monomial covariance matrix
``Cov(E**j, E**k)``.  :func:`dual_gradient` returns the moment residual
``mu(b) - mu_target`` (the negative gradient of F, zero exactly at the
solution) and :func:`dual_hessian` returns the covariance matrix.

:func:`solve_multipliers` runs damped Newton on F: energies are first
rescaled into [-1, 1] (raw monomials on wide spectra make the Hessian
numerically singular), the step solves ``(H + ridge*I) d = residual`` with a
ridge added only when the Cholesky factorization fails, and an Armijo
backtracking line search keeps F non-increasing.  Recovered multipliers are
mapped back by ``b_n -> b_n / s**n``.  Every call is deterministic and holds
no global state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import (
    InfeasibleTargets,
    NotConverged,
    OrderMismatch,
    OrderTooLarge,
    TooFewLevels,
)
from .extbg import (
    MAX_ORDER,
    MomentVector,
    MultiplierVector,
    ext_distribution,
    raw_moments,
)
from .spectrum import EnergySpectrum, rescale

_MAX_RIDGE = 1e-6
_MIN_STEP = 1e-16


@dataclass(frozen=True)
class SolverOptions:
    """Damped-Newton settings; tol applies to the moment-residual sup norm
    of the internally rescaled problem."""

    tol: float = 1e-10
    max_iter: int = 200
    ridge: float = 1e-12
    armijo_c: float = 1e-4
    backtrack_factor: float = 0.5

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be > 0")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")
        if self.ridge < 0:
            raise ValueError("ridge must be >= 0")
        if not 0 < self.armijo_c < 1:
            raise ValueError("armijo_c must be in (0, 1)")
        if not 0 < self.backtrack_factor < 1:
            raise ValueError("backtrack_factor must be in (0, 1)")


@dataclass(frozen=True)
class SolverReport:
    converged: bool
    iterations: int
    residual_norm: float
    final_step_size: float
    rescale_factor: float


def dual_gradient(
    spectrum: EnergySpectrum, m: MultiplierVector, targets: MomentVector
) -> np.ndarray:
    """Moment residual ``mu_n(b) - mu_n^target`` (negative gradient of F)."""
    if targets.order != m.order:
        raise OrderMismatch(
            f"multiplier order {m.order} but target order {targets.order}"
        )
    dist, _ = ext_distribution(spectrum, m)
    mu = raw_moments(dist, spectrum, m.order)
    return np.asarray(mu.values) - np.asarray(targets.values)


def dual_hessian(
    spectrum: EnergySpectrum, m: MultiplierVector, order: int
) -> np.ndarray:
    """Covariance matrix ``Cov(E**j, E**k)`` under the current distribution;
    symmetric positive semidefinite, equals the Hessian of F."""
    if order != m.order:
        raise OrderMismatch(f"multiplier order {m.order} but requested {order}")
    dist, _ = ext_distribution(spectrum, m)
    p = np.asarray(dist.probs)
    e = np.asarray(spectrum.levels)
    pw = e[:, None] ** np.arange(1, order + 1)[None, :]
    mu = p @ pw
    second = pw.T @ (p[:, None] * pw)
    return second - np.outer(mu, mu)


def _moments_of(p: np.ndarray, pw: np.ndarray) -> np.ndarray:
    return p @ pw


def _newton_direction(h: np.ndarray, residual: np.ndarray, ridge_floor: float):
    """Solve (H + ridge*I) d = residual; ridge only on factorization failure,
    escalated x10 up to 1e-6."""
    n = h.shape[0]
    ridge = 0.0
    while True:
        try:
            factor = scipy.linalg.cho_factor(
                h + ridge * np.eye(n) if ridge > 0 else h, lower=True
            )
            return scipy.linalg.cho_solve(factor, residual)
        except (np.linalg.LinAlgError, scipy.linalg.LinAlgError):
            ridge = ridge_floor if ridge == 0 else ridge * 10
            if ridge > _MAX_RIDGE or ridge == 0:
                return None


def solve_multipliers(
    spectrum: EnergySpectrum,
    targets: MomentVector,
    opts: SolverOptions | None = None,
) -> tuple[MultiplierVector, SolverReport]:
    """Find multipliers whose distribution reproduces the target raw moments.

    Starts from b = 0 (the uniform distribution, always interior) and takes
    damped Newton steps on the dual F until the rescaled moment residual's
    sup norm drops below ``opts.tol``.  Raises :class:`InfeasibleTargets` on
    cheap necessary-condition violations (mu_1 outside [min E, max E] or
    mu_2 < mu_1**2), and :class:`NotConverged` (carrying the best multipliers
    and a report) when the iteration budget or the line search is exhausted,
    which is the honest diagnostic for targets on or outside the boundary of
    the achievable moment set.
    """
    if opts is None:
        opts = SolverOptions()
    n_order = targets.order
    if n_order > MAX_ORDER:
        raise OrderTooLarge(f"order {n_order} exceeds the cap of {MAX_ORDER}")
    if len(spectrum) < n_order + 1:
        raise TooFewLevels(
            f"order {n_order} needs at least {n_order + 1} distinct levels, "
            f"spectrum has {len(spectrum)}"
        )
    mu_t = np.asarray(targets.values)
    e_min, e_max = spectrum.levels[0], spectrum.levels[-1]
    if mu_t[0] < e_min or mu_t[0] > e_max:
        raise InfeasibleTargets(
            f"mu_1 = {mu_t[0]} lies outside the level range [{e_min}, {e_max}]"
        )
    if n_order >= 2 and mu_t[1] < mu_t[0] ** 2:
        raise InfeasibleTargets(
            f"mu_2 = {mu_t[1]} < mu_1**2 = {mu_t[0] ** 2}: negative variance"
        )

    scale = max(abs(e_min), abs(e_max))
    scaled = rescale(spectrum, scale)
    powers_of_scale = scale ** np.arange(1, n_order + 1)
    t_scaled = mu_t / powers_of_scale

    x = np.asarray(scaled.levels)
    pw = x[:, None] ** np.arange(1, n_order + 1)[None, :]

    def back_transform(b: np.ndarray) -> MultiplierVector:
        return MultiplierVector(tuple(b / powers_of_scale))

    b = np.zeros(n_order)
    iterations = 0
    final_step = 0.0
    while True:
        dist, log_z = ext_distribution(scaled, MultiplierVector(tuple(b)))
        p = np.asarray(dist.probs)
        mu = _moments_of(p, pw)
        residual = mu - t_scaled
        residual_norm = float(np.max(np.abs(residual)))
        dual_value = log_z + float(b @ t_scaled)

        if residual_norm <= opts.tol:
            report = SolverReport(
                converged=True,
                iterations=iterations,
                residual_norm=residual_norm,
                final_step_size=final_step,
                rescale_factor=scale,
            )
            return back_transform(b), report
        if iterations >= opts.max_iter:
            _fail(back_transform(b), iterations, residual_norm, final_step, scale,
                  "iteration budget exhausted")

        h = pw.T @ (p[:, None] * pw) - np.outer(mu, mu)
        direction = _newton_direction(h, residual, opts.ridge)
        if direction is None:
            _fail(back_transform(b), iterations, residual_norm, final_step, scale,
                  "Hessian factorization failed beyond the ridge cap")
        # F decreases along d: grad F = -residual, so grad.d = -r.H^-1.r < 0
        slope = -float(residual @ direction)
        step = 1.0
        while True:
            trial = b + step * direction
            trial_dist, trial_log_z = ext_distribution(
                scaled, MultiplierVector(tuple(trial))
            )
            trial_dual = trial_log_z + float(trial @ t_scaled)
            if math.isfinite(trial_dual) and trial_dual <= dual_value + opts.armijo_c * step * slope:
                break
            step *= opts.backtrack_factor
            if step < _MIN_STEP:
                _fail(back_transform(b), iterations, residual_norm, final_step, scale,
                      "line search stalled")
        b = trial
        iterations += 1
        final_step = step


def _fail(multipliers, iterations, residual_norm, final_step, scale, why):
    report = SolverReport(
        converged=False,
        iterations=iterations,
        residual_norm=residual_norm,
        final_step_size=final_step,
        rescale_factor=scale,
    )
    raise NotConverged(
        f"{why}; residual sup norm {residual_norm:.3e} after {iterations} iterations",
        multipliers=multipliers,
        report=report,
    )
