"""Finite discrete energy spectra and degeneracy-weighted sums.

A spectrum is a strictly increasing list of energy levels E_i with positive
integer degeneracies g_i.  A trace of a per-level quantity f is the weighted
sum ``sum_i g_i * f_i``.  Probabilities are stored per level with the
degeneracy already folded in, so ``P_i`` is the total probability of level i.

All values are immutable after construction and all operations are pure
functions, so everything here is safe for unrestricted concurrent use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    EmptySpectrum,
    LengthMismatch,
    NonPositiveDegeneracy,
    NonPositiveScale,
    ParseError,
    UnsortedLevels,
)

#: Tolerance on |sum(P) - 1| accepted by Distribution.
NORMALIZATION_TOL = 1e-12


@dataclass(frozen=True)
class EnergySpectrum:
    """Energy levels (strictly increasing, finite) with degeneracies >= 1."""

    levels: tuple[float, ...]
    degeneracies: tuple[int, ...]

    def __post_init__(self):
        levels = tuple(float(e) for e in self.levels)
        if len(levels) == 0:
            raise EmptySpectrum("spectrum has no levels")
        if any(not math.isfinite(e) for e in levels):
            raise ValueError("levels must be finite")
        if any(b <= a for a, b in zip(levels, levels[1:])):
            raise UnsortedLevels("levels must be strictly increasing")
        degs = []
        for g in self.degeneracies:
            if g != int(g):
                raise NonPositiveDegeneracy(f"degeneracy {g!r} is not an integer")
            degs.append(int(g))
        if len(degs) != len(levels):
            raise LengthMismatch(
                f"{len(levels)} levels but {len(degs)} degeneracies"
            )
        if any(g < 1 for g in degs):
            raise NonPositiveDegeneracy("every degeneracy must be >= 1")
        object.__setattr__(self, "levels", levels)
        object.__setattr__(self, "degeneracies", tuple(degs))

    def __len__(self) -> int:
        return len(self.levels)

    @property
    def state_count(self) -> int:
        """Total number of states, sum of degeneracies."""
        return sum(self.degeneracies)


@dataclass(frozen=True)
class Distribution:
    """Per-level probabilities; degeneracy is folded into each entry."""

    probs: tuple[float, ...]

    def __post_init__(self):
        probs = tuple(float(p) for p in self.probs)
        if len(probs) == 0:
            raise ValueError("distribution has no entries")
        if any(p < 0 or not math.isfinite(p) for p in probs):
            raise ValueError("probabilities must be finite and >= 0")
        total = math.fsum(probs)
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise ValueError(f"probabilities sum to {total!r}, not 1")
        object.__setattr__(self, "probs", probs)

    def __len__(self) -> int:
        return len(self.probs)


def make_spectrum(levels, degeneracies) -> EnergySpectrum:
    """Validate and build a spectrum from level energies and degeneracies."""
    return EnergySpectrum(tuple(levels), tuple(degeneracies))


def trace_of(spectrum: EnergySpectrum, per_level_values) -> float:
    """Degeneracy-weighted sum ``sum_i g_i * value_i``."""
    values = tuple(float(v) for v in per_level_values)
    if len(values) != len(spectrum):
        raise LengthMismatch(
            f"{len(spectrum)} levels but {len(values)} values"
        )
    return math.fsum(g * v for g, v in zip(spectrum.degeneracies, values))


def rescale(spectrum: EnergySpectrum, scale: float) -> EnergySpectrum:
    """Divide every level by ``scale`` (> 0); degeneracies are unchanged."""
    scale = float(scale)
    if not scale > 0 or not math.isfinite(scale):
        raise NonPositiveScale(f"scale must be positive and finite, got {scale!r}")
    return EnergySpectrum(
        tuple(e / scale for e in spectrum.levels), spectrum.degeneracies
    )


def load_spectrum(path) -> EnergySpectrum:
    """Read a spectrum file: one ``energy,degeneracy`` pair per line.

    Lines starting with ``#`` and blank lines are ignored.  Energies are
    decimal literals, degeneracies positive integers.
    """
    levels: list[float] = []
    degs: list[int] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split(",")
            if len(parts) != 2:
                raise ParseError(path, lineno, f"expected 'energy,degeneracy', got {line!r}")
            try:
                energy = float(parts[0])
            except ValueError:
                raise ParseError(path, lineno, f"bad energy {parts[0]!r}") from None
            if not math.isfinite(energy):
                raise ParseError(path, lineno, f"energy {parts[0]!r} is not finite")
            try:
                deg = int(parts[1])
            except ValueError:
                raise ParseError(path, lineno, f"bad degeneracy {parts[1]!r}") from None
            levels.append(energy)
            degs.append(deg)
    return make_spectrum(levels, degs)
