"""Shared hypothesis strategies and finite-difference helpers."""

from __future__ import annotations

import numpy as np
from hypothesis import assume
from hypothesis import strategies as st

from qbg import Distribution, make_spectrum


@st.composite
def distributions(draw, min_size=2, max_size=8):
    n = draw(st.integers(min_size, max_size))
    weights = draw(
        st.lists(
            st.floats(1e-3, 1.0, allow_nan=False, allow_infinity=False),
            min_size=n,
            max_size=n,
        )
    )
    total = sum(weights)
    return Distribution(tuple(w / total for w in weights))


@st.composite
def spectra(draw, min_levels=1, max_levels=8, min_energy=-5.0, max_energy=5.0,
            max_degeneracy=4):
    n = draw(st.integers(min_levels, max_levels))
    levels = sorted(
        draw(
            st.lists(
                st.floats(min_energy, max_energy, allow_nan=False, allow_infinity=False),
                min_size=n,
                max_size=n,
                unique=True,
            )
        )
    )
    # keep levels separated so rescaling cannot collapse neighbours
    assume(
        all(
            b - a > 1e-6 * max(1.0, abs(a), abs(b))
            for a, b in zip(levels, levels[1:])
        )
    )
    degs = draw(st.lists(st.integers(1, max_degeneracy), min_size=n, max_size=n))
    return make_spectrum(levels, degs)


def central_difference_gradient(f, x, h):
    """Central-difference gradient of a scalar function at x."""
    x = np.asarray(x, dtype=float)
    grad = np.zeros_like(x)
    for i in range(x.size):
        step = np.zeros_like(x)
        step[i] = h
        grad[i] = (f(x + step) - f(x - step)) / (2 * h)
    return grad


def central_difference_jacobian(f, x, h):
    """Central-difference Jacobian of a vector function at x."""
    x = np.asarray(x, dtype=float)
    f0 = np.asarray(f(x))
    jac = np.zeros((f0.size, x.size))
    for i in range(x.size):
        step = np.zeros_like(x)
        step[i] = h
        jac[:, i] = (np.asarray(f(x + step)) - np.asarray(f(x - step))) / (2 * h)
    return jac
