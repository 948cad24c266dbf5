import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qbg import (
    CUTOFF,
    Distribution,
    QParams,
    escort_energy,
    make_spectrum,
    product_distribution,
    q_distribution,
    q_log_weight,
    tsallis_entropy,
)
from qbg.errors import AllLevelsCutOff, LengthMismatch
from qbg.extbg import bg_entropy

from conftest import distributions, spectra

Q_GRID = (0.5, 0.9, 1.5, 2.0, 3.0)


def boltzmann_probs(spectrum, beta):
    # independent direct evaluation, valid while beta*E stays moderate
    w = [g * math.exp(-beta * e) for e, g in zip(spectrum.levels, spectrum.degeneracies)]
    z = math.fsum(w)
    return [x / z for x in w]


class TestQLogWeight:
    def test_boltzmann_branch_is_exact(self):
        assert q_log_weight(QParams(1.0, 2.0), 3.0) == -6.0

    def test_direct_evaluation_q2(self):
        # weight (1+E)^-1 at E=1 gives log(1/2)
        w = q_log_weight(QParams(2.0, 1.0), 1.0)
        assert w == pytest.approx(-math.log(2), rel=1e-15)

    def test_cutoff_by_sign_of_bracket(self):
        # 1 - 0.5*3 = -0.5 <= 0
        assert q_log_weight(QParams(0.5, 1.0), 3.0) is CUTOFF

    def test_bracket_zero_is_cutoff(self):
        assert q_log_weight(QParams(0.5, 1.0), 2.0) is CUTOFF

    def test_negative_energy_cutoff_for_q_above_one(self):
        assert q_log_weight(QParams(2.0, 1.0), -1.0) is CUTOFF


class TestQDistribution:
    def test_zero_beta_gives_uniform(self):
        s = make_spectrum([0, 1], [1, 1])
        d, _ = q_distribution(s, QParams(1.0, 0.0))
        assert d.probs == (0.5, 0.5)

    def test_q2_two_levels(self):
        # weights (1+E)^-1 = (1, 0.5); Z = 1.5
        s = make_spectrum([0, 1], [1, 1])
        d, log_z = q_distribution(s, QParams(2.0, 1.0))
        assert d.probs[0] == pytest.approx(2 / 3, rel=1e-14)
        assert d.probs[1] == pytest.approx(1 / 3, rel=1e-14)
        assert log_z == pytest.approx(math.log(1.5), rel=1e-14)

    def test_cutoff_levels_get_exact_zero(self):
        # weights (1-E/2)^2 = (1, 0.25, 0, cutoff); Z = 1.25
        s = make_spectrum([0, 1, 2, 3], [1, 1, 1, 1])
        d, log_z = q_distribution(s, QParams(0.5, 1.0))
        assert d.probs[0] == pytest.approx(0.8, rel=1e-14)
        assert d.probs[1] == pytest.approx(0.2, rel=1e-14)
        assert d.probs[2] == 0.0
        assert d.probs[3] == 0.0
        assert log_z == pytest.approx(math.log(1.25), rel=1e-14)

    def test_degeneracy_weighting(self):
        s = make_spectrum([0, 1], [3, 1])
        d, _ = q_distribution(s, QParams(1.0, 0.0))
        assert d.probs == pytest.approx((0.75, 0.25), rel=1e-14)

    def test_all_levels_cut_off(self):
        s = make_spectrum([3, 4], [1, 1])
        with pytest.raises(AllLevelsCutOff):
            q_distribution(s, QParams(0.5, 1.0))

    @given(spectra(min_levels=2), st.sampled_from(Q_GRID),
           st.floats(0.0, 3.0, allow_nan=False))
    def test_normalization(self, s, q, beta):
        try:
            d, _ = q_distribution(s, QParams(q, beta))
        except AllLevelsCutOff:
            return
        assert math.fsum(d.probs) == pytest.approx(1.0, abs=1e-12)

    @given(spectra(min_levels=2, min_energy=0.0, max_energy=5.0),
           st.floats(0.1, 0.95, allow_nan=False), st.floats(0.1, 3.0, allow_nan=False))
    def test_cutoff_is_monotone_in_energy(self, s, q, beta):
        params = QParams(q, beta)
        flags = [q_log_weight(params, e) is CUTOFF for e in s.levels]
        # once a level is cut off, all higher levels are too
        assert flags == sorted(flags)

    def test_boltzmann_limit_close_to_exact(self):
        rng = np.random.default_rng(7)
        for _ in range(10):
            n = rng.integers(2, 10)
            levels = np.sort(rng.uniform(0.0, 10.0, n))
            levels = np.unique(levels)
            s = make_spectrum(levels, [1] * len(levels))
            beta = float(rng.uniform(0.05, 2.0 / max(levels.max(), 1.0)))
            exact = boltzmann_probs(s, beta)
            for q in (1 - 1e-8, 1 + 1e-8):
                d, _ = q_distribution(s, QParams(q, beta))
                assert np.max(np.abs(np.asarray(d.probs) - exact)) <= 1e-6


class TestTsallisEntropy:
    def test_uniform_two_outcomes_q2(self):
        assert tsallis_entropy(Distribution((0.5, 0.5)), 2.0) == pytest.approx(0.5, rel=1e-14)

    def test_point_mass_is_zero_for_any_q(self):
        d = Distribution((1.0, 0.0))
        for q in (0.5, 1.0, 2.0, 3.0):
            assert tsallis_entropy(d, q) == 0.0

    def test_uniform_two_outcomes_q1(self):
        assert tsallis_entropy(Distribution((0.5, 0.5)), 1.0) == pytest.approx(math.log(2), rel=1e-14)

    @given(distributions())
    def test_continuity_at_q_one(self, d):
        s_bg = bg_entropy(d)
        for q in (1 - 1e-6, 1 + 1e-6):
            assert abs(tsallis_entropy(d, q) - s_bg) <= 1e-5

    @settings(max_examples=60)
    @given(distributions(), distributions(), st.sampled_from(Q_GRID))
    def test_pseudo_additivity(self, a, b, q):
        s_a = tsallis_entropy(a, q)
        s_b = tsallis_entropy(b, q)
        s_ab = tsallis_entropy(product_distribution(a, b), q)
        assert s_ab == pytest.approx(s_a + s_b + (1 - q) * s_a * s_b, abs=1e-12)


class TestEscortEnergy:
    def test_ground_point_mass(self):
        s = make_spectrum([0, 1], [1, 1])
        d = Distribution((1.0, 0.0))
        for q in (0.5, 1.0, 2.0):
            assert escort_energy(d, s, q) == 0.0

    def test_uniform_two_levels_q2(self):
        s = make_spectrum([0, 1], [1, 1])
        assert escort_energy(Distribution((0.5, 0.5)), s, 2.0) == pytest.approx(0.25, rel=1e-14)

    @given(spectra(min_levels=2, max_levels=6), distributions(min_size=2, max_size=6))
    def test_q_one_reduces_to_mean(self, s, d):
        if len(d) != len(s):
            return
        mean = math.fsum(p * e for p, e in zip(d.probs, s.levels))
        assert escort_energy(d, s, 1.0) == pytest.approx(mean, rel=1e-12, abs=1e-12)

    def test_degeneracy_factor(self):
        # g=2 level: each of the 2 states carries (P/2)^q, so the level
        # contributes 2*(0.5/2)^2*E = 0.125 at q=2
        s = make_spectrum([0, 1], [1, 2])
        d = Distribution((0.5, 0.5))
        assert escort_energy(d, s, 2.0) == pytest.approx(0.125, rel=1e-14)

    def test_length_mismatch(self):
        s = make_spectrum([0, 1], [1, 1])
        with pytest.raises(LengthMismatch):
            escort_energy(Distribution((1.0,)), s, 2.0)


class TestProductDistribution:
    def test_uniform_times_uniform(self):
        u = Distribution((0.5, 0.5))
        assert product_distribution(u, u).probs == (0.25, 0.25, 0.25, 0.25)

    def test_point_mass_embeds_other_factor(self):
        point = Distribution((1.0, 0.0))
        d = Distribution((0.3, 0.7))
        assert product_distribution(point, d).probs == (0.3, 0.7, 0.0, 0.0)

    def test_direct_multiplication_row_major(self):
        a = Distribution((0.8, 0.2))
        b = Distribution((0.5, 0.5))
        assert product_distribution(a, b).probs == (0.4, 0.4, 0.1, 0.1)
