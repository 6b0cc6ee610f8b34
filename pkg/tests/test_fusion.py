"""Adaptive and fixed-weight fusion."""

import math

import numpy as np
import pytest

from maclip import ScoreConfig, fuse, fuse_fixed
from maclip.errors import NonFiniteInputError, SimplexError

# logistic(0.4) and logistic(1.2) from a high-precision evaluation.
W_SIM_DELTA0 = 0.598687660112452
W_SIM_DELTA04 = 0.768524783499018


class TestFuse:
    def test_equal_cues_pass_through(self):
        for alpha in (0.0, 0.5, 1.0, 7.0):
            for v in (0.0, 0.3, 1.7):
                _, q = fuse(v, v, ScoreConfig(alpha=alpha))
                assert q == pytest.approx(v, abs=1e-12)

    def test_zero_delta_weights(self):
        weights, _ = fuse(0.5, 0.5, ScoreConfig())
        assert weights.w_sim == pytest.approx(W_SIM_DELTA0, abs=1e-8)
        assert weights.w_mag == pytest.approx(1.0 - W_SIM_DELTA0, abs=1e-8)
        assert weights.delta == 0.0

    def test_delta_04_weights(self):
        weights, _ = fuse(0.9, 0.5, ScoreConfig())
        assert weights.delta == pytest.approx(0.4, abs=1e-15)
        assert weights.w_sim == pytest.approx(W_SIM_DELTA04, abs=1e-8)

    def test_alpha_zero_freezes_weights(self):
        rng = np.random.default_rng(10)
        config = ScoreConfig(alpha=0.0)
        for _ in range(100):
            qs, qm = rng.uniform(-5, 5, 2)
            weights, q = fuse(float(qs), float(qm), config)
            assert weights.w_sim == pytest.approx(W_SIM_DELTA0, abs=1e-8)
            assert q == pytest.approx(
                W_SIM_DELTA0 * qs + (1.0 - W_SIM_DELTA0) * qm, abs=1e-9
            )

    def test_simplex_everywhere(self):
        rng = np.random.default_rng(11)
        for _ in range(500):
            qs, qm = rng.uniform(-100, 100, 2)
            alpha = float(rng.uniform(0, 10))
            weights, _ = fuse(float(qs), float(qm), ScoreConfig(alpha=alpha))
            assert 0.0 < weights.w_sim < 1.0
            assert 0.0 < weights.w_mag < 1.0
            assert weights.w_sim + weights.w_mag == pytest.approx(1.0, abs=1e-12)

    def test_monotone_in_delta(self):
        config = ScoreConfig()
        deltas = np.linspace(-3.0, 3.0, 61)
        w = [fuse(0.0 + d, 0.0, config)[0].w_sim for d in deltas]
        assert all(a < b for a, b in zip(w, w[1:]))

    def test_bounded_between_cues(self):
        rng = np.random.default_rng(12)
        for _ in range(300):
            qs, qm = rng.uniform(-10, 10, 2)
            _, q = fuse(float(qs), float(qm), ScoreConfig())
            lo, hi = min(qs, qm), max(qs, qm)
            assert lo - 1e-12 <= q <= hi + 1e-12

    def test_saturation_stays_finite(self):
        weights, q = fuse(1e4, 0.0, ScoreConfig(alpha=1.0))
        assert math.isfinite(q)
        assert 0.0 < weights.w_sim < 1.0
        weights, q = fuse(-1e4, 0.0, ScoreConfig(alpha=1.0))
        assert math.isfinite(q)
        assert 0.0 < weights.w_sim < 1.0

    def test_non_finite_rejected(self):
        with pytest.raises(NonFiniteInputError):
            fuse(float("nan"), 0.5, ScoreConfig())


class TestFuseFixed:
    def test_projection(self):
        assert fuse_fixed(0.42, 9.0, 1.0, 0.0) == 0.42

    def test_midpoint(self):
        assert fuse_fixed(0.8, 0.2, 0.5, 0.5) == 0.5

    def test_analytic(self):
        assert fuse_fixed(1.0, 0.0, 0.8, 0.2) == pytest.approx(0.8, abs=1e-15)

    def test_simplex_violations(self):
        with pytest.raises(SimplexError):
            fuse_fixed(0.5, 0.5, 0.7, 0.7)
        with pytest.raises(SimplexError):
            fuse_fixed(0.5, 0.5, -0.1, 1.1)
