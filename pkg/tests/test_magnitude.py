"""Box-Cox magnitude score, raw-norm variants, Wasserstein diagnostic."""

import numpy as np
import pytest

from maclip import ScoreConfig, boxcox, q_mag, q_mag_variant, wasserstein_1d
from maclip.errors import (
    DimensionMismatchError,
    EmptyInputError,
    NonFiniteInputError,
    ValidationError,
)

# Literal evaluation of abs -> std-normalize -> transform -> mean for
# F = [1, -2, 3, -4] at lambda = 0.5, checked against a 50-digit
# arbitrary-precision run of the same arithmetic.
QMAG_GOLDEN = 1.5525570277620833


class TestBoxcox:
    def test_zero_maps_to_zero_for_every_lambda(self):
        for lam in (-1.0, -0.3, 0.0, 0.5, 1.0, 2.0):
            assert boxcox(0.0, lam) == 0.0

    def test_analytic_half_power(self):
        assert boxcox(3.0, 0.5) == pytest.approx(2.0, abs=1e-15)

    def test_log_branch(self):
        assert boxcox(np.e - 1.0, 0.0) == pytest.approx(1.0, abs=1e-15)

    def test_identity_branch(self):
        assert boxcox(0.7, 1.0) == pytest.approx(0.7, abs=1e-12)

    def test_continuity_at_zero_lambda(self):
        x = np.concatenate([np.linspace(0.0, 100.0, 401),
                            np.random.default_rng(4).uniform(0, 100, 600)])
        near = boxcox(x, 1e-9)
        exact = np.log1p(x)
        assert np.max(np.abs(near - exact)) < 1e-6

    def test_strictly_increasing(self):
        xs = np.linspace(0.0, 50.0, 300)
        for lam in (-0.5, 0.0, 0.5, 1.0, 2.0):
            values = boxcox(xs, lam)
            assert np.all(np.diff(values) > 0)

    def test_negative_domain_rejected(self):
        with pytest.raises(ValidationError):
            boxcox(-0.1, 0.5)


class TestQMag:
    def test_four_element_golden(self):
        result = q_mag([1.0, -2.0, 3.0, -4.0], ScoreConfig())
        assert result.q_mag == pytest.approx(QMAG_GOLDEN, abs=1e-12)
        assert result.sigma == pytest.approx(np.sqrt(1.25), abs=1e-12)
        assert result.variant == "boxcox"
        assert not result.degenerate

    def test_scale_invariance(self):
        rng = np.random.default_rng(5)
        config = ScoreConfig()
        for _ in range(50):
            row = rng.normal(0.0, 2.0, 64)
            base = q_mag(row, config).q_mag
            for c in (0.1, 0.5, 2.0, 10.0):
                assert abs(q_mag(c * row, config).q_mag - base) < 1e-6

    def test_degenerate_flagged_and_finite(self):
        result = q_mag([2.0, -2.0, 2.0, -2.0], ScoreConfig())
        assert result.degenerate
        assert result.sigma == 0.0
        assert np.isfinite(result.q_mag)
        assert result.q_mag > 1e4

    def test_sigma_over_raw_differs(self):
        row = np.array([1.0, -2.0, 3.0, -4.0])
        over_abs = q_mag(row, ScoreConfig(sigma_over="abs"))
        over_raw = q_mag(row, ScoreConfig(sigma_over="raw"))
        # std of the signed values is larger here, so the normalized
        # profile shrinks and the score drops.
        assert over_raw.sigma > over_abs.sigma
        assert over_raw.q_mag < over_abs.q_mag

    def test_mean_of_transform_monotone_in_single_entry(self):
        rng = np.random.default_rng(6)
        profile = rng.uniform(0.0, 4.0, 32)
        for lam in (0.0, 0.5, 2.0):
            base = float(np.mean(boxcox(profile, lam)))
            bumped = profile.copy()
            bumped[7] += 0.25
            assert float(np.mean(boxcox(bumped, lam))) > base

    def test_empty_rejected(self):
        with pytest.raises(EmptyInputError):
            q_mag([], ScoreConfig())

    def test_non_finite_rejected(self):
        with pytest.raises(NonFiniteInputError):
            q_mag([1.0, np.inf], ScoreConfig())


class TestVariants:
    def test_l2_analytic(self):
        assert q_mag_variant([3.0, -4.0], "l2") == pytest.approx(
            5.0 / np.sqrt(2.0), abs=1e-12
        )

    def test_l1_analytic(self):
        assert q_mag_variant([1.0, -1.0, 1.0, -1.0], "l1") == 1.0

    def test_zero_vector(self):
        assert q_mag_variant(np.zeros(8), "l1") == 0.0
        assert q_mag_variant(np.zeros(8), "l2") == 0.0

    def test_scale_covariance(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            row = rng.normal(size=16)
            for variant in ("l1", "l2"):
                assert q_mag_variant(2.0 * row, variant) == pytest.approx(
                    2.0 * q_mag_variant(row, variant), rel=1e-15
                )

    def test_unknown_variant(self):
        with pytest.raises(ValidationError):
            q_mag_variant([1.0], "linf")


class TestWasserstein:
    def test_identity(self):
        assert wasserstein_1d([1.0, 2.0, 3.0], [3.0, 1.0, 2.0]) == 0.0

    def test_uniform_shift(self):
        assert wasserstein_1d([0.0, 0.0], [1.0, 1.0]) == 1.0

    def test_sorted_difference_golden(self):
        assert wasserstein_1d([0.0, 1.0], [1.0, 3.0]) == 1.5

    def test_symmetry(self):
        rng = np.random.default_rng(8)
        a, b = rng.normal(size=20), rng.normal(size=20)
        assert wasserstein_1d(a, b) == wasserstein_1d(b, a)

    def test_zero_iff_equal_multisets(self):
        rng = np.random.default_rng(9)
        a = rng.normal(size=15)
        shuffled = rng.permutation(a)
        assert wasserstein_1d(a, shuffled) == 0.0
        assert wasserstein_1d(a, a + 1e-6) > 0.0

    def test_length_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            wasserstein_1d([1.0], [1.0, 2.0])
