"""Scoring configuration.

All hyperparameters of the scorer live in one frozen dataclass so a run
can be echoed verbatim into reports and manifests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import ConfigError

MODES = ("fused", "sim", "mag", "l1", "l2", "fixed")
SIGMA_OVER = ("abs", "raw")

#: Modes that require a prompt embedding file.
PROMPT_MODES = ("fused", "sim", "fixed")


@dataclass(frozen=True)
class ScoreConfig:
    """Hyperparameters for a scoring run.

    Args:
        lam: Power of the Box-Cox transform applied to the normalized
            magnitude profile.
        alpha: Sensitivity of the adaptive fusion to the discrepancy
            between the two cues.  ``alpha == 0`` freezes the weights at
            their prior values.
        tau: Softmax temperature of the prompt-similarity score.
        epsilon: Stability constant added to the per-image sigma before
            dividing.
        base_sim: Prior-trust logit for the similarity cue.
        base_mag: Prior-trust logit for the magnitude cue.
        mode: Which score lands in the ``q`` column.  ``fused`` blends
            both cues adaptively, ``sim``/``mag`` project onto a single
            cue, ``l1``/``l2`` swap the magnitude cue for a raw norm, and
            ``fixed`` blends with constant weights.
        fixed_w_sim: Similarity weight used by mode ``fixed``.
        fixed_w_mag: Magnitude weight used by mode ``fixed``.
        sigma_over: Whether the per-image sigma is the standard deviation
            of the absolute values (``abs``, default) or of the raw
            signed values (``raw``).
    """

    lam: float = 0.5
    alpha: float = 1.0
    tau: float = 0.01
    epsilon: float = 1e-8
    base_sim: float = 1.0
    base_mag: float = 0.6
    mode: str = "fused"
    fixed_w_sim: float = 0.5
    fixed_w_mag: float = 0.5
    sigma_over: str = "abs"

    def validate(self) -> "ScoreConfig":
        """Raise :class:`ConfigError` on any out-of-range field."""
        for name in ("lam", "alpha", "tau", "epsilon", "base_sim", "base_mag"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ConfigError(f"{name} must be finite, got {value!r}")
        if self.tau <= 0:
            raise ConfigError(f"tau must be positive, got {self.tau!r}")
        if self.epsilon <= 0:
            raise ConfigError(f"epsilon must be positive, got {self.epsilon!r}")
        if self.alpha < 0:
            raise ConfigError(f"alpha must be nonnegative, got {self.alpha!r}")
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.sigma_over not in SIGMA_OVER:
            raise ConfigError(
                f"sigma_over must be one of {SIGMA_OVER}, got {self.sigma_over!r}"
            )
        if self.mode == "fixed":
            if self.fixed_w_sim < 0 or self.fixed_w_mag < 0:
                raise ConfigError("fixed weights must be nonnegative")
            if abs(self.fixed_w_sim + self.fixed_w_mag - 1.0) > 1e-9:
                raise ConfigError(
                    "fixed weights must sum to 1, got "
                    f"{self.fixed_w_sim!r} + {self.fixed_w_mag!r}"
                )
        return self

    def with_lam(self, lam: float) -> "ScoreConfig":
        return replace(self, lam=lam)

    def needs_prompts(self) -> bool:
        return self.mode in PROMPT_MODES

    def as_dict(self) -> dict:
        """Echo the configuration with stable, serialization-friendly keys."""
        return {
            "lambda": self.lam,
            "alpha": self.alpha,
            "tau": self.tau,
            "epsilon": self.epsilon,
            "base_sim": self.base_sim,
            "base_mag": self.base_mag,
            "mode": self.mode,
            "fixed_w_sim": self.fixed_w_sim,
            "fixed_w_mag": self.fixed_w_mag,
            "sigma_over": self.sigma_over,
        }
