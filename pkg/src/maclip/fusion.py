"""Confidence-guided fusion of the similarity and magnitude cues.

The two cues disagree most on images where one of them is unreliable.
The fusion turns the signed discrepancy delta = q_sim - q_mag into a
pair of softmax weights: a positive delta shifts trust toward the
similarity cue, a negative one toward the magnitude cue.  The softmax
over the two trust logits reduces to a single logistic of their gap,
which is exact and never overflows.

Note the two cues live on different scales: q_sim is inside (0, 1)
while q_mag is unbounded above.  They are fused on their native scales,
so the fused score itself is not confined to [0, 1].  Rank metrics are
unaffected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .config import ScoreConfig
from .errors import NonFiniteInputError, SimplexError
from .similarity import stable_logistic

#: Smallest weight the adaptive fusion will assign.  2**-53 is the
#: largest value whose complement 1 - w still rounds strictly below 1
#: in float64, which keeps both weights inside the open interval.
_W_EDGE = 2.0 ** -53


@dataclass(frozen=True)
class FusionWeights:
    """Convex weights for the two cues plus the discrepancy behind them."""

    w_sim: float
    w_mag: float
    delta: float


@dataclass(frozen=True)
class QualityRecord:
    """Everything the scorer knows about one image.

    ``q_sim`` is None when the run had no prompt embeddings (magnitude
    and raw-norm modes).  ``degenerate`` marks a near-constant magnitude
    profile whose q_mag is dominated by the epsilon guard.
    """

    id: str
    q_sim: Optional[float]
    q_mag: float
    w_sim: float
    w_mag: float
    q: float
    degenerate: bool = False


def fuse(q_sim: float, q_mag: float, config: ScoreConfig) -> tuple[FusionWeights, float]:
    """Adaptive fusion of the two cues.

    Returns the weights and the fused score
    q = w_sim * q_sim + w_mag * q_mag, where
    w_sim = logistic((base_sim - base_mag) + 2 * alpha * delta).

    The weights always lie strictly inside (0, 1) and sum to one, for
    any size of discrepancy.
    """
    if not (math.isfinite(q_sim) and math.isfinite(q_mag)):
        raise NonFiniteInputError(
            f"fuse received non-finite cues ({q_sim!r}, {q_mag!r})"
        )
    delta = q_sim - q_mag
    gap = (config.base_sim - config.base_mag) + 2.0 * config.alpha * delta
    w_sim = min(max(float(stable_logistic(gap)), _W_EDGE), 1.0 - _W_EDGE)
    w_mag = 1.0 - w_sim
    weights = FusionWeights(w_sim=w_sim, w_mag=w_mag, delta=delta)
    return weights, w_sim * q_sim + w_mag * q_mag


def fuse_fixed(q_sim: float, q_mag: float, w_sim: float, w_mag: float) -> float:
    """Constant-weight fusion used by the weight-combination ablations."""
    if not (math.isfinite(q_sim) and math.isfinite(q_mag)):
        raise NonFiniteInputError(
            f"fuse_fixed received non-finite cues ({q_sim!r}, {q_mag!r})"
        )
    if w_sim < 0 or w_mag < 0 or abs(w_sim + w_mag - 1.0) > 1e-9:
        raise SimplexError(f"weights ({w_sim!r}, {w_mag!r}) are not on the simplex")
    return w_sim * q_sim + w_mag * q_mag
