"""Magnitude-based quality score.

Pipeline per image: absolute values, divide by the per-image standard
deviation (plus epsilon), power-transform each entry, average.  The
std-normalization makes the score invariant to positive rescaling of
the raw embedding; the l1/l2 variants deliberately are not, which is
their known failure mode.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import ScoreConfig
from .errors import (
    DimensionMismatchError,
    EmptyInputError,
    NonFiniteInputError,
    ValidationError,
)

#: Per-image sigma below this flags the magnitude profile as degenerate
#: (all absolute values equal, so the normalization divides by epsilon).
DEGENERATE_SIGMA = 1e-6


def boxcox(x, lam: float):
    """Shifted power transform T(x) = ((1 + x)^lam - 1) / lam.

    The lam == 0 branch is the limit log(1 + x).  Implemented through
    expm1/log1p so the two branches agree to float precision as lam
    approaches zero.  Accepts scalars or arrays; x must be >= 0.
    """
    x = np.asarray(x, dtype=np.float64)
    if np.any(x < 0):
        raise ValidationError("boxcox domain is x >= 0")
    if lam == 0.0:
        out = np.log1p(x)
    else:
        out = np.expm1(lam * np.log1p(x)) / lam
    if out.ndim == 0:
        return float(out)
    return out


@dataclass(frozen=True)
class MagnitudeBreakdown:
    """Result of the magnitude score with its intermediate sigma."""

    sigma: float
    q_mag: float
    variant: str
    degenerate: bool = False


def _checked_row(image_row) -> np.ndarray:
    row = np.asarray(image_row, dtype=np.float64).ravel()
    if row.size == 0:
        raise EmptyInputError("magnitude score of an empty vector")
    if not np.isfinite(row).all():
        raise NonFiniteInputError("magnitude score received non-finite input")
    return row


def q_mag(image_row, config: ScoreConfig) -> MagnitudeBreakdown:
    """Box-Cox magnitude score of one embedding row.

    sigma is the population standard deviation (divide by D) computed
    across the row's dimensions, over the absolute values by default or
    over the raw signed values when ``config.sigma_over == "raw"``.
    A near-zero sigma still yields a finite score but the result is
    flagged degenerate, because the epsilon-normalized profile is then
    arbitrarily large.
    """
    row = _checked_row(image_row)
    magnitudes = np.abs(row)
    basis = magnitudes if config.sigma_over == "abs" else row
    sigma = float(np.std(basis))
    normalized = magnitudes / (sigma + config.epsilon)
    value = float(np.mean(boxcox(normalized, config.lam)))
    return MagnitudeBreakdown(
        sigma=sigma,
        q_mag=value,
        variant="boxcox",
        degenerate=sigma < DEGENERATE_SIGMA,
    )


def q_mag_variant(image_row, variant: str) -> float:
    """Raw-norm ablation variants, scaled to be dimension-comparable.

    l1 is the mean absolute value; l2 is the Euclidean norm divided by
    sqrt(D).  Both scale linearly with the embedding.
    """
    row = _checked_row(image_row)
    if variant == "l1":
        return float(np.mean(np.abs(row)))
    if variant == "l2":
        return float(np.linalg.norm(row) / np.sqrt(row.size))
    raise ValidationError(f"unknown magnitude variant {variant!r}")


def wasserstein_1d(a, b) -> float:
    """First Wasserstein distance between two equal-length 1-D samples.

    Equals the mean absolute difference of the sorted samples.  Used as
    a diagnostic for how far apart two feature distributions sit.
    """
    a = np.asarray(a, dtype=np.float64).ravel()
    b = np.asarray(b, dtype=np.float64).ravel()
    if a.shape != b.shape:
        raise DimensionMismatchError(
            f"wasserstein_1d over different lengths: {a.shape[0]} vs {b.shape[0]}"
        )
    if a.size == 0:
        raise EmptyInputError("wasserstein_1d of empty vectors")
    if not (np.isfinite(a).all() and np.isfinite(b).all()):
        raise NonFiniteInputError("wasserstein_1d received non-finite input")
    return float(np.mean(np.abs(np.sort(a) - np.sort(b))))
