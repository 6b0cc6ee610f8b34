"""Prompt-similarity quality score.

The similarity cue compares an image embedding against a positive and a
negative prompt embedding and squashes the cosine gap through a
temperature softmax.  Over an antonym pair the two-way softmax is
exactly a logistic of the gap, which is how it is computed here: one
stable logistic, never a ratio of raw exponentials.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import ScoreConfig
from .errors import DimensionMismatchError, NonFiniteInputError, ZeroNormError
from .tensor_io import PromptPair

_OPEN_LO = np.nextafter(0.0, 1.0)
_OPEN_HI = np.nextafter(1.0, 0.0)


def stable_logistic(z):
    """Logistic function clamped to the open interval (0, 1).

    Works on scalars and arrays.  The clamp keeps downstream products
    and convex combinations strictly inside (0, 1) even for arguments
    saturated far beyond float precision.
    """
    z = np.asarray(z, dtype=np.float64)
    out = np.empty_like(z)
    nonneg = z >= 0
    out[nonneg] = 1.0 / (1.0 + np.exp(-z[nonneg]))
    ez = np.exp(z[~nonneg])
    out[~nonneg] = ez / (1.0 + ez)
    out = np.clip(out, _OPEN_LO, _OPEN_HI)
    if out.ndim == 0:
        return float(out)
    return out


@dataclass(frozen=True)
class SimilarityPair:
    """Cosine similarities of one image against the two prompts."""

    s_pos: float
    s_neg: float


def cosine(a, b, epsilon: float = 1e-8) -> float:
    """Cosine similarity of two vectors.

    Args:
        a: First vector.
        b: Second vector, same length.
        epsilon: Norms at or below this are treated as zero.

    Returns:
        Dot product of the two l2-normalized vectors, in [-1, 1] up to
        float slack.

    Raises:
        DimensionMismatchError: If the lengths differ.
        ZeroNormError: If either norm is not above ``epsilon``.
        NonFiniteInputError: On NaN or infinite input.
    """
    a = np.asarray(a, dtype=np.float64).ravel()
    b = np.asarray(b, dtype=np.float64).ravel()
    if a.shape != b.shape:
        raise DimensionMismatchError(
            f"cosine over different lengths: {a.shape[0]} vs {b.shape[0]}"
        )
    if not (np.isfinite(a).all() and np.isfinite(b).all()):
        raise NonFiniteInputError("cosine received non-finite input")
    na = float(np.linalg.norm(a))
    nb = float(np.linalg.norm(b))
    if na <= epsilon or nb <= epsilon:
        raise ZeroNormError(f"cosine norm at or below epsilon ({na:g}, {nb:g})")
    return float(np.dot(a, b) / (na * nb))


def similarities(image_row, prompts: PromptPair, config: ScoreConfig) -> SimilarityPair:
    return SimilarityPair(
        s_pos=cosine(image_row, prompts.pos, config.epsilon),
        s_neg=cosine(image_row, prompts.neg, config.epsilon),
    )


def q_sim(image_row, prompts: PromptPair, config: ScoreConfig) -> float:
    """Similarity score: logistic of the cosine gap at temperature tau.

    Strictly inside (0, 1) for any input; invariant to positive scaling
    of the image embedding, since the cosine discards magnitude.
    """
    pair = similarities(image_row, prompts, config)
    return float(stable_logistic((pair.s_pos - pair.s_neg) / config.tau))
