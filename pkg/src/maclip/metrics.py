"""Evaluation statistics: rank and linear correlation, logistic mapping.

SRCC is the Pearson correlation of midrank-transformed vectors; ties
get fractional average ranks, which is the tie-correct definition (the
closed-form 6*sum(d^2) identity does not hold under ties).  PLCC is
reported raw and, on request, after the conventional 4-parameter
logistic regression of predictions onto MOS.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy import optimize
from scipy.stats import rankdata

from .config import ScoreConfig
from .errors import (
    DimensionMismatchError,
    InsufficientSamplesError,
    NonFiniteInputError,
    ZeroVarianceError,
)
from .fusion import QualityRecord
from .pipeline import join_records
from .tensor_io import MosTable


def _paired(x, y, min_n: int) -> tuple[np.ndarray, np.ndarray]:
    x = np.asarray(x, dtype=np.float64).ravel()
    y = np.asarray(y, dtype=np.float64).ravel()
    if x.shape != y.shape:
        raise DimensionMismatchError(
            f"paired vectors of different lengths: {x.size} vs {y.size}"
        )
    if x.size < min_n:
        raise InsufficientSamplesError(f"need at least {min_n} samples, got {x.size}")
    if not (np.isfinite(x).all() and np.isfinite(y).all()):
        raise NonFiniteInputError("correlation received non-finite input")
    return x, y


def _pearson(x: np.ndarray, y: np.ndarray) -> float:
    dx = x - x.mean()
    dy = y - y.mean()
    vx = float(np.dot(dx, dx))
    vy = float(np.dot(dy, dy))
    if vx == 0.0 or vy == 0.0:
        raise ZeroVarianceError("correlation against a constant vector")
    r = float(np.dot(dx, dy) / np.sqrt(vx * vy))
    # Float slack can push |r| a few ulp past 1; the contract is [-1, 1].
    return min(1.0, max(-1.0, r))


def srcc(x, y) -> float:
    """Spearman rank correlation with midranks for ties."""
    x, y = _paired(x, y, 3)
    return _pearson(rankdata(x, method="average"), rankdata(y, method="average"))


def plcc(x, y) -> float:
    """Pearson product-moment correlation."""
    x, y = _paired(x, y, 3)
    return _pearson(x, y)


def four_param_logistic(x, beta) -> np.ndarray:
    """q(x) = (b1 - b2) / (1 + exp(-(x - b3) / |b4|)) + b2."""
    x = np.asarray(x, dtype=np.float64)
    b1, b2, b3, b4 = (float(b) for b in beta)
    scale = max(abs(b4), 1e-12)
    z = (x - b3) / scale
    # Stable logistic without importing the similarity clamp: the fitted
    # curve may legitimately sit on its asymptotes.
    out = np.empty_like(z)
    nonneg = z >= 0
    out[nonneg] = 1.0 / (1.0 + np.exp(-z[nonneg]))
    ez = np.exp(z[~nonneg])
    out[~nonneg] = ez / (1.0 + ez)
    return (b1 - b2) * out + b2


@dataclass(frozen=True)
class LogisticFit:
    """Fitted parameters, mapped predictions and convergence status."""

    params: tuple[float, float, float, float]
    mapped: np.ndarray
    converged: bool


def logistic_fit(pred, mos) -> LogisticFit:
    """Least-squares fit of the 4-parameter logistic from pred to MOS.

    Derivative-free simplex descent from the standard initialization
    (asymptotes at the MOS extremes, midpoint at the prediction median,
    slope from the prediction spread).  Non-convergence is reported via
    the flag rather than raised, so callers can fall back to raw PLCC.
    """
    pred, mos = _paired(pred, mos, 10)
    if float(np.ptp(pred)) == 0.0:
        raise ZeroVarianceError("logistic fit against constant predictions")

    x0 = np.array([
        float(np.max(mos)),
        float(np.min(mos)),
        float(np.median(pred)),
        float(np.std(pred)) or 1.0,
    ])

    def loss(beta):
        residual = four_param_logistic(pred, beta) - mos
        return float(np.dot(residual, residual))

    result = optimize.minimize(
        loss,
        x0,
        method="Nelder-Mead",
        options={"maxiter": 2000, "xatol": 1e-8, "fatol": 1e-8},
    )
    b1, b2, b3, b4 = (float(v) for v in result.x)
    params = (b1, b2, b3, abs(b4))
    return LogisticFit(
        params=params,
        mapped=four_param_logistic(pred, params),
        converged=bool(result.success),
    )


@dataclass(frozen=True)
class EvalReport:
    """Correlation summary of one scored set against ground truth."""

    n: int
    srcc: float
    plcc_raw: float
    plcc_logistic: Optional[float] = None
    logistic_params: Optional[tuple[float, float, float, float]] = None
    logistic_warning: bool = False
    skipped_scores: int = 0
    skipped_mos: int = 0
    config_echo: Optional[dict] = None

    def as_dict(self) -> dict:
        out: dict = {
            "n": self.n,
            "srcc": self.srcc,
            "plcc_raw": self.plcc_raw,
        }
        if self.plcc_logistic is not None:
            out["plcc_logistic"] = self.plcc_logistic
        if self.logistic_params is not None:
            out["logistic_params"] = list(self.logistic_params)
        if self.logistic_warning:
            out["logistic_warning"] = True
        out["skipped"] = {
            "scores_without_mos": self.skipped_scores,
            "mos_without_scores": self.skipped_mos,
        }
        if self.config_echo is not None:
            out["config"] = self.config_echo
        return out


def evaluate(records: Sequence[QualityRecord], mos: MosTable,
             with_logistic: bool = False,
             config: Optional[ScoreConfig] = None) -> EvalReport:
    """Join records with ground truth by id and correlate the q column.

    Ids present on only one side are skipped and surfaced as counts.
    Fewer than 3 joined pairs is an error.  The join is order-robust:
    permuting either input leaves the report unchanged.
    """
    joined, mos_values, skipped_scores, skipped_mos = join_records(records, mos)
    if len(joined) < 3:
        raise InsufficientSamplesError(
            f"only {len(joined)} ids joined between scores and MOS; need 3"
        )
    # Canonical id order: float reductions then run in a fixed order, so
    # permuting either input reproduces the report bit for bit.
    order = sorted(range(len(joined)), key=lambda i: joined[i].id)
    pred = np.array([joined[i].q for i in order], dtype=np.float64)
    target = np.array([mos_values[i] for i in order], dtype=np.float64)

    plcc_logistic = None
    params = None
    warning = False
    if with_logistic:
        fit = logistic_fit(pred, target)
        if fit.converged:
            plcc_logistic = plcc(fit.mapped, target)
            params = fit.params
        else:
            warning = True

    return EvalReport(
        n=len(joined),
        srcc=srcc(pred, target),
        plcc_raw=plcc(pred, target),
        plcc_logistic=plcc_logistic,
        logistic_params=params,
        logistic_warning=warning,
        skipped_scores=skipped_scores,
        skipped_mos=skipped_mos,
        config_echo=config.as_dict() if config is not None else None,
    )
