"""Magnitude-aware CLIP image quality scoring.

Training-free no-reference IQA: a prompt-similarity cue and a
Box-Cox-normalized magnitude cue over the same image embeddings,
blended by confidence-guided adaptive weights, plus the evaluation
tooling (SRCC, PLCC, logistic mapping, lambda sweeps, ablation grids)
needed to study the scores.
"""

from .config import ScoreConfig
from .errors import (
    FormatError,
    MaclipError,
    ValidationError,
)
from .fusion import FusionWeights, QualityRecord, fuse, fuse_fixed
from .magnitude import (
    MagnitudeBreakdown,
    boxcox,
    q_mag,
    q_mag_variant,
    wasserstein_1d,
)
from .metrics import (
    EvalReport,
    LogisticFit,
    evaluate,
    four_param_logistic,
    logistic_fit,
    plcc,
    srcc,
)
from .pipeline import read_scores_csv, score_matrix, write_scores_csv
from .similarity import SimilarityPair, cosine, q_sim, similarities
from .tensor_io import (
    EmbeddingMatrix,
    MosTable,
    PromptPair,
    read_embeddings,
    read_mos,
    read_prompts,
    write_embeddings,
    write_mos,
    write_prompts,
)

__version__ = "0.1.0"

__all__ = [
    "EmbeddingMatrix",
    "EvalReport",
    "FormatError",
    "FusionWeights",
    "LogisticFit",
    "MaclipError",
    "MagnitudeBreakdown",
    "MosTable",
    "PromptPair",
    "QualityRecord",
    "ScoreConfig",
    "SimilarityPair",
    "ValidationError",
    "boxcox",
    "cosine",
    "evaluate",
    "four_param_logistic",
    "fuse",
    "fuse_fixed",
    "logistic_fit",
    "plcc",
    "q_mag",
    "q_mag_variant",
    "q_sim",
    "read_embeddings",
    "read_mos",
    "read_prompts",
    "read_scores_csv",
    "score_matrix",
    "similarities",
    "srcc",
    "wasserstein_1d",
    "write_embeddings",
    "write_mos",
    "write_prompts",
    "write_scores_csv",
    "__version__",
]
