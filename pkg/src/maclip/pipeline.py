"""Scoring orchestration: matrix in, per-image quality records out.

Each row is scored independently by the scalar operations of the
similarity, magnitude and fusion modules, so results cannot depend on
batching.  The worker pool splits rows into fixed-size chunks and
reassembles results in input order, which keeps output bytes identical
for any ``--jobs`` setting.
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence

import numpy as np

from .config import ScoreConfig
from .errors import (
    CsvError,
    DimensionMismatchError,
    DuplicateIdError,
    ValidationError,
    ZeroNormError,
)
from .fusion import QualityRecord, fuse, fuse_fixed
from .magnitude import q_mag, q_mag_variant
from .similarity import q_sim
from .tensor_io import EmbeddingMatrix, MosTable, PromptPair

#: Rows per worker chunk.  Fixed (not derived from the job count) so the
#: chunk boundaries, and therefore every float, never depend on --jobs.
CHUNK_ROWS = 512

SCORES_HEADER = ["image_id", "q_sim", "q_mag", "w_sim", "w_mag", "q", "degenerate"]


def format_float(value: float) -> str:
    """Serialize a float with 9 significant digits (round-trips f32)."""
    return format(float(value), ".9g")


def _score_row(name: str, row: np.ndarray, prompts: Optional[PromptPair],
               config: ScoreConfig) -> QualityRecord:
    mode = config.mode

    sim_value: Optional[float] = None
    if prompts is not None:
        try:
            sim_value = q_sim(row, prompts, config)
        except ZeroNormError as exc:
            if mode in ("fused", "sim", "fixed"):
                raise ZeroNormError(f"image {name!r}: {exc}") from None
            sim_value = None

    if mode in ("l1", "l2"):
        mag_value = q_mag_variant(row, mode)
        degenerate = False
    else:
        breakdown = q_mag(row, config)
        mag_value = breakdown.q_mag
        degenerate = breakdown.degenerate

    if mode == "fused":
        weights, fused = fuse(sim_value, mag_value, config)
        return QualityRecord(name, sim_value, mag_value, weights.w_sim,
                             weights.w_mag, fused, degenerate)
    if mode == "sim":
        return QualityRecord(name, sim_value, mag_value, 1.0, 0.0,
                             sim_value, degenerate)
    if mode == "fixed":
        value = fuse_fixed(sim_value, mag_value, config.fixed_w_sim,
                           config.fixed_w_mag)
        return QualityRecord(name, sim_value, mag_value, config.fixed_w_sim,
                             config.fixed_w_mag, value, degenerate)
    # mag, l1, l2
    return QualityRecord(name, sim_value, mag_value, 0.0, 1.0,
                         mag_value, degenerate)


def score_matrix(matrix: EmbeddingMatrix, prompts: Optional[PromptPair],
                 config: ScoreConfig, jobs: Optional[int] = None
                 ) -> list[QualityRecord]:
    """Score every row of ``matrix`` under ``config``.

    Args:
        matrix: Image embeddings.
        prompts: Prompt embeddings; required for modes that use the
            similarity cue, optional (purely informational) otherwise.
        config: Hyperparameters; validated here.
        jobs: Worker threads.  None picks the available parallelism.
            Results are independent of this value.

    Returns:
        One record per row, in matrix order.
    """
    config.validate()
    if config.needs_prompts() and prompts is None:
        raise ValidationError(f"mode {config.mode!r} requires prompt embeddings")
    if prompts is not None and prompts.dim != matrix.dim:
        raise DimensionMismatchError(
            f"image dimension {matrix.dim} vs prompt dimension {prompts.dim}"
        )

    rows = matrix.data.astype(np.float64, copy=False)

    def run_chunk(start: int) -> list[QualityRecord]:
        stop = min(start + CHUNK_ROWS, matrix.n)
        return [
            _score_row(matrix.ids[i], rows[i], prompts, config)
            for i in range(start, stop)
        ]

    starts = range(0, matrix.n, CHUNK_ROWS)
    if jobs == 1 or matrix.n <= CHUNK_ROWS:
        chunks = [run_chunk(s) for s in starts]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(run_chunk, starts))
    return [record for chunk in chunks for record in chunk]


def write_scores_csv(records: Sequence[QualityRecord], path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SCORES_HEADER)
        for rec in records:
            writer.writerow([
                rec.id,
                "" if rec.q_sim is None else format_float(rec.q_sim),
                format_float(rec.q_mag),
                format_float(rec.w_sim),
                format_float(rec.w_mag),
                format_float(rec.q),
                "true" if rec.degenerate else "false",
            ])


def read_scores_csv(path) -> list[QualityRecord]:
    """Parse a scores CSV back into records (inverse of write up to 9
    significant digits)."""
    records: list[QualityRecord] = []
    seen: set[str] = set()
    with open(path, "r", encoding="utf-8-sig", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise CsvError(f"empty scores file: expected header "
                           f"{','.join(SCORES_HEADER)!r}") from None
        if [h.strip() for h in header] != SCORES_HEADER:
            raise CsvError(
                f"row 1: expected header {','.join(SCORES_HEADER)!r}, "
                f"got {','.join(header)!r}"
            )
        for row_no, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != len(SCORES_HEADER):
                raise CsvError(
                    f"row {row_no}: expected {len(SCORES_HEADER)} columns, "
                    f"got {len(row)}"
                )
            name = row[0].strip()
            if not name:
                raise CsvError(f"row {row_no}: empty image_id")
            if name in seen:
                raise DuplicateIdError(f"row {row_no}: duplicate id {name!r}")
            seen.add(name)

            def parse(cell: str, column: str, *, optional: bool = False):
                cell = cell.strip()
                if not cell and optional:
                    return None
                try:
                    value = float(cell)
                except ValueError:
                    raise CsvError(
                        f"row {row_no}: column {column}: cannot parse "
                        f"{cell!r} as float"
                    ) from None
                if not math.isfinite(value):
                    raise CsvError(
                        f"row {row_no}: column {column}: non-finite value"
                    )
                return value

            flag = row[6].strip().lower()
            if flag not in ("true", "false"):
                raise CsvError(
                    f"row {row_no}: column degenerate: expected true/false, "
                    f"got {row[6]!r}"
                )
            records.append(QualityRecord(
                id=name,
                q_sim=parse(row[1], "q_sim", optional=True),
                q_mag=parse(row[2], "q_mag"),
                w_sim=parse(row[3], "w_sim"),
                w_mag=parse(row[4], "w_mag"),
                q=parse(row[5], "q"),
                degenerate=flag == "true",
            ))
    return records


def join_records(records: Sequence[QualityRecord], mos: MosTable
                 ) -> tuple[list[QualityRecord], list[float], int, int]:
    """Intersect records with a MOS table by id, preserving record order.

    Returns the joined records, their MOS values, the number of scored
    images without ground truth, and the number of ground-truth entries
    that were never scored.
    """
    joined: list[QualityRecord] = []
    mos_values: list[float] = []
    for rec in records:
        if rec.id in mos.entries:
            joined.append(rec)
            mos_values.append(mos.entries[rec.id])
    skipped_scores = len(records) - len(joined)
    skipped_mos = len(mos.entries) - len(joined)
    return joined, mos_values, skipped_scores, skipped_mos
