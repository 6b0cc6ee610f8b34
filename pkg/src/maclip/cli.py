"""Command-line interface.

Five subcommands: ``score`` (embeddings to per-image scores CSV),
``eval`` (scores + MOS to a correlation report JSON), ``sweep-lambda``
(correlation across a grid of Box-Cox powers), ``ablate`` (the standard
branch/norm/weight configuration grid) and ``plot-data`` (joined
scatter CSV for external plotting).

Exit codes: 0 success, 2 usage error, 3 input-format or I/O error,
4 validation error.  Outputs are byte-deterministic for identical
inputs and flags; the wall-clock duration goes only to the manifest
sidecar written next to each output (``<out>.manifest.json``).

The environment variable ``MACLIP_LOG`` sets log verbosity (DEBUG,
INFO, WARNING, ERROR); logs go to stderr.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import logging
import os
import sys
import time
from typing import Optional, Sequence

from . import __version__
from .config import ScoreConfig
from .errors import ConfigError, FormatError, ValidationError, ZeroVarianceError
from .magnitude import q_mag
from .metrics import evaluate
from .pipeline import (
    format_float,
    join_records,
    read_scores_csv,
    score_matrix,
    write_scores_csv,
)
from .fusion import QualityRecord, fuse, fuse_fixed
from .similarity import q_sim as q_sim_scalar
from .tensor_io import read_embeddings, read_mos, read_prompts

log = logging.getLogger("maclip")

ABLATE_CONFIGS = (
    "sim",
    "mag",
    "l1",
    "l2",
    "fused",
    "fixed(0.8,0.2)",
    "fixed(0.2,0.8)",
    "fixed(0.5,0.5)",
)


class UsageError(Exception):
    """Malformed invocation discovered after argparse (exit code 2)."""


def _weights_pair(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(
            f"expected two comma-separated floats, got {text!r}"
        )
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected two comma-separated floats, got {text!r}"
        ) from None


def _grid_spec(text: str) -> tuple[float, float, float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(
            f"expected start:stop:step, got {text!r}"
        )
    try:
        return float(parts[0]), float(parts[1]), float(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected start:stop:step, got {text!r}"
        ) from None


def _expand_grid(spec: tuple[float, float, float]) -> list[float]:
    start, stop, step = spec
    if step <= 0:
        raise ConfigError(f"grid step must be positive, got {step!r}")
    values = []
    k = 0
    while True:
        value = start + k * step
        if value > stop + step * 1e-9:
            break
        values.append(value)
        k += 1
    if not values:
        raise ConfigError(f"grid {start}:{stop}:{step} contains no points")
    return values


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--mode", default="fused",
                        choices=["fused", "sim", "mag", "l1", "l2", "fixed"])
    parser.add_argument("--lambda", dest="lam", type=float, default=0.5,
                        metavar="F", help="Box-Cox power (default 0.5)")
    parser.add_argument("--alpha", type=float, default=1.0, metavar="F",
                        help="fusion sensitivity (default 1.0)")
    parser.add_argument("--tau", type=float, default=0.01, metavar="F",
                        help="similarity softmax temperature (default 0.01)")
    parser.add_argument("--epsilon", type=float, default=1e-8, metavar="F")
    parser.add_argument("--base-sim", type=float, default=1.0, metavar="F")
    parser.add_argument("--base-mag", type=float, default=0.6, metavar="F")
    parser.add_argument("--fixed-weights", type=_weights_pair, default=(0.5, 0.5),
                        metavar="F,F", help="weights for mode fixed")
    parser.add_argument("--sigma-over", dest="sigma_over", default="abs",
                        choices=["abs", "raw"],
                        help="compute the per-image sigma over |F| or raw F")


def _config_from(args: argparse.Namespace) -> ScoreConfig:
    w_sim, w_mag = args.fixed_weights
    return ScoreConfig(
        lam=args.lam,
        alpha=args.alpha,
        tau=args.tau,
        epsilon=args.epsilon,
        base_sim=args.base_sim,
        base_mag=args.base_mag,
        mode=args.mode,
        fixed_w_sim=w_sim,
        fixed_w_mag=w_mag,
        sigma_over=args.sigma_over,
    ).validate()


def _round_floats(value):
    if isinstance(value, float):
        return float(format_float(value))
    if isinstance(value, dict):
        return {k: _round_floats(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_round_floats(v) for v in value]
    return value


def _write_json(payload: dict, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        json.dump(_round_floats(payload), fh, indent=2)
        fh.write("\n")


def _write_manifest(out_path: str, command: str, config: ScoreConfig,
                    inputs: dict, started: float) -> None:
    manifest = {
        "command": command,
        "version": __version__,
        "config": config.as_dict(),
        "inputs": {k: v for k, v in inputs.items() if v is not None},
        "outputs": [out_path],
        "duration_seconds": round(time.monotonic() - started, 6),
    }
    with open(out_path + ".manifest.json", "w", encoding="utf-8", newline="") as fh:
        json.dump(manifest, fh, indent=2)
        fh.write("\n")
    log.info("wrote %s and manifest", out_path)


def _cmd_score(args: argparse.Namespace) -> int:
    started = time.monotonic()
    config = _config_from(args)
    if config.needs_prompts() and args.prompts is None:
        raise UsageError(f"--prompts is required for mode {config.mode!r}")
    matrix = read_embeddings(args.embeddings)
    prompts = read_prompts(args.prompts) if args.prompts else None
    records = score_matrix(matrix, prompts, config, jobs=args.jobs)
    write_scores_csv(records, args.out)
    _write_manifest(args.out, "score", config,
                    {"embeddings": args.embeddings, "prompts": args.prompts},
                    started)
    return 0


def _cmd_eval(args: argparse.Namespace) -> int:
    started = time.monotonic()
    config = _config_from(args)
    records = read_scores_csv(args.scores)
    mos = read_mos(args.mos)
    report = evaluate(records, mos, with_logistic=args.logistic, config=config)
    if report.logistic_warning:
        log.warning("logistic fit did not converge; reporting raw PLCC only")
    _write_json(report.as_dict(), args.out)
    _write_manifest(args.out, "eval", config,
                    {"scores": args.scores, "mos": args.mos}, started)
    return 0


def _cmd_sweep_lambda(args: argparse.Namespace) -> int:
    started = time.monotonic()
    config = _config_from(args)
    if config.mode not in ("fused", "mag", "fixed"):
        raise ConfigError(
            f"sweep-lambda needs a lambda-dependent mode, got {config.mode!r}"
        )
    grid = _expand_grid(args.grid)
    matrix = read_embeddings(args.embeddings)
    prompts = read_prompts(args.prompts)
    mos = read_mos(args.mos)

    # The similarity cue does not depend on lambda: compute it once.
    sims = [q_sim_scalar(row, prompts, config) for row in matrix.data]

    rows = []
    for lam in grid:
        lam_config = config.with_lam(lam)
        records = []
        for name, row, sim_value in zip(matrix.ids, matrix.data, sims):
            breakdown = q_mag(row, lam_config)
            if lam_config.mode == "fused":
                weights, fused_q = fuse(sim_value, breakdown.q_mag, lam_config)
                record = QualityRecord(name, sim_value, breakdown.q_mag,
                                       weights.w_sim, weights.w_mag, fused_q,
                                       breakdown.degenerate)
            elif lam_config.mode == "fixed":
                fused_q = fuse_fixed(sim_value, breakdown.q_mag,
                                     lam_config.fixed_w_sim,
                                     lam_config.fixed_w_mag)
                record = QualityRecord(name, sim_value, breakdown.q_mag,
                                       lam_config.fixed_w_sim,
                                       lam_config.fixed_w_mag, fused_q,
                                       breakdown.degenerate)
            else:
                record = QualityRecord(name, sim_value, breakdown.q_mag,
                                       0.0, 1.0, breakdown.q_mag,
                                       breakdown.degenerate)
            records.append(record)
        report = evaluate(records, mos)
        rows.append((lam, report.srcc, report.plcc_raw))
        log.debug("lambda=%g srcc=%.6f plcc=%.6f", lam, report.srcc,
                  report.plcc_raw)

    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["lambda", "srcc", "plcc_raw"])
        for lam, s, p in rows:
            writer.writerow([format_float(lam), format_float(s), format_float(p)])
    _write_manifest(args.out, "sweep-lambda", config,
                    {"embeddings": args.embeddings, "prompts": args.prompts,
                     "mos": args.mos, "grid": args.grid_text}, started)
    return 0


def _cmd_ablate(args: argparse.Namespace) -> int:
    started = time.monotonic()
    config = _config_from(args)
    matrix = read_embeddings(args.embeddings)
    prompts = read_prompts(args.prompts)
    mos = read_mos(args.mos)

    rows = []
    for label in ABLATE_CONFIGS:
        if label.startswith("fixed("):
            w_sim, w_mag = (float(v) for v in label[6:-1].split(","))
            variant = dataclasses.replace(config, mode="fixed",
                                          fixed_w_sim=w_sim, fixed_w_mag=w_mag)
        else:
            variant = dataclasses.replace(config, mode=label)
        records = score_matrix(matrix, prompts, variant, jobs=args.jobs)
        try:
            report = evaluate(records, mos)
        except ZeroVarianceError:
            # A single branch can saturate to a constant score (for
            # example q_sim at a tiny tau); report the rest of the grid.
            log.warning("config %s produced constant scores; no correlation",
                        label)
            rows.append((label, None, None))
            continue
        rows.append((label, report.srcc, report.plcc_raw))
        log.debug("config=%s srcc=%.6f plcc=%.6f", label, report.srcc,
                  report.plcc_raw)

    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["config", "srcc", "plcc_raw"])
        for label, s, p in rows:
            writer.writerow([
                label,
                "" if s is None else format_float(s),
                "" if p is None else format_float(p),
            ])
    _write_manifest(args.out, "ablate", config,
                    {"embeddings": args.embeddings, "prompts": args.prompts,
                     "mos": args.mos}, started)
    return 0


def _cmd_plot_data(args: argparse.Namespace) -> int:
    started = time.monotonic()
    config = _config_from(args)
    records = read_scores_csv(args.scores)
    mos = read_mos(args.mos)
    joined, mos_values, skipped_scores, skipped_mos = join_records(records, mos)
    if not joined:
        log.warning("no ids in common between %s and %s; writing header only",
                    args.scores, args.mos)
        print("warning: no ids in common between scores and MOS",
              file=sys.stderr)

    pairs = list(zip(joined, mos_values))
    if args.sort == "mos":
        pairs.sort(key=lambda item: item[1])
    elif args.sort == "q":
        pairs.sort(key=lambda item: item[0].q)
    elif args.sort == "id":
        pairs.sort(key=lambda item: item[0].id)

    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["image_id", "mos", "q_sim", "q"])
        for rec, mos_value in pairs:
            writer.writerow([
                rec.id,
                format_float(mos_value),
                "" if rec.q_sim is None else format_float(rec.q_sim),
                format_float(rec.q),
            ])
    if skipped_scores or skipped_mos:
        log.info("join skipped %d scored ids and %d MOS ids",
                 skipped_scores, skipped_mos)
    _write_manifest(args.out, "plot-data", config,
                    {"scores": args.scores, "mos": args.mos}, started)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="maclip",
        description="Magnitude-aware CLIP image quality scoring and evaluation.",
    )
    parser.add_argument("--version", action="version",
                        version=f"maclip {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_score = sub.add_parser("score", help="score an embedding file")
    p_score.add_argument("--embeddings", required=True, metavar="PATH")
    p_score.add_argument("--prompts", metavar="PATH")
    p_score.add_argument("--out", required=True, metavar="PATH")
    p_score.add_argument("--jobs", type=int, default=None, metavar="N")
    _add_config_flags(p_score)
    p_score.set_defaults(func=_cmd_score)

    p_eval = sub.add_parser("eval", help="correlate a scores CSV against MOS")
    p_eval.add_argument("--scores", required=True, metavar="PATH")
    p_eval.add_argument("--mos", required=True, metavar="PATH")
    p_eval.add_argument("--out", required=True, metavar="PATH")
    p_eval.add_argument("--logistic", action="store_true",
                        help="also report PLCC after a 4-parameter logistic fit")
    _add_config_flags(p_eval)
    p_eval.set_defaults(func=_cmd_eval)

    p_sweep = sub.add_parser("sweep-lambda",
                             help="correlations across a Box-Cox power grid")
    p_sweep.add_argument("--embeddings", required=True, metavar="PATH")
    p_sweep.add_argument("--prompts", required=True, metavar="PATH")
    p_sweep.add_argument("--mos", required=True, metavar="PATH")
    p_sweep.add_argument("--out", required=True, metavar="PATH")
    p_sweep.add_argument("--grid", type=_grid_spec, default=(0.1, 2.0, 0.1),
                         metavar="START:STOP:STEP")
    _add_config_flags(p_sweep)
    p_sweep.set_defaults(func=_cmd_sweep_lambda)

    p_ablate = sub.add_parser("ablate",
                              help="branch/norm/weight configuration grid")
    p_ablate.add_argument("--embeddings", required=True, metavar="PATH")
    p_ablate.add_argument("--prompts", required=True, metavar="PATH")
    p_ablate.add_argument("--mos", required=True, metavar="PATH")
    p_ablate.add_argument("--out", required=True, metavar="PATH")
    p_ablate.add_argument("--jobs", type=int, default=None, metavar="N")
    _add_config_flags(p_ablate)
    p_ablate.set_defaults(func=_cmd_ablate)

    p_plot = sub.add_parser("plot-data",
                            help="joined scatter CSV for external plotting")
    p_plot.add_argument("--scores", required=True, metavar="PATH")
    p_plot.add_argument("--mos", required=True, metavar="PATH")
    p_plot.add_argument("--out", required=True, metavar="PATH")
    p_plot.add_argument("--sort", choices=["mos", "q", "id"], default=None,
                        metavar="KEY", help="sort rows by mos, q or id")
    _add_config_flags(p_plot)
    p_plot.set_defaults(func=_cmd_plot_data)

    return parser


def _setup_logging() -> None:
    level_name = os.environ.get("MACLIP_LOG", "WARNING").upper()
    level = getattr(logging, level_name, None)
    if not isinstance(level, int):
        level = logging.WARNING
    logging.basicConfig(stream=sys.stderr, level=level,
                        format="maclip %(levelname)s: %(message)s")


def main(argv: Optional[Sequence[str]] = None) -> int:
    _setup_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if hasattr(args, "grid"):
        # Keep the raw text for the manifest.
        raw = args.grid
        args.grid_text = f"{raw[0]:g}:{raw[1]:g}:{raw[2]:g}"
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (FormatError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 3
    except ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
