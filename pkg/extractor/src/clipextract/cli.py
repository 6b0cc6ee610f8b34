"""Command line front end.

Exit codes follow the same convention as the scoring tool that consumes
these files: 0 success, 2 usage error, 3 unreadable input, 4 validation
failure.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from . import __version__
from .encoders import ENCODERS, make_encoder
from .errors import InputError, UsageError, ValidationError
from .extract import ExtractionJob, extract_images, extract_prompts
from .preprocess import BACKBONES

log = logging.getLogger("clipextract")


def _setup_logging() -> None:
    level = os.environ.get("CLIPEXTRACT_LOG", "WARNING").upper()
    if level not in {"DEBUG", "INFO", "WARNING", "ERROR"}:
        level = "WARNING"
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("clipextract %(levelname)s %(message)s"))
    log.addHandler(handler)
    log.setLevel(level)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clipextract",
        description="Extract raw CLIP-style embeddings into MAE1 files.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--backbone", required=True, choices=sorted(BACKBONES),
                        help="vision backbone to extract with")
    common.add_argument("--out", required=True, help="output MAE1 path")
    common.add_argument("--encoder", default="clip", choices=sorted(ENCODERS),
                        help="encoder implementation (default: clip)")

    p_img = sub.add_parser("extract", parents=[common],
                           help="embed every image under a directory")
    p_img.add_argument("--images", required=True,
                       help="directory scanned recursively for images")
    p_img.add_argument("--batch-size", type=int, default=16,
                       help="images per forward pass (default: 16)")

    p_txt = sub.add_parser("extract-prompts", parents=[common],
                           help="embed a positive/negative prompt pair")
    p_txt.add_argument("--pos", required=True, help="positive prompt text")
    p_txt.add_argument("--neg", required=True, help="negative prompt text")
    return parser


def run(argv: list[str]) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "extract":
        job = ExtractionJob(backbone=args.backbone, out_path=args.out,
                            image_dir=args.images, encoder=args.encoder,
                            batch_size=args.batch_size)
        encoder = make_encoder(args.encoder, args.backbone)
        extract_images(job, encoder)
    else:
        job = ExtractionJob(backbone=args.backbone, out_path=args.out,
                            prompt_pos=args.pos, prompt_neg=args.neg,
                            encoder=args.encoder)
        encoder = make_encoder(args.encoder, args.backbone)
        extract_prompts(job, encoder)
    return 0


def main(argv: list[str] | None = None) -> int:
    _setup_logging()
    try:
        return run(sys.argv[1:] if argv is None else argv)
    except SystemExit as exc:  # argparse uses 2 for usage errors already
        return int(exc.code or 0)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (InputError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 3
    except ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
