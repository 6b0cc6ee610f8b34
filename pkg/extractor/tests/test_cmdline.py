import json

import numpy as np

from clipextract.cli import main
from imagegen import write_png
from maclip.tensor_io import read_embeddings, read_prompts


def run(*argv) -> int:
    return main([str(a) for a in argv])


def test_extract_writes_file_and_manifest(image_dir, tmp_path, capsys):
    out = tmp_path / "f.mae1"
    rc = run("extract", "--backbone", "ViT-B/32", "--encoder", "projection",
             "--images", image_dir, "--out", out)
    assert rc == 0
    mat = read_embeddings(out)
    assert mat.data.shape == (7, 512)
    manifest = json.loads((tmp_path / "f.mae1.manifest.json").read_text())
    assert manifest["command"] == "extract"
    assert manifest["backbone"] == "ViT-B/32"


def test_extract_prompts_round_trip(tmp_path):
    out = tmp_path / "p.mae1"
    rc = run("extract-prompts", "--backbone", "RN101", "--encoder", "projection",
             "--pos", "a sharp photo", "--neg", "a blurry photo", "--out", out)
    assert rc == 0
    pair = read_prompts(out)
    assert pair.pos.shape == (512,)
    assert not np.array_equal(pair.pos, pair.neg)


def test_missing_required_flag_is_usage_error(tmp_path, capsys):
    rc = run("extract", "--backbone", "ViT-B/32", "--out", tmp_path / "f.mae1")
    assert rc == 2


def test_unknown_backbone_is_usage_error(image_dir, tmp_path, capsys):
    rc = run("extract", "--backbone", "ViT-Z/99", "--encoder", "projection",
             "--images", image_dir, "--out", tmp_path / "f.mae1")
    assert rc == 2


def test_missing_image_dir_is_input_error(tmp_path, capsys):
    rc = run("extract", "--backbone", "ViT-B/32", "--encoder", "projection",
             "--images", tmp_path / "nowhere", "--out", tmp_path / "f.mae1")
    assert rc == 3
    assert "input error" in capsys.readouterr().err


def test_bad_batch_size_is_validation_error(image_dir, tmp_path, capsys):
    rc = run("extract", "--backbone", "ViT-B/32", "--encoder", "projection",
             "--images", image_dir, "--out", tmp_path / "f.mae1",
             "--batch-size", "0")
    assert rc == 4
    assert "validation error" in capsys.readouterr().err


def test_empty_prompt_is_validation_error(tmp_path, capsys):
    rc = run("extract-prompts", "--backbone", "ViT-B/32",
             "--encoder", "projection",
             "--pos", "   ", "--neg", "a blurry photo",
             "--out", tmp_path / "p.mae1")
    assert rc == 4


def test_overlong_prompt_error_names_prompt(tmp_path, capsys):
    rc = run("extract-prompts", "--backbone", "ViT-B/32",
             "--encoder", "projection",
             "--pos", " ".join(["word"] * 90), "--neg", "short",
             "--out", tmp_path / "p.mae1")
    assert rc == 4
    assert "word word" in capsys.readouterr().err


def test_skipped_sidecar_written(image_dir, tmp_path):
    (image_dir / "junk.bin").write_bytes(b"\x00\x01\x02")
    out = tmp_path / "f.mae1"
    rc = run("extract", "--backbone", "ViT-B/32", "--encoder", "projection",
             "--images", image_dir, "--out", out)
    assert rc == 0
    assert (tmp_path / "f.mae1.skipped.txt").read_text().strip() == "junk.bin"


def test_version_flag(capsys):
    rc = run("--version")
    assert rc == 0
    assert capsys.readouterr().out.strip()


def test_clip_encoder_without_weights_fails_cleanly(image_dir, tmp_path,
                                                    monkeypatch, capsys):
    monkeypatch.delenv("CLIPEXTRACT_ALLOW_DOWNLOAD", raising=False)
    rc = run("extract", "--backbone", "ViT-B/32", "--encoder", "clip",
             "--images", image_dir, "--out", tmp_path / "f.mae1")
    assert rc == 4
    err = capsys.readouterr().err
    assert "validation error" in err
