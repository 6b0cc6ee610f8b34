"""Reading and writing of embedding files and MOS tables.

The embedding container is a small binary format ("MAE1"):

* bytes 0-3: ASCII magic ``MAE1``
* bytes 4-7: ``u32`` row count N (little-endian)
* bytes 8-11: ``u32`` dimension D (little-endian)
* N id records, each a ``u16`` byte length followed by that many bytes
  of UTF-8
* N*D ``float32`` values, little-endian, row-major, rows in id order

Floats are stored as 32 bits so files round-trip bit-exactly across
platforms.  MOS ground truth stays a plain two-column CSV because people
edit it by hand.
"""

from __future__ import annotations

import csv
import math
import struct
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BadMagicError,
    CsvError,
    DuplicateIdError,
    HeaderError,
    InvalidIdError,
    NonFiniteValueError,
    PromptFileError,
    TrailingBytesError,
    TruncatedFileError,
    ValidationError,
    VersionError,
)

MAGIC = b"MAE1"
_HEADER = struct.Struct("<4sII")
_IDLEN = struct.Struct("<H")


@dataclass
class EmbeddingMatrix:
    """N image embeddings of dimension D with per-row identifiers.

    ``data`` is kept as float32 so that writing and re-reading a matrix
    reproduces every bit.  Callers doing arithmetic should widen to
    float64 themselves.
    """

    ids: list[str]
    data: np.ndarray
    dim: int

    @property
    def n(self) -> int:
        return len(self.ids)

    def validate(self) -> "EmbeddingMatrix":
        if self.dim <= 0:
            raise ValidationError(f"dimension must be positive, got {self.dim}")
        if self.data.ndim != 2:
            raise ValidationError(f"data must be 2-D, got shape {self.data.shape}")
        n, d = self.data.shape
        if n != len(self.ids):
            raise ValidationError(f"{len(self.ids)} ids but {n} data rows")
        if d != self.dim:
            raise ValidationError(f"dim field {self.dim} but data has {d} columns")
        seen: set[str] = set()
        for i, name in enumerate(self.ids):
            if not name:
                raise ValidationError(f"empty id at row {i}")
            if name in seen:
                raise ValidationError(f"duplicate id {name!r} at row {i}")
            seen.add(name)
        if self.data.size and not np.isfinite(self.data).all():
            bad = np.argwhere(~np.isfinite(self.data))[0]
            raise ValidationError(
                f"non-finite value at row {bad[0]}, column {bad[1]}"
            )
        return self


@dataclass
class PromptPair:
    """Positive and negative prompt embeddings, both of dimension D."""

    pos: np.ndarray
    neg: np.ndarray

    @property
    def dim(self) -> int:
        return int(self.pos.shape[0])


@dataclass
class MosTable:
    """Mapping of image id to mean opinion score in dataset-native units."""

    entries: dict[str, float] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.entries)


def _read_exact(buf: bytes, offset: int, count: int, what: str) -> bytes:
    end = offset + count
    if end > len(buf):
        raise TruncatedFileError(
            f"truncated {what}: need {count} bytes at offset {offset}, "
            f"file holds {len(buf) - offset}"
        )
    return buf[offset:end]


def read_embeddings(path) -> EmbeddingMatrix:
    """Parse an MAE1 file.

    Raises a distinct :class:`~maclip.errors.FormatError` subclass for
    each malformation family, naming the byte offset or row involved.
    """
    with open(path, "rb") as fh:
        buf = fh.read()

    if len(buf) < 4:
        raise TruncatedFileError(
            f"truncated header: need 4 magic bytes, file holds {len(buf)}"
        )
    magic = buf[:4]
    if magic != MAGIC:
        if magic[:3] == MAGIC[:3]:
            raise VersionError(
                f"unsupported format version {magic[3:4]!r} at offset 3 "
                f"(expected {MAGIC[3:4]!r})"
            )
        raise BadMagicError(f"bad magic {magic!r} at offset 0, expected {MAGIC!r}")
    if len(buf) < _HEADER.size:
        raise TruncatedFileError(
            f"truncated header: need {_HEADER.size} bytes, file holds {len(buf)}"
        )
    _, n, dim = _HEADER.unpack_from(buf, 0)
    if dim == 0:
        raise HeaderError("dimension field at offset 8 is zero")

    offset = _HEADER.size
    ids: list[str] = []
    seen: set[str] = set()
    for row in range(n):
        (ln,) = _IDLEN.unpack(_read_exact(buf, offset, 2, f"id length of row {row}"))
        offset += 2
        raw = _read_exact(buf, offset, ln, f"id bytes of row {row}")
        offset += ln
        try:
            name = raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InvalidIdError(f"row {row}: id is not valid UTF-8 ({exc})") from None
        if not name:
            raise InvalidIdError(f"row {row}: empty id")
        if name in seen:
            raise DuplicateIdError(f"row {row}: duplicate id {name!r}")
        seen.add(name)
        ids.append(name)

    expected = n * dim * 4
    actual = len(buf) - offset
    if actual < expected:
        raise TruncatedFileError(
            f"truncated payload at offset {offset}: expected {expected} bytes "
            f"({n} rows x {dim} floats), found {actual}"
        )
    if actual > expected:
        raise TrailingBytesError(
            f"{actual - expected} unexpected bytes after payload "
            f"(payload ends at offset {offset + expected})"
        )
    data = np.frombuffer(buf, dtype="<f4", count=n * dim, offset=offset)
    data = data.reshape(n, dim).copy()
    if data.size and not np.isfinite(data).all():
        r, c = np.argwhere(~np.isfinite(data))[0]
        raise NonFiniteValueError(
            f"non-finite value at row {int(r)}, column {int(c)} "
            f"(byte offset {offset + 4 * (int(r) * dim + int(c))})"
        )
    return EmbeddingMatrix(ids=ids, data=data, dim=int(dim))


def write_embeddings(matrix: EmbeddingMatrix, path) -> None:
    """Serialize a matrix; equal matrices produce identical bytes."""
    matrix.validate()
    parts = [_HEADER.pack(MAGIC, matrix.n, matrix.dim)]
    for name in matrix.ids:
        raw = name.encode("utf-8")
        if len(raw) > 0xFFFF:
            raise ValidationError(f"id {name[:32]!r}... exceeds 65535 bytes")
        parts.append(_IDLEN.pack(len(raw)))
        parts.append(raw)
    payload = np.ascontiguousarray(matrix.data, dtype="<f4")
    parts.append(payload.tobytes())
    with open(path, "wb") as fh:
        fh.write(b"".join(parts))


def read_prompts(path) -> PromptPair:
    """Read a prompt file: an MAE1 file with exactly the rows pos, neg."""
    matrix = read_embeddings(path)
    if matrix.n != 2 or matrix.ids != ["pos", "neg"]:
        raise PromptFileError(
            f"prompt file must hold exactly ids ['pos', 'neg'], "
            f"got {matrix.n} rows with ids {matrix.ids[:4]!r}"
        )
    pos, neg = matrix.data[0], matrix.data[1]
    for name, vec in (("pos", pos), ("neg", neg)):
        if not float(np.linalg.norm(vec.astype(np.float64))) > 0.0:
            raise ValidationError(f"prompt {name!r} has zero norm")
    return PromptPair(pos=pos, neg=neg)


def write_prompts(pair: PromptPair, path) -> None:
    data = np.stack([pair.pos, pair.neg]).astype("<f4")
    write_embeddings(EmbeddingMatrix(ids=["pos", "neg"], data=data, dim=pair.dim), path)


def read_mos(path) -> MosTable:
    """Parse a two-column ``image_id,mos`` CSV (LF or CRLF)."""
    entries: dict[str, float] = {}
    with open(path, "r", encoding="utf-8-sig", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise CsvError("empty file: expected header 'image_id,mos'") from None
        if [h.strip() for h in header] != ["image_id", "mos"]:
            raise CsvError(
                f"row 1: expected header 'image_id,mos', got {','.join(header)!r}"
            )
        for row_no, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != 2:
                raise CsvError(f"row {row_no}: expected 2 columns, got {len(row)}")
            name = row[0].strip()
            if not name:
                raise CsvError(f"row {row_no}: empty image_id")
            if name in entries:
                raise DuplicateIdError(f"row {row_no}: duplicate id {name!r}")
            try:
                value = float(row[1])
            except ValueError:
                raise CsvError(
                    f"row {row_no}: column mos: cannot parse {row[1]!r} as float"
                ) from None
            if not math.isfinite(value):
                raise CsvError(f"row {row_no}: column mos: non-finite value {row[1]!r}")
            entries[name] = value
    return MosTable(entries=entries)


def write_mos(table: MosTable, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["image_id", "mos"])
        for name, value in table.entries.items():
            writer.writerow([name, repr(value)])
