"""Writer for the MAE1 embedding container.

Layout: 4-byte ASCII magic "MAE1", u32 row count, u32 dimension (both
little-endian), one id record per row (u16 byte length + UTF-8 bytes),
then all values as little-endian float32, row-major.  This is the
interchange format the scoring package reads; the writer here is
deliberately independent of that package.
"""

from __future__ import annotations

import struct

import numpy as np

from .errors import ValidationError

MAGIC = b"MAE1"
_HEADER = struct.Struct("<4sII")
_IDLEN = struct.Struct("<H")


def write_mae1(ids: list[str], data: np.ndarray, path) -> None:
    """Write rows to ``path``.

    ``data`` must be a 2-D float array with one row per id; it is cast
    to float32.  Ids must be unique, non-empty, and at most 65535 bytes
    of UTF-8.  Non-finite values are rejected.
    """
    data = np.ascontiguousarray(data, dtype=np.float32)
    if data.ndim != 2:
        raise ValidationError(f"embedding array must be 2-D, got shape {data.shape}")
    n, dim = data.shape
    if n != len(ids):
        raise ValidationError(f"{len(ids)} ids for {n} embedding rows")
    if n and dim == 0:
        raise ValidationError("embedding rows must have at least one dimension")
    if data.size and not np.isfinite(data).all():
        row, col = np.argwhere(~np.isfinite(data))[0]
        raise ValidationError(f"non-finite value at row {row}, column {col}")

    encoded = []
    seen: set[str] = set()
    for name in ids:
        if not name:
            raise ValidationError("empty id")
        if name in seen:
            raise ValidationError(f"duplicate id {name!r}")
        seen.add(name)
        raw = name.encode("utf-8")
        if len(raw) > 0xFFFF:
            raise ValidationError(f"id too long ({len(raw)} bytes): {name[:40]!r}...")
        encoded.append(raw)

    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, n, dim))
        for raw in encoded:
            fh.write(_IDLEN.pack(len(raw)))
            fh.write(raw)
        fh.write(data.astype("<f4", copy=False).tobytes(order="C"))
