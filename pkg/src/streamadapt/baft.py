"""Bit-exact binary dataset format for precomputed embedding streams.

Layout, all little-endian regardless of host:

    header   magic "BAFT" | version u16 | flags u16 | D u32 | J u32
             | B u32 | N u64
    names    J x { len u16, UTF-8 bytes }        (only if flags bit 1)
    text     J x D f32   raw template-averaged class embeddings,
                         not necessarily unit norm
    records  N x { label i32 (-1 = absent), B x D f32 }

flags bit 0 says whether any record carries a label; the per-record
sentinel is authoritative. Floats are stored f32; view 0 of each record
is contractually the un-augmented example.
"""

from __future__ import annotations

import struct

import numpy as np

from .core import ClassModel, StreamRecord
from .errors import (
    BadMagicError,
    DatasetError,
    DimensionMismatchError,
    IoFailureError,
    NonFiniteError,
    TruncatedError,
    VersionUnsupportedError,
)

MAGIC = b"BAFT"
VERSION = 1
HEADER_STRUCT = struct.Struct("<4sHHIIIQ")
FLAG_LABELS = 0x1
FLAG_NAMES = 0x2
_LABEL_STRUCT = struct.Struct("<i")


def _read_exact(f, n, what):
    data = f.read(n)
    if len(data) != n:
        raise TruncatedError(
            f"file ends inside {what}: wanted {n} bytes, got {len(data)}",
            offset=f.tell() - len(data),
        )
    return data


def write_dataset(path, class_model: ClassModel, records):
    """Write a class model plus records; consumes the record iterable."""
    records = list(records)
    d = class_model.dimension
    j = class_model.class_count
    b = records[0].views.shape[0] if records else 1
    for rec in records:
        if rec.views.shape != (b, d):
            raise DimensionMismatchError(
                f"record {rec.example_id} has shape {rec.views.shape}, "
                f"expected {(b, d)}"
            )
    flags = 0
    if any(rec.label is not None for rec in records):
        flags |= FLAG_LABELS
    if class_model.class_names is not None:
        flags |= FLAG_NAMES

    try:
        with open(path, "wb") as f:
            f.write(HEADER_STRUCT.pack(MAGIC, VERSION, flags, d, j, b, len(records)))
            if flags & FLAG_NAMES:
                for name in class_model.class_names:
                    raw = name.encode("utf-8")
                    if len(raw) > 0xFFFF:
                        raise DimensionMismatchError(f"class name too long: {name[:32]}...")
                    f.write(struct.pack("<H", len(raw)))
                    f.write(raw)
            f.write(
                np.ascontiguousarray(class_model.text_embeddings, dtype="<f4").tobytes()
            )
            for rec in records:
                label = -1 if rec.label is None else rec.label
                f.write(_LABEL_STRUCT.pack(label))
                f.write(np.ascontiguousarray(rec.views, dtype="<f4").tobytes())
    except OSError as exc:
        raise IoFailureError(f"cannot write {path}: {exc}") from exc


def read_header(f):
    """Parse and validate the fixed header from an open binary file."""
    raw = _read_exact(f, HEADER_STRUCT.size, "header")
    magic, version, flags, d, j, b, n = HEADER_STRUCT.unpack(raw)
    if magic != MAGIC:
        raise BadMagicError(f"bad magic {magic!r}, expected {MAGIC!r}")
    if version != VERSION:
        raise VersionUnsupportedError(f"version {version} unsupported (reader knows {VERSION})")
    if d < 1 or j < 1 or b < 1:
        raise DatasetError(f"degenerate header: D={d} J={j} B={b}")
    return {"flags": flags, "D": d, "J": j, "B": b, "N": n}


def _read_names(f, j):
    names = []
    for _ in range(j):
        (length,) = struct.unpack("<H", _read_exact(f, 2, "class-name length"))
        names.append(_read_exact(f, length, "class name").decode("utf-8"))
    return names


def _open_dataset(path):
    try:
        f = open(path, "rb")
    except OSError as exc:
        raise IoFailureError(f"cannot read {path}: {exc}") from exc
    try:
        header = read_header(f)
        d, j, b, n = header["D"], header["J"], header["B"], header["N"]
        names = _read_names(f, j) if header["flags"] & FLAG_NAMES else None
        text = np.frombuffer(
            _read_exact(f, j * d * 4, "text-embedding section"), dtype="<f4"
        ).reshape(j, d)
        if not np.all(np.isfinite(text)):
            raise NonFiniteError("non-finite value in text-embedding section")
        class_model = ClassModel.from_text_embeddings(text, class_names=names)
    except Exception:
        f.close()
        raise
    return class_model, header, _record_iter(f, d, j, b, n)


def read_dataset(path):
    """Open a dataset: returns (class_model, record iterator).

    The iterator reads records lazily in file order; exhausting it (or
    closing the generator) releases the file handle. A second pass needs
    a fresh read_dataset call.
    """
    class_model, _, records = _open_dataset(path)
    return class_model, records


def _record_iter(f, d, j, b, n):
    record_bytes = b * d * 4
    try:
        for i in range(n):
            (label,) = _LABEL_STRUCT.unpack(_read_exact(f, 4, f"record {i} label"))
            if not -1 <= label < j:
                raise DatasetError(f"record {i} label {label} outside [-1, {j})")
            views = np.frombuffer(
                _read_exact(f, record_bytes, f"record {i} views"), dtype="<f4"
            ).reshape(b, d)
            if not np.all(np.isfinite(views)):
                raise NonFiniteError(f"non-finite value in record {i} views", record_index=i)
            yield StreamRecord(
                example_id=i,
                views=views.copy(),
                label=None if label == -1 else label,
            )
        if f.read(1):
            raise DatasetError("trailing bytes after final record")
    finally:
        f.close()


def inspect_dataset(path):
    """Header fields plus a norm summary, without touching the records."""
    class_model, header, records = _open_dataset(path)
    records.close()
    norms = np.linalg.norm(class_model.text_embeddings.astype(np.float64), axis=1)
    return {
        "version": VERSION,
        "labels_present": bool(header["flags"] & FLAG_LABELS),
        "names_present": bool(header["flags"] & FLAG_NAMES),
        "D": header["D"],
        "J": header["J"],
        "B": header["B"],
        "N": header["N"],
        "class_names": list(class_model.class_names) if class_model.class_names else None,
        "text_norm_min": float(norms.min()),
        "text_norm_mean": float(norms.mean()),
        "text_norm_max": float(norms.max()),
    }
