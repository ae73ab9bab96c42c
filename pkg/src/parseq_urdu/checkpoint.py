"""Binary checkpoint files.

Layout (all integers little-endian)::

    b"PARSEQCK"
    u32  format version
    u32  byte length of the config block
    ...  config block: UTF-8 ``key=value`` lines, LF-terminated
    then, until end of file, one record per tensor:
    u32  byte length of the name, then the UTF-8 name
    u32  rank
    u64  extent, ``rank`` times
    f64  values, row-major
"""

from __future__ import annotations

import os
import struct
from pathlib import Path

import numpy as np

from .errors import ParseqError

MAGIC = b"PARSEQCK"
VERSION = 1


class CheckpointError(ParseqError):
    pass


class UnsupportedVersion(CheckpointError):
    def __init__(self, path, version: int):
        super().__init__(f"{path}: checkpoint format version {version} unsupported "
                         f"(this build reads version {VERSION})")
        self.version = version


def _config_block(meta: dict[str, str]) -> bytes:
    lines = []
    for key, value in meta.items():
        key, value = str(key), str(value)
        if "=" in key or "\n" in key or "\n" in value or not key:
            raise CheckpointError(f"config entry {key!r} cannot be stored as key=value")
        lines.append(f"{key}={value}\n")
    return "".join(lines).encode("utf-8")


def write_checkpoint(path, meta: dict[str, str], tensors: dict[str, np.ndarray]) -> None:
    """Write atomically: a partially written file never replaces a good one."""
    path = Path(path)
    block = _config_block(meta)
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<II", VERSION, len(block)))
        fh.write(block)
        for name, arr in tensors.items():
            arr = np.asarray(arr, dtype="<f8")
            raw = name.encode("utf-8")
            fh.write(struct.pack("<I", len(raw)) + raw)
            fh.write(struct.pack("<I", arr.ndim))
            fh.write(struct.pack(f"<{arr.ndim}Q", *arr.shape))
            fh.write(arr.tobytes(order="C"))
    os.replace(tmp, path)


def read_checkpoint(path) -> tuple[dict[str, str], dict[str, np.ndarray]]:
    """Return (config entries, tensors by name)."""
    with open(path, "rb") as fh:
        data = fh.read()
    if data[:len(MAGIC)] != MAGIC:
        raise CheckpointError(f"{path}: not a checkpoint (bad magic)")
    pos = len(MAGIC)

    def take(n: int) -> bytes:
        nonlocal pos
        if pos + n > len(data):
            raise CheckpointError(f"{path}: truncated at byte {pos}")
        chunk = data[pos:pos + n]
        pos += n
        return chunk

    (version,) = struct.unpack("<I", take(4))
    if version != VERSION:
        raise UnsupportedVersion(path, version)
    (block_len,) = struct.unpack("<I", take(4))
    meta = {}
    for line in take(block_len).decode("utf-8").splitlines():
        key, sep, value = line.partition("=")
        if not sep:
            raise CheckpointError(f"{path}: malformed config line {line!r}")
        meta[key] = value
    tensors = {}
    while pos < len(data):
        (name_len,) = struct.unpack("<I", take(4))
        name = take(name_len).decode("utf-8")
        if name in tensors:
            raise CheckpointError(f"{path}: tensor {name!r} appears twice")
        (rank,) = struct.unpack("<I", take(4))
        dims = struct.unpack(f"<{rank}Q", take(8 * rank))
        count = int(np.prod(dims, dtype=np.int64))
        values = np.frombuffer(take(8 * count), dtype="<f8")
        tensors[name] = values.astype(np.float64).reshape(dims)
    return meta, tensors
