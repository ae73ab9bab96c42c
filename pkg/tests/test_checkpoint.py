import struct

import numpy as np
import pytest

from parseq_urdu.checkpoint import (
    MAGIC, VERSION, CheckpointError, UnsupportedVersion, read_checkpoint, write_checkpoint,
)


def test_round_trip(tmp_path):
    rng = np.random.default_rng(0)
    tensors = {"a": rng.standard_normal((2, 3)), "scalar": np.array(1.5), "ε.name": rng.standard_normal(4)}
    meta = {"step": "12", "vocab": "0627:Final,0628:Initial", "note": "a=b"}
    write_checkpoint(tmp_path / "c.ckpt", meta, tensors)
    got_meta, got = read_checkpoint(tmp_path / "c.ckpt")
    assert got_meta == meta
    assert list(got) == list(tensors)
    for k in tensors:
        assert got[k].shape == tensors[k].shape and np.array_equal(got[k], tensors[k])


def test_byte_layout(tmp_path):
    write_checkpoint(tmp_path / "c.ckpt", {"k": "v"}, {"w": np.array([[1.0, 2.0]])})
    raw = (tmp_path / "c.ckpt").read_bytes()
    expected = (MAGIC + struct.pack("<II", VERSION, 4) + b"k=v\n"
                + struct.pack("<I", 1) + b"w" + struct.pack("<I", 2) + struct.pack("<QQ", 1, 2)
                + struct.pack("<dd", 1.0, 2.0))
    assert raw == expected


def test_unknown_version_rejected(tmp_path):
    path = tmp_path / "c.ckpt"
    write_checkpoint(path, {}, {"w": np.zeros(2)})
    raw = bytearray(path.read_bytes())
    raw[8:12] = struct.pack("<I", VERSION + 1)
    path.write_bytes(bytes(raw))
    with pytest.raises(UnsupportedVersion) as exc:
        read_checkpoint(path)
    assert exc.value.version == VERSION + 1


def test_bad_magic_and_truncation(tmp_path):
    path = tmp_path / "c.ckpt"
    path.write_bytes(b"NOTACKPT" + bytes(8))
    with pytest.raises(CheckpointError):
        read_checkpoint(path)
    write_checkpoint(path, {}, {"w": np.zeros(5)})
    path.write_bytes(path.read_bytes()[:-3])
    with pytest.raises(CheckpointError, match="truncated"):
        read_checkpoint(path)


def test_bad_meta(tmp_path):
    with pytest.raises(CheckpointError):
        write_checkpoint(tmp_path / "c.ckpt", {"a=b": "1"}, {})
    with pytest.raises(CheckpointError):
        write_checkpoint(tmp_path / "c.ckpt", {"a": "1\n2"}, {})
