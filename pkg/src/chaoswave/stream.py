"""Byte-stream stage of the cipher: binary32 serialization, self-keyed
diffusion and keyed mixing, each with its exact inverse.

Streams are handled as ``uint8`` numpy arrays.  Positions in comments are
1-based to match the recurrences.
"""

from __future__ import annotations

import numpy as np

SENTINEL = 170  # virtual S[len+1]
C0 = 85
KEY0 = 123


class SerializationError(ValueError):
    pass


def _as_bytes(stream) -> np.ndarray:
    if isinstance(stream, (bytes, bytearray, memoryview)):
        return np.frombuffer(bytes(stream), dtype=np.uint8).copy()
    arr = np.asarray(stream)
    if arr.ndim != 1:
        raise ValueError("byte streams must be 1-D")
    if arr.size and (arr.min() < 0 or arr.max() > 255):
        raise ValueError("byte stream values must lie in [0, 255]")
    return arr.astype(np.uint8)


def serialize(field) -> np.ndarray:
    """Row-major little-endian binary32 encoding, four bytes per value."""
    f = np.asarray(field, dtype=np.float64)
    if not np.all(np.isfinite(f)):
        raise SerializationError("field contains non-finite values")
    with np.errstate(over="ignore"):
        f32 = f.astype("<f4")
    if not np.all(np.isfinite(f32)):
        raise SerializationError("field value exceeds the binary32 range")
    return np.frombuffer(np.ascontiguousarray(f32).tobytes(), dtype=np.uint8).copy()


def deserialize(stream, M: int, N: int) -> np.ndarray:
    b = _as_bytes(stream)
    if b.size != 4 * M * N:
        raise SerializationError(f"expected {4 * M * N} bytes for a {M}x{N} field, got {b.size}")
    with np.errstate(invalid="ignore"):
        return np.frombuffer(b.tobytes(), dtype="<f4").reshape(M, N).astype(np.float64)


def self_diffuse(stream) -> np.ndarray:
    """Backward pass ``S[k-1] ^= S[k] ^ S[k+1]`` for ``k = len .. 2``."""
    s = bytearray(_as_bytes(stream).tobytes())
    n = len(s)
    if n < 2:
        raise ValueError("self diffusion needs a stream of at least two bytes")
    nxt = SENTINEL
    cur = s[n - 1]
    for j in range(n - 2, -1, -1):
        v = s[j] ^ cur ^ nxt
        s[j] = v
        nxt = cur
        cur = v
    return np.frombuffer(bytes(s), dtype=np.uint8).copy()


def inverse_self_diffuse(stream) -> np.ndarray:
    """Forward pass ``k = 2 .. len`` of the same recurrence.

    Every right-hand side is read before it is overwritten, so the pass
    collapses to a single vectorized expression.
    """
    t = _as_bytes(stream)
    if t.size < 2:
        raise ValueError("self diffusion needs a stream of at least two bytes")
    ext = np.append(t, np.uint8(SENTINEL))
    out = t.copy()
    out[:-1] = ext[:-2] ^ ext[1:-1] ^ ext[2:]
    return out


def rotl3(b):
    """8-bit circular left rotation by three; elementwise on arrays."""
    if isinstance(b, np.ndarray):
        b = b.astype(np.uint8)
        return ((b << 3) | (b >> 5)).astype(np.uint8)
    if not 0 <= b <= 255:
        raise ValueError("byte out of range")
    return ((b << 3) | (b >> 5)) & 0xFF


def _prev_keys(key: np.ndarray) -> np.ndarray:
    return np.concatenate([[KEY0], key[:-1]])[: key.size].astype(np.uint8)


def _check_lengths(s: np.ndarray, key: np.ndarray):
    if s.size != key.size:
        raise ValueError(f"stream length {s.size} does not match keystream length {key.size}")


def mix(stream, keystream) -> np.ndarray:
    """``C[i] = S[i] ^ key[i] ^ rotl3(key[i-1]) ^ C[i-1]`` with ``C[0]=85``, ``key[0]=123``."""
    s = _as_bytes(stream)
    key = _as_bytes(keystream)
    _check_lengths(s, key)
    d = s ^ key ^ rotl3(_prev_keys(key))
    return (np.bitwise_xor.accumulate(d) ^ np.uint8(C0)).astype(np.uint8)


def unmix(cipher, keystream) -> np.ndarray:
    c = _as_bytes(cipher)
    key = _as_bytes(keystream)
    _check_lengths(c, key)
    prev_c = np.concatenate([[C0], c[:-1]])[: c.size].astype(np.uint8)
    return (c ^ prev_c ^ key ^ rotl3(_prev_keys(key))).astype(np.uint8)
