"""Encrypt/decrypt orchestration and the on-disk ciphertext container."""

from __future__ import annotations

import struct
from dataclasses import dataclass, field

import numpy as np

from . import stream
from .chaos import ChaosEngine, ModSequence, ParameterError, SecretKey, WARMUP, make_keystream, make_mod_sequence
from .modulate import demodulate, modulate, sign_flip
from .permute import ShuffleSchedule, build_schedule, shuffle, unshuffle
from .wavelet import SubBands, check_image, dwt2, idwt2

MAGIC = b"CWC1"
VERSION = 1
MODE_EXACT = 0
_HEADER = struct.Struct(">4sBIIB")


class ContainerError(ValueError):
    pass


@dataclass(frozen=True)
class CipherBlob:
    M: int
    N: int
    payload: np.ndarray
    mode: int = MODE_EXACT
    version: int = VERSION

    def __post_init__(self):
        if self.mode != MODE_EXACT:
            raise ContainerError(f"unsupported mode byte {self.mode}")
        if len(self.payload) != 4 * self.M * self.N:
            raise ContainerError(
                f"payload holds {len(self.payload)} bytes, header implies {4 * self.M * self.N}"
            )

    def to_bytes(self) -> bytes:
        header = _HEADER.pack(MAGIC, self.version, self.M, self.N, self.mode)
        return header + np.asarray(self.payload, dtype=np.uint8).tobytes()

    @classmethod
    def from_bytes(cls, data: bytes) -> "CipherBlob":
        if len(data) < _HEADER.size:
            raise ContainerError("blob is shorter than its header")
        magic, version, M, N, mode = _HEADER.unpack_from(data)
        if magic != MAGIC:
            raise ContainerError(f"bad magic {magic!r}")
        if version != VERSION:
            raise ContainerError(f"unsupported container version {version}")
        body = data[_HEADER.size:]
        if len(body) != 4 * M * N:
            raise ContainerError(f"payload holds {len(body)} bytes, header implies {4 * M * N}")
        return cls(M=M, N=N, payload=np.frombuffer(body, dtype=np.uint8).copy(), mode=mode, version=version)

    def display_plane(self) -> np.ndarray:
        """First M*N payload bytes as an MxN image, the 2-D view used for statistics."""
        return np.asarray(self.payload[: self.M * self.N], dtype=np.uint8).reshape(self.M, self.N)


@dataclass
class ConsumptionLedger:
    """Chaotic-state index ranges consumed by each phase (half-open, absolute)."""

    phases: dict[str, tuple[int, int]] = field(default_factory=dict)

    def record(self, name: str, start: int, stop: int):
        self.phases[name] = (start, stop)

    def count(self, name: str) -> int:
        start, stop = self.phases[name]
        return stop - start

    @property
    def total(self) -> int:
        return max(stop for _, stop in self.phases.values())

    def is_contiguous(self) -> bool:
        cursor = 0
        for start, stop in self.phases.values():
            if start != cursor or stop < start:
                return False
            cursor = stop
        return True


@dataclass
class KeyMaterial:
    schedule: ShuffleSchedule
    modseq: ModSequence
    keystream: np.ndarray
    ledger: ConsumptionLedger


def derive_key_material(key: SecretKey, M: int, N: int) -> KeyMaterial:
    """Run the chaotic map through every phase for an MxN image.

    Encryption and decryption both call this, so they consume the same states.
    """
    p = (M // 2) * (N // 2)
    total_len = 4 * M * N
    if key.n4 * (p - 1) > total_len:
        raise ParameterError(
            f"n4={key.n4} yields {key.n4 * (p - 1)} shuffle key bytes, more than the {total_len}-byte stream"
        )
    ledger = ConsumptionLedger()
    engine = ChaosEngine(key)
    ledger.record("warmup", 0, engine.index)

    start = engine.index
    schedule = build_schedule(engine, p, key)
    ledger.record("shuffle", start, engine.index)

    start = engine.index
    modseq = make_mod_sequence(engine, p)
    ledger.record("modulation", start, engine.index)

    start = engine.index
    keystream = make_keystream(engine, schedule.key_bytes, total_len)
    ledger.record("keystream", start, engine.index)
    return KeyMaterial(schedule, modseq, keystream, ledger)


def _scramble(image: np.ndarray, km: KeyMaterial, alpha: float) -> np.ndarray:
    bands = dwt2(image)
    r, c = bands.shape
    flat = tuple(b.reshape(-1) for b in bands.planes())
    cA, cH, cV, cD = shuffle(flat, km.schedule)
    cA = modulate(sign_flip(cA, km.modseq.s), km.modseq.y, alpha)
    return idwt2(SubBands(*(b.reshape(r, c) for b in (cA, cH, cV, cD))))


def _unscramble(field: np.ndarray, km: KeyMaterial, alpha: float) -> np.ndarray:
    bands = dwt2(field)
    r, c = bands.shape
    cA, cH, cV, cD = (b.reshape(-1) for b in bands.planes())
    cA = sign_flip(demodulate(cA, km.modseq.y, alpha), km.modseq.s)
    planes = unshuffle((cA, cH, cV, cD), km.schedule)
    return idwt2(SubBands(*(b.reshape(r, c) for b in planes)))


def _check_gray(image) -> np.ndarray:
    img = check_image(image)
    if not np.issubdtype(img.dtype, np.integer):
        if not np.all(np.isfinite(img)) or np.any(img != np.round(img)):
            raise ValueError("pixels must be integers")
    if img.size and (img.min() < 0 or img.max() > 255):
        raise ValueError("pixels must lie in [0, 255]")
    return img.astype(np.uint8)


def round_to_pixels(field: np.ndarray) -> np.ndarray:
    """Round half away from zero and clamp to [0, 255]; NaN maps to 0."""
    f = np.nan_to_num(np.asarray(field, dtype=np.float64), nan=0.0, posinf=255.0, neginf=0.0)
    r = np.where(f >= 0, np.floor(f + 0.5), np.ceil(f - 0.5))
    return np.clip(r, 0, 255).astype(np.uint8)


def encrypt(image, key: SecretKey, *, return_ledger: bool = False):
    img = _check_gray(image)
    M, N = img.shape
    km = derive_key_material(key, M, N)
    field = _scramble(img, km, key.alpha)
    s = stream.self_diffuse(stream.serialize(field))
    blob = CipherBlob(M=M, N=N, payload=stream.mix(s, km.keystream))
    return (blob, km.ledger) if return_ledger else blob


def decrypt(blob: CipherBlob, key: SecretKey, *, return_ledger: bool = False):
    if isinstance(blob, (bytes, bytearray)):
        blob = CipherBlob.from_bytes(bytes(blob))
    M, N = blob.M, blob.N
    check_image(np.empty((M, N), dtype=np.uint8))
    km = derive_key_material(key, M, N)
    s = stream.inverse_self_diffuse(stream.unmix(blob.payload, km.keystream))
    field = stream.deserialize(s, M, N)
    with np.errstate(all="ignore"):
        plain = round_to_pixels(_unscramble(field, km, key.alpha))
    return (plain, km.ledger) if return_ledger else plain


def shuffled_preview(image, key: SecretKey) -> np.ndarray:
    """The synthesized wavelet-domain field before any byte-level diffusion."""
    img = _check_gray(image)
    km = derive_key_material(key, *img.shape)
    return _scramble(img, km, key.alpha)


def normalize_for_display(field: np.ndarray) -> np.ndarray:
    f = np.asarray(field, dtype=np.float64)
    lo, hi = f.min(), f.max()
    if hi == lo:
        return np.zeros(f.shape, dtype=np.uint8)
    return round_to_pixels((f - lo) * (255.0 / (hi - lo)))
