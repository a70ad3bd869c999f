"""Piecewise linear chaotic map and the keystream extraction rules built on it.

Every random quantity the cipher needs (shuffle indices, key bytes, the
modulation sequence) is drawn from a single :class:`ChaosEngine` so that the
encrypt and decrypt paths consume states in exactly the same order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

WARMUP = 999
GUARD_OFFSET = 0.123456
GUARD_FALLBACK = 0.6180339887
Y_SCALE = 10_000
Y_MIN = 1
Y_MAX = 9_999


class ParameterError(ValueError):
    """Raised for key material outside its parameter domain."""


@dataclass(frozen=True)
class SecretKey:
    x0: float = 0.123456
    m: float = 0.489
    n1: int = 1
    n2: int = 2
    n3: int = 3
    n4: int = 4
    alpha: float = 0.2

    def __post_init__(self):
        for name in ("x0", "m", "alpha"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and 0.0 < v < 1.0):
                raise ParameterError(f"{name} must lie in the open interval (0, 1), got {v!r}")
        bounds = (self.n1, self.n2, self.n3, self.n4)
        if any(isinstance(n, bool) or not isinstance(n, (int, np.integer)) for n in bounds):
            raise ParameterError(f"stage bounds must be integers, got {bounds!r}")
        if not (0 < self.n1 < self.n2 < self.n3 < self.n4):
            raise ParameterError(f"stage bounds must satisfy 0 < n1 < n2 < n3 < n4, got {bounds!r}")

    def replace(self, **changes) -> "SecretKey":
        fields = {k: getattr(self, k) for k in ("x0", "m", "n1", "n2", "n3", "n4", "alpha")}
        fields.update(changes)
        return SecretKey(**fields)


def pwlcm(x: float, m: float) -> float:
    """One raw application of the skew-tent map, without the boundary guard."""
    if 0.0 < x < m:
        return x / m
    return (1.0 - x) / (1.0 - m)


def guard(raw: float, prev: float) -> float:
    """Pull a degenerate iterate (<= 0 or >= 1) back into (0, 1).

    The replacement depends only on the previous state, so it is deterministic.
    """
    if 0.0 < raw < 1.0:
        return raw
    r = 0.5 * (prev + GUARD_OFFSET)
    r = r - math.floor(r)
    if not 0.0 < r < 1.0:
        r = GUARD_FALLBACK
    return r


class ChaosEngine:
    """Iterated map state with a monotone iteration counter.

    ``index`` counts every iteration since construction, warm-up included, so
    the first state handed out by :meth:`next_state` carries index 1000.
    """

    def __init__(self, key: SecretKey, warmup: int = WARMUP):
        if not isinstance(key, SecretKey):
            raise TypeError("expected a SecretKey")
        self.x = float(key.x0)
        self.m = float(key.m)
        self.index = 0
        self.states(warmup)

    @property
    def consumed(self) -> int:
        """States handed out after warm-up."""
        return self.index - WARMUP

    def next_state(self) -> float:
        x = self.x
        self.x = guard(pwlcm(x, self.m), x)
        self.index += 1
        return self.x

    def states(self, n: int) -> np.ndarray:
        """Advance ``n`` times and return the visited states in order."""
        if n < 0:
            raise ValueError("n must be non-negative")
        out = []
        append = out.append
        x, m = self.x, self.m
        one_minus_m = 1.0 - m
        for _ in range(n):
            r = x / m if 0.0 < x < m else (1.0 - x) / one_minus_m
            if not 0.0 < r < 1.0:
                r = guard(r, x)
            append(r)
            x = r
        self.x = x
        self.index += n
        return np.array(out, dtype=np.float64)


def new_engine(key: SecretKey) -> ChaosEngine:
    return ChaosEngine(key)


def extract_index(x, k):
    """Map a state to an integer in ``[1, k]``; works elementwise on arrays."""
    if np.any(np.asarray(k) < 1):
        raise ValueError("k must be >= 1")
    if isinstance(x, np.ndarray) or isinstance(k, np.ndarray):
        return np.floor(np.asarray(x) * 1e10).astype(np.int64) % np.asarray(k, dtype=np.int64) + 1
    return math.floor(x * 1e10) % k + 1


def extract_key_byte(x):
    """Map a state to a key byte; works elementwise on arrays."""
    if isinstance(x, np.ndarray):
        return (np.floor(x * 1e15).astype(np.int64) % 256).astype(np.uint8)
    return math.floor(x * 1e15) % 256


@dataclass(frozen=True)
class ModSequence:
    """Four-decimal modulation values ``y`` (stored as ten-thousandths) and sign bits ``s``."""

    q: np.ndarray

    @property
    def y(self) -> np.ndarray:
        return self.q / Y_SCALE

    @property
    def s(self) -> np.ndarray:
        return (self.q > Y_SCALE // 2).astype(np.uint8)

    def __len__(self):
        return len(self.q)


def quantize_y(states: np.ndarray) -> np.ndarray:
    # half-away-from-zero on the binary64 product; v - floor(v) is exact here,
    # whereas floor(v + 0.5) could round the addition up
    v = np.asarray(states, dtype=np.float64) * Y_SCALE
    whole = np.floor(v)
    q = whole.astype(np.int64) + (v - whole >= 0.5)
    return np.clip(q, Y_MIN, Y_MAX)


def make_mod_sequence(engine: ChaosEngine, p: int) -> ModSequence:
    if p < 1:
        raise ValueError("p must be positive")
    return ModSequence(quantize_y(engine.states(p)))


def make_keystream(engine: ChaosEngine, shuffle_keys, total_len: int) -> np.ndarray:
    """Extend the shuffle-phase key bytes to ``total_len`` with fresh extractions."""
    head = np.asarray(shuffle_keys, dtype=np.uint8)
    extra = total_len - len(head)
    if extra < 0:
        raise ValueError(
            f"total_len {total_len} is shorter than the {len(head)} shuffle-phase key bytes"
        )
    tail = extract_key_byte(engine.states(extra))
    return np.concatenate([head, tail]).astype(np.uint8)
