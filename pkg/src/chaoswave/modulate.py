"""Sign flipping and chaotic amplitude modulation of the approximation band."""

from __future__ import annotations

import numpy as np


def _same_length(a, b):
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")


def sign_flip(cA, s) -> np.ndarray:
    """Negate ``cA[j]`` wherever ``s[j]`` is set. Applying it twice is the identity."""
    cA = np.asarray(cA, dtype=np.float64)
    s = np.asarray(s)
    _same_length(cA, s)
    return np.where(s.astype(bool), -cA, cA)


def modulate(cA, y, alpha: float) -> np.ndarray:
    cA = np.asarray(cA, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    _same_length(cA, y)
    return alpha * y * cA


def demodulate(cA_mod, y, alpha: float) -> np.ndarray:
    cA_mod = np.asarray(cA_mod, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    _same_length(cA_mod, y)
    if np.any(y == 0):
        raise RuntimeError("modulation sequence contains a zero; the clamp invariant was violated")
    return cA_mod / (alpha * y)
