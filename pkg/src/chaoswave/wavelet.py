"""Single-level orthonormal 2-D Haar transform on 2x2 pixel blocks."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class ShapeError(ValueError):
    pass


@dataclass
class SubBands:
    cA: np.ndarray
    cH: np.ndarray
    cV: np.ndarray
    cD: np.ndarray

    def __post_init__(self):
        shapes = {np.shape(b) for b in self.planes()}
        if len(shapes) != 1:
            raise ShapeError(f"sub-band planes disagree in shape: {sorted(shapes)}")
        if len(next(iter(shapes))) != 2:
            raise ShapeError("sub-band planes must be 2-D")

    def planes(self):
        return (self.cA, self.cH, self.cV, self.cD)

    @property
    def shape(self) -> tuple[int, int]:
        return self.cA.shape

    @property
    def p(self) -> int:
        r, c = self.shape
        return r * c


def check_image(image) -> np.ndarray:
    arr = np.asarray(image)
    if arr.ndim != 2:
        raise ShapeError(f"expected a 2-D grayscale plane, got shape {arr.shape}")
    M, N = arr.shape
    if M == 0 or N == 0 or M % 2 or N % 2:
        raise ShapeError(f"image dimensions must be positive and even, got {M}x{N}")
    return arr


def dwt2(image) -> SubBands:
    x = check_image(image).astype(np.float64)
    a = x[0::2, 0::2]
    b = x[0::2, 1::2]
    c = x[1::2, 0::2]
    d = x[1::2, 1::2]
    return SubBands(
        cA=(a + b + c + d) / 2,
        cH=(a - b + c - d) / 2,
        cV=(a + b - c - d) / 2,
        cD=(a - b - c + d) / 2,
    )


def idwt2(bands: SubBands) -> np.ndarray:
    """Synthesize the real-valued field; no rounding or clamping is applied."""
    cA, cH, cV, cD = (np.asarray(b, dtype=np.float64) for b in bands.planes())
    if not (cA.shape == cH.shape == cV.shape == cD.shape):
        raise ShapeError("sub-band planes disagree in shape")
    r, c = cA.shape
    out = np.empty((2 * r, 2 * c), dtype=np.float64)
    out[0::2, 0::2] = (cA + cH + cV + cD) / 2
    out[0::2, 1::2] = (cA - cH + cV - cD) / 2
    out[1::2, 0::2] = (cA + cH - cV - cD) / 2
    out[1::2, 1::2] = (cA - cH - cV + cD) / 2
    return out
