"""Regenerate the 256x256 grayscale test corpus in tests/data from scikit-image samples."""

from pathlib import Path

import numpy as np
from skimage import color, data, transform

from chaoswave.pgm import write_pgm

OUT = Path(__file__).resolve().parents[1] / "tests" / "data"
SOURCES = ["camera", "astronaut", "coffee", "chelsea", "moon", "rocket"]


def to_gray_square(img: np.ndarray, size: int = 256) -> np.ndarray:
    if img.ndim == 3:
        img = color.rgb2gray(img)
    else:
        img = img / 255.0
    h, w = img.shape
    s = min(h, w)
    top, left = (h - s) // 2, (w - s) // 2
    img = img[top : top + s, left : left + s]
    img = transform.resize(img, (size, size), anti_aliasing=True)
    return np.clip(np.round(img * 255), 0, 255).astype(np.uint8)


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for name in SOURCES:
        write_pgm(to_gray_square(getattr(data, name)()), OUT / f"{name}.pgm")
        print("wrote", name)


if __name__ == "__main__":
    main()
