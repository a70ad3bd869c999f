"""Statistical evaluation of plain/cipher image pairs.

Adjacent-pixel correlation, Shannon entropy, NPCR, histogram uniformity and
the key-sensitivity experiment.  Pair sampling uses its own seeded LCG so the
tables are reproducible and never touch the cipher's chaotic state.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy import stats

from .chaos import ParameterError, SecretKey
from .pipeline import CipherBlob, decrypt, encrypt

DIRECTIONS = {"horizontal": (0, 1), "vertical": (1, 0), "diagonal": (1, 1)}


class UndefinedCorrelationError(ValueError):
    pass


class Lcg64:
    """64-bit linear congruential generator (Knuth's MMIX constants)."""

    A = 6364136223846793005
    C = 1442695040888963407
    MASK = (1 << 64) - 1

    def __init__(self, seed: int = 0):
        self.state = seed & self.MASK

    def next_u64(self) -> int:
        self.state = (self.A * self.state + self.C) & self.MASK
        return self.state

    def below(self, n: int) -> int:
        # high 32 bits; the low bits of a power-of-two LCG have short periods
        return ((self.next_u64() >> 32) * n) >> 32


def correlation(pairs) -> float:
    pairs = np.asarray(pairs, dtype=np.float64)
    if pairs.ndim != 2 or pairs.shape[1] != 2 or len(pairs) < 2:
        raise ValueError("need at least two (x, y) pairs")
    x = pairs[:, 0] - pairs[:, 0].mean()
    y = pairs[:, 1] - pairs[:, 1].mean()
    sxx = np.dot(x, x)
    syy = np.dot(y, y)
    if sxx == 0 or syy == 0:
        raise UndefinedCorrelationError("correlation is undefined for a zero-variance coordinate")
    rho = float(np.dot(x, y) / (math.sqrt(sxx) * math.sqrt(syy)))
    return max(-1.0, min(1.0, rho))


def sample_adjacent_pairs(image, direction: str, count: int = 1000, seed: int = 0) -> np.ndarray:
    if count <= 0:
        raise ValueError("count must be positive")
    try:
        dr, dc = DIRECTIONS[direction]
    except KeyError:
        raise ValueError(f"direction must be one of {sorted(DIRECTIONS)}") from None
    img = np.asarray(image)
    rows, cols = img.shape[0] - dr, img.shape[1] - dc
    if rows <= 0 or cols <= 0:
        raise ValueError("image too small to supply adjacent pairs")
    rng = Lcg64(seed)
    out = np.empty((count, 2), dtype=np.int64)
    for i in range(count):
        r = rng.below(rows)
        c = rng.below(cols)
        out[i] = img[r, c], img[r + dr, c + dc]
    return out


def adjacent_correlations(image, count: int = 1000, seed: int = 0) -> dict[str, float]:
    return {d: correlation(sample_adjacent_pairs(image, d, count, seed)) for d in DIRECTIONS}


def _counts(data) -> np.ndarray:
    b = np.asarray(data).ravel()
    if b.size == 0:
        raise ValueError("need a nonempty sample")
    return np.bincount(b.astype(np.int64), minlength=256)


def entropy(data) -> float:
    counts = _counts(data)
    p = counts[counts > 0] / counts.sum()
    return float(max(0.0, -(p * np.log2(p)).sum()))


def npcr(P, C) -> float:
    P = np.asarray(P)
    C = np.asarray(C)
    if P.shape != C.shape:
        raise ValueError(f"size mismatch: {P.shape} vs {C.shape}")
    return 100.0 * float(np.count_nonzero(P != C)) / P.size


@dataclass
class Histogram:
    counts: np.ndarray
    chi_square: float
    dof: int = 255

    @property
    def p_value(self) -> float:
        return float(stats.chi2.sf(self.chi_square, self.dof))

    def is_uniform(self, significance: float = 0.001) -> bool:
        return self.p_value >= significance


def histogram(data) -> Histogram:
    counts = _counts(data)
    expected = counts.sum() / 256
    chi2 = float(((counts - expected) ** 2).sum() / expected)
    return Histogram(counts=counts, chi_square=chi2)


@dataclass
class MetricsReport:
    label: str
    correlation: dict[str, float]
    entropy: float
    npcr: float
    histogram: list[int]
    chi_square: float
    dof: int = 255
    p_value: float = field(default=float("nan"))

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def rows(self) -> list[tuple[str, str, float]]:
        out = [(self.label, f"correlation_{d}", v) for d, v in self.correlation.items()]
        out += [
            (self.label, "entropy", self.entropy),
            (self.label, "npcr", self.npcr),
            (self.label, "chi_square", self.chi_square),
            (self.label, "chi_square_p", self.p_value),
        ]
        return out


def build_report(label: str, plain, target_plane, target_stream=None, *, count=1000, seed=0) -> MetricsReport:
    """Metrics for ``target`` against ``plain``.

    ``target_plane`` is the 2-D view used for correlation and NPCR;
    ``target_stream`` (defaults to the plane) feeds entropy and the histogram.
    """
    target_stream = target_plane if target_stream is None else target_stream
    hist = histogram(target_stream)
    try:
        corr = adjacent_correlations(target_plane, count, seed)
    except UndefinedCorrelationError:
        corr = {d: float("nan") for d in DIRECTIONS}
    return MetricsReport(
        label=label,
        correlation=corr,
        entropy=entropy(target_stream),
        npcr=npcr(plain, target_plane),
        histogram=hist.counts.tolist(),
        chi_square=hist.chi_square,
        dof=hist.dof,
        p_value=hist.p_value,
    )


def cipher_report(plain, blob: CipherBlob, *, label="cipher", count=1000, seed=0) -> MetricsReport:
    return build_report(label, plain, blob.display_plane(), blob.payload, count=count, seed=seed)


def key_sensitivity(image, key: SecretKey, delta: float, *, count=1000, seed=0) -> MetricsReport:
    """Encrypt with ``key``, decrypt with ``x0 + delta``, and score the result against the plain image."""
    try:
        wrong_key = key.replace(x0=key.x0 + delta)
    except ParameterError as exc:
        raise ParameterError(f"perturbed key leaves the parameter domain: {exc}") from None
    wrong = decrypt(encrypt(image, key), wrong_key)
    return build_report(f"x0{delta:+g}", image, wrong, count=count, seed=seed)


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["image", "metric", "value"])
    for rep in reports:
        for label, metric, value in rep.rows():
            w.writerow([label, metric, repr(float(value))])
    return buf.getvalue()


def histogram_csv(counts) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["value", "count"])
    w.writerows(enumerate(int(c) for c in counts))
    return buf.getvalue()


def pairs_csv(pairs) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "y"])
    w.writerows(np.asarray(pairs).tolist())
    return buf.getvalue()
