"""Staged chaotic Fisher-Yates shuffling of the four sub-band arrays.

Stage ``xi`` (1-based) runs ``p - 1`` swaps, ``k = p, p-1, ..., 2`` against a
chaotically drawn ``m`` in ``[1, k]``.  Which planes take part in a stage
depends on the stage bounds: cD only in stages ``<= n1``, cH in ``<= n2``,
cV in ``<= n3`` and cA in every stage up to ``n4``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chaos import ChaosEngine, SecretKey, extract_index, extract_key_byte
from .wavelet import ShapeError

PLANES = ("cA", "cH", "cV", "cD")


@dataclass(frozen=True)
class ShuffleSchedule:
    p: int
    bounds: tuple[int, int, int, int]
    # ms[stage, t] pairs with k = p - t for t = 0 .. p-2
    ms: np.ndarray
    key_bytes: np.ndarray

    @property
    def stages(self) -> int:
        return self.bounds[3]

    @property
    def ks(self) -> np.ndarray:
        return np.arange(self.p, 1, -1, dtype=np.int64)

    def swaps(self, stage: int) -> list[tuple[int, int]]:
        """The ``(k, m)`` pairs of 1-based ``stage``, in application order."""
        return list(zip(self.ks.tolist(), self.ms[stage - 1].tolist()))

    def plane_stages(self, plane: str) -> int:
        """Number of leading stages that ``plane`` participates in."""
        n1, n2, n3, n4 = self.bounds
        return {"cA": n4, "cH": n2, "cV": n3, "cD": n1}[plane]

    def participants(self, stage: int) -> tuple[str, ...]:
        return tuple(pl for pl in PLANES if stage <= self.plane_stages(pl))


def build_schedule(engine: ChaosEngine, p: int, key: SecretKey) -> ShuffleSchedule:
    if p < 2:
        raise ValueError(f"need at least two elements per sub-band to shuffle, got p={p}")
    ks = np.arange(p, 1, -1, dtype=np.int64)
    ms = np.empty((key.n4, p - 1), dtype=np.int64)
    keys = np.empty((key.n4, p - 1), dtype=np.uint8)
    for stage in range(key.n4):
        xs = engine.states(p - 1)
        ms[stage] = extract_index(xs, ks)
        keys[stage] = extract_key_byte(xs)
    return ShuffleSchedule(
        p=p,
        bounds=(key.n1, key.n2, key.n3, key.n4),
        ms=ms,
        key_bytes=keys.reshape(-1),
    )


def apply_swaps(arr, pairs):
    """Swap ``arr[k] <-> arr[m]`` (1-based) for each pair, in place."""
    for k, m in pairs:
        arr[k - 1], arr[m - 1] = arr[m - 1], arr[k - 1]
    return arr


def stage_permutation(schedule: ShuffleSchedule, stage: int) -> np.ndarray:
    """Gather indices equivalent to running ``stage``'s swaps: ``out = arr[perm]``."""
    perm = list(range(schedule.p))
    apply_swaps(perm, schedule.swaps(stage))
    return np.asarray(perm, dtype=np.int64)


def plane_permutations(schedule: ShuffleSchedule) -> dict[str, np.ndarray]:
    idx = np.arange(schedule.p, dtype=np.int64)
    cumulative = []
    for stage in range(1, schedule.stages + 1):
        idx = idx[stage_permutation(schedule, stage)]
        cumulative.append(idx)
    return {pl: cumulative[schedule.plane_stages(pl) - 1] for pl in PLANES}


def _check(arrays, schedule):
    if len(arrays) != 4:
        raise ShapeError("expected four sub-band arrays (cA, cH, cV, cD)")
    for a in arrays:
        if np.ndim(a) != 1 or len(a) != schedule.p:
            raise ShapeError(f"each array must be 1-D of length {schedule.p}")


def shuffle(arrays, schedule: ShuffleSchedule) -> tuple[np.ndarray, ...]:
    """Shuffle flattened ``(cA, cH, cV, cD)``; returns new arrays."""
    _check(arrays, schedule)
    perms = plane_permutations(schedule)
    return tuple(np.asarray(a)[perms[pl]] for pl, a in zip(PLANES, arrays))


def unshuffle(arrays, schedule: ShuffleSchedule) -> tuple[np.ndarray, ...]:
    _check(arrays, schedule)
    perms = plane_permutations(schedule)
    out = []
    for pl, a in zip(PLANES, arrays):
        a = np.asarray(a)
        restored = np.empty_like(a)
        restored[perms[pl]] = a
        out.append(restored)
    return tuple(out)
