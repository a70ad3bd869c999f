import math
from collections import Counter
from itertools import permutations

import numpy as np
import pytest
from scipy import stats

from chaoswave.chaos import SecretKey, new_engine
from chaoswave.permute import (
    PLANES,
    ShuffleSchedule,
    apply_swaps,
    build_schedule,
    shuffle,
    unshuffle,
)
from chaoswave.wavelet import ShapeError


def scripted(ms_rows, p, bounds=(1, 2, 3, 4)):
    ms = np.array(ms_rows, dtype=np.int64)
    return ShuffleSchedule(p=p, bounds=bounds, ms=ms, key_bytes=np.zeros(ms.size, np.uint8))


def test_scripted_swaps_hand_trace():
    assert apply_swaps([10, 20, 30, 40], [(4, 2), (3, 3), (2, 1)]) == [40, 10, 30, 20]
    assert apply_swaps([40, 10, 30, 20], [(2, 1), (3, 3), (4, 2)]) == [10, 20, 30, 40]


def test_scripted_schedule_through_shuffle():
    # only cA takes part in stage 4; stages 1-3 are identity
    sched = scripted([[4, 3, 2]] * 3 + [[2, 3, 1]], p=4)
    a = np.array([10.0, 20, 30, 40])
    out = shuffle((a, a, a, a), sched)
    assert out[0].tolist() == [40, 10, 30, 20]
    assert all(o.tolist() == [10, 20, 30, 40] for o in out[1:])
    back = unshuffle(out, sched)
    assert all(b.tolist() == [10, 20, 30, 40] for b in back)


def test_identity_schedule():
    p = 6
    sched = scripted([list(range(p, 1, -1))] * 4, p=p)
    arrs = tuple(np.arange(p, dtype=float) + i for i in range(4))
    assert all(np.array_equal(x, y) for x, y in zip(shuffle(arrs, sched), arrs))


def test_single_transposition_is_involution():
    arr = [1, 2, 3, 4, 5]
    apply_swaps(arr, [(5, 2)])
    apply_swaps(arr, [(5, 2)])
    assert arr == [1, 2, 3, 4, 5]


def test_schedule_shape_for_p2(key):
    sched = build_schedule(new_engine(key), 2, key)
    assert sched.ms.shape == (4, 1)
    assert len(sched.key_bytes) == 4
    assert [sched.swaps(s) for s in range(1, 5)] == [[(2, int(sched.ms[s, 0]))] for s in range(4)]


def test_schedule_ranges_and_consumption(key):
    p = 300
    eng = new_engine(key)
    sched = build_schedule(eng, p, key)
    assert eng.index == 999 + 4 * (p - 1)
    assert len(sched.key_bytes) == 4 * (p - 1)
    for stage in range(1, 5):
        pairs = sched.swaps(stage)
        assert [k for k, _ in pairs] == list(range(p, 1, -1))
        assert all(1 <= m <= k for k, m in pairs)


def test_schedule_matches_state_by_state_draws(key):
    from chaoswave.chaos import extract_index, extract_key_byte

    p = 50
    sched = build_schedule(new_engine(key), p, key)
    eng = new_engine(key)
    for stage in range(1, 5):
        for count in range(1, p):
            x = eng.next_state()
            k = p - count + 1
            assert sched.swaps(stage)[count - 1] == (k, extract_index(x, k))
            assert sched.key_bytes[(stage - 1) * (p - 1) + count - 1] == extract_key_byte(x)


def test_schedule_determinism(key):
    a = build_schedule(new_engine(key), 128, key)
    b = build_schedule(new_engine(key), 128, key)
    assert np.array_equal(a.ms, b.ms) and np.array_equal(a.key_bytes, b.key_bytes)


def test_p_below_two_rejected(key):
    with pytest.raises(ValueError):
        build_schedule(new_engine(key), 1, key)


def test_shape_errors(key):
    sched = build_schedule(new_engine(key), 8, key)
    good = np.zeros(8)
    with pytest.raises(ShapeError):
        shuffle((good, good, good, np.zeros(7)), sched)
    with pytest.raises(ShapeError):
        unshuffle((good, good, good), sched)


def test_matches_literal_swap_loop(rng):
    key = SecretKey(n1=2, n2=3, n3=5, n4=7)
    p = 97
    sched = build_schedule(new_engine(key), p, key)
    arrs = tuple(rng.normal(size=p) for _ in range(4))
    lists = {pl: a.tolist() for pl, a in zip(PLANES, arrs)}
    for stage in range(1, sched.stages + 1):
        for pl in sched.participants(stage):
            apply_swaps(lists[pl], sched.swaps(stage))
    got = shuffle(arrs, sched)
    for pl, g in zip(PLANES, got):
        assert g.tolist() == lists[pl]


def test_round_trip_and_multiset(rng, key):
    p = 1024
    sched = build_schedule(new_engine(key), p, key)
    arrs = tuple(rng.normal(size=p) for _ in range(4))
    out = shuffle(arrs, sched)
    for a, o in zip(arrs, out):
        assert np.array_equal(np.sort(a), np.sort(o))
        assert not np.array_equal(a, o)
    back = unshuffle(out, sched)
    assert all(np.array_equal(a, b) for a, b in zip(arrs, back))


def test_stage_participation_counts(key):
    sched = build_schedule(new_engine(key), 16, key)
    applied = Counter()
    for stage in range(1, sched.stages + 1):
        for pl in sched.participants(stage):
            applied[pl] += len(sched.swaps(stage))
    assert applied == {"cA": 4 * 15, "cV": 3 * 15, "cH": 2 * 15, "cD": 1 * 15}


def test_permutation_uniformity_smoke():
    """Induced cA permutation of 8 elements over many keys; chi-square over all 8! cells."""
    n_keys = math.factorial(8)  # one expected hit per cell keeps this under half a minute
    cells = {perm: i for i, perm in enumerate(permutations(range(8)))}
    counts = np.zeros(len(cells), dtype=np.int64)
    base = np.arange(8)
    for i in range(n_keys):
        key = SecretKey(x0=(i + 0.5) / n_keys)
        sched = build_schedule(new_engine(key), 8, key)
        perm = shuffle((base, base, base, base), sched)[0]
        counts[cells[tuple(perm.tolist())]] += 1
    expected = n_keys / len(cells)
    chi2 = float(((counts - expected) ** 2).sum() / expected)
    p_value = stats.chi2.sf(chi2, len(cells) - 1)
    assert p_value > 0.001, (chi2, p_value)
