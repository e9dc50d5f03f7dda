import math
import random

import numpy as np

from dlsimon.middle import (init_from_difference, iter_states,
                            middle_correlation, propagate, propagate_batch)


def test_init_from_difference(simon32):
    st = init_from_difference((0, 0), simon32)
    assert np.all(st.left == 1.0) and np.all(st.right == 1.0)
    st = init_from_difference((0xFFFF, 0xFFFF), simon32)
    assert np.all(st.left == -1.0) and np.all(st.right == -1.0)
    st = init_from_difference((0x22, 0x8), simon32)
    assert st.left[1] == -1.0 and st.left[5] == -1.0
    assert st.right[3] == -1.0
    assert st.left.sum() == 12.0 and st.right.sum() == 14.0


def test_zero_difference_fixed_point(simon32):
    st = propagate(init_from_difference((0, 0), simon32), 7, simon32)
    assert np.all(st.left == 1.0) and np.all(st.right == 1.0)


def test_one_round_exhaustive_oracle(simon32, simon32_tables):
    rng = random.Random(31)
    spec = simon32
    x = simon32_tables.x
    fx = simon32_tables.fx

    def rl(v, t):
        t %= 16
        if t == 0:
            return v
        return ((v << np.uint64(t)) | (v >> np.uint64(16 - t))) \
            & np.uint64(0xFFFF)

    for _ in range(50):
        dl = rng.randrange(1 << 16)
        dr = rng.randrange(1 << 16)
        xa = x ^ np.uint64(dl)
        fdiff = fx ^ ((rl(xa, spec.a) & rl(xa, spec.b)) ^ rl(xa, spec.c))
        st = propagate(init_from_difference((dl, dr), spec), 1, spec)
        for i in range(16):
            p1 = float(((fdiff >> np.uint64(i)) & np.uint64(1)).mean())
            if (dr >> i) & 1:
                p1 = 1.0 - p1
            assert abs(st.left[i] - (1.0 - 2.0 * p1)) < 1e-12
            assert st.right[i] == 1.0 - 2.0 * ((dl >> i) & 1)


def test_entries_stay_bounded_and_compose(simon32):
    rng = random.Random(32)
    for _ in range(20):
        delta = (rng.randrange(1 << 16), rng.randrange(1 << 16))
        st = init_from_difference(delta, simon32)
        for out in iter_states(st, 6, simon32):
            assert np.all(np.abs(out.left) <= 1.0 + 1e-15)
            assert np.all(np.abs(out.right) <= 1.0 + 1e-15)
        a = propagate(init_from_difference(delta, simon32), 5, simon32)
        b = propagate(propagate(init_from_difference(delta, simon32), 2,
                                simon32), 3, simon32)
        assert np.allclose(a.left, b.left) and np.allclose(a.right, b.right)


def test_middle_correlation_masks(simon32):
    st = propagate(init_from_difference((0x22, 0x8), simon32), 5, simon32)
    assert middle_correlation(st, (0, 0), simon32) == 1.0
    r = middle_correlation(st, (0x100, 0x0), simon32)
    assert abs(-math.log2(abs(r)) - 2.73) < 0.01
    # signs are preserved; a selected zero entry yields exactly 0
    st1 = propagate(init_from_difference((0x1, 0x0), simon32), 1, simon32)
    zero_bits = [i for i in range(16) if st1.left[i] == 0.0]
    assert zero_bits
    assert middle_correlation(st1, (1 << zero_bits[0], 0), simon32) == 0.0


def test_two_round_deterministic_fixture(simon32):
    st = propagate(init_from_difference((0x22, 0x8), simon32), 2, simon32)
    assert middle_correlation(st, (0x44, 0x10), simon32) == 1.0


def test_fixture_simeck(simeck32):
    st = propagate(init_from_difference((0x20, 0x0), simeck32), 6, simeck32)
    r = middle_correlation(st, (0x10, 0x0), simeck32)
    assert abs(-math.log2(abs(r)) - 1.99) < 0.01


def test_fixture_simon48(simon48):
    st = propagate(init_from_difference((0x220, 0x80), simon48), 3, simon48)
    assert middle_correlation(st, (0x11, 0x4), simon48) == 1.0


def test_propagate_batch_matches_scalar(simon32):
    rng = random.Random(33)
    deltas = [(rng.randrange(1 << 16), rng.randrange(1 << 16))
              for _ in range(40)]
    left, right = propagate_batch(deltas, 4, simon32)
    for i, delta in enumerate(deltas):
        st = propagate(init_from_difference(delta, simon32), 4, simon32)
        assert np.array_equal(left[i], st.left)
        assert np.array_equal(right[i], st.right)
