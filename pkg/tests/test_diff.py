import math
import random

import pytest

from dlsimon.diff import (DiffTrail, best_diff_weights, diff_round_weight,
                          enumerate_diff_trails_from, enumerate_transitions,
                          iter_diff_trails_from, iter_min_weight_differences,
                          search_best_diff_trail, search_diff_trail_between)


def test_round_weight_trivial_cases(simon32):
    assert diff_round_weight(0, 0, simon32) == 0
    assert diff_round_weight(0, 5, simon32) is None
    # all-ones input: weight 15 whenever wt(gamma) is even
    beta = 0xFFFF ^ 0b11
    assert diff_round_weight(0xFFFF, beta, simon32) == 15
    assert diff_round_weight(0xFFFF, 0xFFFF ^ 0b1, simon32) is None
    assert diff_round_weight(0x0001, 0x0004, simon32) == 2


def test_round_weight_exhaustive_oracle(simon32, simon32_tables):
    rng = random.Random(11)
    checked = 0
    while checked < 50:
        alpha = rng.randrange(1, 1 << 16)
        trs = enumerate_transitions(alpha, simon32, 16)
        tr = rng.choice(trs)
        count = simon32_tables.diff_count(alpha, tr.beta)
        assert count == 1 << (16 - tr.weight)
        bad = rng.randrange(1 << 16)
        if diff_round_weight(alpha, bad, simon32) is None:
            assert simon32_tables.diff_count(alpha, bad) == 0
        checked += 1


def test_enumerate_transitions(simon32):
    zero = enumerate_transitions(0, simon32, 0)
    assert len(zero) == 1 and zero[0].beta == 0 and zero[0].weight == 0
    trs = enumerate_transitions(0x0001, simon32, 16)
    assert len(trs) == 4 and all(t.weight == 2 for t in trs)
    assert [t.beta for t in trs] == sorted(t.beta for t in trs)
    assert trs[0].beta == 0x0004


def test_probability_mass_sums_to_one(simon32):
    rng = random.Random(12)
    for _ in range(100):
        alpha = rng.randrange(1, 1 << 16)
        trs = enumerate_transitions(alpha, simon32, 16)
        assert len(trs) == 1 << trs[0].weight  # sum of 2^-w terms is 1


def test_best_trail_weights_match_published(simon32, simeck32):
    assert best_diff_weights(simon32, 7) == [0, 0, 2, 4, 6, 8, 12, 14]
    tr5 = search_best_diff_trail(5, simon32)
    assert tr5.weight == 8
    tr7 = search_best_diff_trail(7, simon32)
    assert tr7.weight == 14
    tr = search_best_diff_trail(6, simeck32, delta_in=(0x4, 0x800A))
    assert tr.weight == 12
    assert tr.delta_out == (0x1, 0x8000)


def test_trail_validation_and_additivity(simon32):
    tr = search_best_diff_trail(5, simon32)
    assert tr.validate(simon32) == tr.weight
    total = sum(diff_round_weight(tr.alphas[r + 1],
                                  tr.alphas[r + 2] ^ tr.alphas[r], simon32)
                for r in range(tr.rounds))
    assert total == tr.weight
    with pytest.raises(ValueError):
        DiffTrail(tr.alphas, tr.weight + 1).validate(simon32)


def test_search_not_found_within_cap(simon32):
    assert search_best_diff_trail(5, simon32, weight_cap=7) is None


def test_enumerate_from_includes_best_and_fixture(simon32):
    entries = enumerate_diff_trails_from((0x800, 0x2208), 5, 16, simon32)
    assert entries[0][1] == 8  # the best weight is present
    assert ((0x2200, 0x800), 8) in entries
    # per-trail probability mass never exceeds 1
    mass = sum(math.ldexp(1.0, -w) for _, w in entries)
    assert mass <= 1.0 + 1e-12


def test_enumerate_from_one_round_matches_transitions(simon32):
    delta_in = (0x0001, 0x0500)
    entries = enumerate_diff_trails_from(delta_in, 1, 16 * 1, simon32)
    trs = enumerate_transitions(0x0001, simon32, 16)
    expected = sorted(((t.beta ^ 0x0500, 0x0001), t.weight) for t in trs)
    assert sorted(entries) == expected


def test_trail_between_endpoints(simon32):
    tr = search_diff_trail_between((0x8, 0x22), (0x22, 0x8), 5, 8, simon32)
    assert tr is not None and tr.weight == 8
    assert tr.delta_in == (0x8, 0x22) and tr.delta_out == (0x22, 0x8)


def test_min_weight_difference_stream_orders_by_weight(simon32):
    seen = {}
    weights = []
    for trail, w in iter_min_weight_differences(3, simon32, 8):
        weights.append(w)
        delta = trail.delta_out
        if delta not in seen:
            seen[delta] = w
        trail.validate(simon32)
    assert weights == sorted(weights)
    # each first occurrence is that difference's minimum weight
    for trail, w in iter_min_weight_differences(3, simon32, 8):
        assert seen[trail.delta_out] <= w
