import itertools

import pytest

from gamefuzz import ConfigError, GlobalParams, WorldMap, determine_strategy

WORLD3 = WorldMap(100, 100, keypoints=[(1, (10, 10)), (2, (50, 50)), (3, (90, 20))])


def brute_force_order(params):
    """Search every permutation of the selected ids for the one obeying the ordering rule."""
    chosen = [i + 1 for i, p in enumerate(params) if p.passed]
    prio = {i + 1: p.priority for i, p in enumerate(params)}

    def ordered(seq):
        return all(prio[a] > prio[b] or (prio[a] == prio[b] and a < b) for a, b in zip(seq, seq[1:]))

    matches = [perm for perm in itertools.permutations(chosen) if ordered(perm)]
    assert len(matches) == 1
    return matches[0]


def test_worked_example():
    strategy = determine_strategy([GlobalParams(True, 0), GlobalParams(False, 0), GlobalParams(True, 1)], WORLD3)
    assert strategy.ids == (3, 1)
    assert strategy.locations == (WORLD3.keypoints[2].location, WORLD3.keypoints[0].location)


def test_nothing_selected():
    assert determine_strategy([GlobalParams(False, 3)] * 3, WORLD3) == ()


def test_ties_break_by_id():
    params = [GlobalParams(True, 2), GlobalParams(True, 2), GlobalParams(True, 5)]
    assert determine_strategy(params, WORLD3).ids == (3, 1, 2) == brute_force_order(params)


def test_length_mismatch():
    with pytest.raises(ConfigError):
        determine_strategy([GlobalParams(True, 0)], WORLD3)


def test_priorities_non_increasing_over_all_small_configs():
    for flags in itertools.product([True, False], repeat=3):
        for prios in itertools.product(range(4), repeat=3):
            strategy = determine_strategy([GlobalParams(a, b) for a, b in zip(flags, prios)], WORLD3)
            assert len(strategy) == sum(flags)
            assert all(s.priority >= t.priority for s, t in zip(strategy, strategy[1:]))
