from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gamefuzz import ConfigError, PlayStyle, RngStream, sample_global, sample_local
from gamefuzz.playstyle import Categorical, LocalParams

from .conftest import make_style


def frequencies(values, support):
    counts = Counter(values)
    total = sum(counts.values())
    return {v: counts.get(v, 0) / total for v in support}


class TestRngStream:
    def test_same_seed_and_label_repeat(self):
        assert np.array_equal(RngStream(7, "a").uniform(10), RngStream(7, "a").uniform(10))

    def test_labels_are_independent(self):
        assert not np.array_equal(RngStream(7, "a").uniform(10), RngStream(7, "b").uniform(10))
        assert not np.array_equal(RngStream(7, "a").uniform(10), RngStream(8, "a").uniform(10))

    def test_spawn_extends_label(self):
        child = RngStream(3).spawn("global/1")
        assert child.label == "root/global/1"
        assert np.array_equal(child.uniform(4), RngStream(3, "root/global/1").uniform(4))

    @pytest.mark.parametrize("seed", [-1, 2**64])
    def test_seed_range(self, seed):
        with pytest.raises(ConfigError):
            RngStream(seed)


class TestSampleGlobal:
    def test_always_pass(self):
        params = sample_global(make_style(pass_probability=1.0), 5, RngStream(1))
        assert len(params) == 5
        assert all(p.passed for p in params)

    def test_never_pass(self):
        assert not any(p.passed for p in sample_global(make_style(pass_probability=0.0), 5, RngStream(1)))

    def test_uniform_priorities(self):
        rng = RngStream(11)
        style = make_style()
        draws = [p.priority for _ in range(10_000) for p in sample_global(style, 3, rng)]
        assert len(draws) == 30_000
        for value, freq in frequencies(draws, range(4)).items():
            assert freq == pytest.approx(0.25, abs=0.02), value

    def test_priority_weights_are_capped_at_keypoint_count(self):
        style = make_style(priorities={0: 1, 2: 1, 9: 5})
        draws = {p.priority for p in sample_global(style, 3, RngStream(2)) for _ in range(50)}
        assert draws <= {0, 2}

    def test_no_priority_in_range(self):
        with pytest.raises(ConfigError):
            sample_global(make_style(priorities={9: 1}), 3, RngStream(2))

    def test_needs_a_keypoint(self):
        with pytest.raises(ConfigError):
            sample_global(make_style(), 0, RngStream(2))


class TestSampleLocal:
    def test_zero_segments(self):
        assert sample_local(make_style(), 0, RngStream(1)) == []

    def test_degenerate_style_reproduces_worked_example(self):
        style = make_style(counts={1: 1}, dists={50: 1}, quadrants=(1, 0, 0, 0))
        assert sample_local(style, 6, RngStream(4)) == [LocalParams(1, 50, 1)] * 6

    def test_quadrant_frequencies(self):
        draws = [lp.quadrant for lp in sample_local(make_style(), 40_000, RngStream(5))]
        for q, freq in frequencies(draws, range(1, 5)).items():
            assert freq == pytest.approx(0.25, abs=0.02), q

    def test_negative_segments(self):
        with pytest.raises(ConfigError):
            sample_local(make_style(), -1, RngStream(1))


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**64 - 1), n=st.integers(1, 12), segments=st.integers(0, 20))
def test_sampling_is_pure_and_in_range(seed, n, segments):
    style = make_style(counts={0: 1, 50: 2, 99: 1}, dists={0: 1, 99: 1}, quadrants=(0.1, 0.2, 0.3, 0.4))
    g1 = sample_global(style, n, RngStream(seed, "g"))
    assert g1 == sample_global(style, n, RngStream(seed, "g"))
    assert all(isinstance(p.passed, bool) and 0 <= p.priority <= n for p in g1)
    l1 = sample_local(style, segments, RngStream(seed, "l"))
    assert l1 == sample_local(style, segments, RngStream(seed, "l"))
    assert all(0 <= lp.waypoint_count <= 99 and 0 <= lp.distance_pct <= 99 and 1 <= lp.quadrant <= 4 for lp in l1)


class TestPlayStyleConfig:
    base = {
        "name": "s",
        "pass_probability": 0.4,
        "priority_weights": "uniform",
        "waypoint_count_weights": {"0": 1, "3": 3},
        "distance_pct_weights": {"25": 1},
        "quadrant_weights": [0.25, 0.25, 0.25, 0.25],
    }

    def test_round_trip(self):
        style = PlayStyle.from_dict(self.base)
        again = PlayStyle.from_dict(style.to_dict())
        assert again == style
        assert style.waypoint_count_weights.as_dict() == {0: 0.25, 3: 0.75}

    @pytest.mark.parametrize("patch", [
        {"pass_probability": 1.5},
        {"waypoint_count_weights": {"100": 1}},
        {"distance_pct_weights": {}},
        {"distance_pct_weights": {"5": -1}},
        {"waypoint_count_weights": {"1": 0}},
        {"quadrant_weights": [0.5, 0.5, 0.5, 0.5]},
        {"quadrant_weights": [1, 0, 0]},
        {"priority_weights": "triangular"},
        {"colour": "red"},
    ])
    def test_rejects_bad_config(self, patch):
        with pytest.raises(ConfigError):
            PlayStyle.from_dict({**self.base, **patch})

    def test_categorical_normalises(self):
        dist = Categorical.from_weights({1: 2, 2: 6})
        assert sum(dist.probs) == pytest.approx(1.0, abs=1e-9)
        assert dist.probs == (0.25, 0.75)
