import copy

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from signedtri import sketch
from signedtri.graph import generate_er_signed
from signedtri.sketch import (
    BOTTOM,
    DestroyedSketchError,
    MissingScratchError,
    SketchBudgetError,
    SketchError,
    SketchState,
)
from signedtri.stream import StreamMode, to_stream

from replay import check_trajectory


def _fresh(m=2, seed=0):
    s = sketch.create(m, seed)
    s.insert((0, 1, 1), 0)
    return s


def test_insert_adds_both_directions():
    s = _fresh()
    assert s.contains((0, 1, 1)) and s.contains((1, 0, 1))
    assert not s.contains((0, 1, -1))
    assert len(s) == 4
    assert s.scratch == {2, 3}
    assert s.heads_at(1) == {0}


def test_scenario_three_is_silent():
    s = _fresh()
    state = s.rng.get_state()[2]
    assert s.query_pair((5, 6, 1), (6, 5, 1)) is BOTTOM
    assert s.rng.get_state()[2] == state
    assert len(s) == 4


def test_bottom_is_singleton_and_falsy():
    assert sketch._Bottom() is BOTTOM
    assert not BOTTOM
    assert repr(BOTTOM) == "BOTTOM"


def _frequencies(scenario, trials, seed):
    rng = np.random.RandomState(seed)
    plus = minus = bottom = 0
    for _ in range(trials):
        s = SketchState(2, rng)
        s.insert((0, 1, 1), 0)
        if scenario == 1:
            r = s.query_pair((0, 1, 1), (1, 0, 1))
        else:
            r = s.query_pair((0, 1, 1), (0, 7, 1))
        if r is BOTTOM:
            bottom += 1
            # deleted items must be gone and the size must drop accordingly
            assert len(s) == (2 if scenario == 1 else 3)
        elif r == 1:
            plus += 1
        else:
            minus += 1
    return plus, minus, bottom


def test_scenario_one_rate():
    n = 40_000
    plus, minus, _ = _frequencies(1, n, 1)
    p = 2 / 4
    assert minus == 0
    assert abs(plus / n - p) < 4 * np.sqrt(p * (1 - p) / n)


def test_scenario_two_rate():
    n = 40_000
    plus, minus, _ = _frequencies(2, n, 2)
    p = 1 / 4
    assert abs((plus + minus) / n - p) < 4 * np.sqrt(p * (1 - p) / n)
    hits = plus + minus
    assert abs(plus / hits - 0.5) < 4 * np.sqrt(0.25 / hits)


def test_destroyed_sketch_refuses_operations():
    rng = np.random.RandomState(0)
    while True:
        s = SketchState(1, rng)
        s.insert((0, 1, 1), 0)
        if s.query_pair((0, 1, 1), (1, 0, 1)) is not BOTTOM:
            break
    assert s.destroyed
    with pytest.raises(DestroyedSketchError):
        s.query_pair((0, 1, 1), (1, 0, 1))
    with pytest.raises(DestroyedSketchError):
        s.insert((0, 2, 1), 0)


def test_copy_is_forbidden():
    s = _fresh()
    with pytest.raises(SketchError):
        copy.copy(s)
    with pytest.raises(SketchError):
        copy.deepcopy(s)


def test_budget_and_scratch_errors():
    s = sketch.create(1, 0)
    sketch.insert(s, (0, 1, 1), 0)
    with pytest.raises(SketchBudgetError):
        s.insert((0, 2, 1), 1)
    s = sketch.create(3, 0)
    s.insert((0, 1, 1), 0)
    with pytest.raises(MissingScratchError):
        s.insert((0, 2, 1), 0)
    with pytest.raises(SketchError):
        s.insert((1, 0, 1), 1)
    with pytest.raises(ValueError):
        sketch.create(0, 0)
    with pytest.raises(ValueError):
        s.query_pair((0, 1, 1), (0, 1, 1))


def test_unsigned_mode_ignores_sign():
    s = sketch.create(2, 0, StreamMode.UNSIGNED_ALL)
    s.insert((0, 1, -1), 0)
    assert s.contains((0, 1, 1)) and s.contains((1, 0, -1))


def test_json_dump_round_trip():
    s = _fresh()
    d = sketch.load_json(s.to_json())
    assert d["m"] == 2 and d["scratch"] == {2, 3}
    assert d["edges"] == {(0, 1, 1), (1, 0, 1)}
    assert d["mode"] == "signed-t1" and d["destroyed"] is False


def test_replay_matches_on_random_prefixes():
    rng = np.random.default_rng(0)
    steps = 0
    for trial in range(200):
        n = int(rng.integers(4, 10))
        s = to_stream(generate_er_signed(n, 0.6, 0.5, trial), trial)
        if s.m == 0:
            continue
        steps += check_trajectory(s, int(rng.integers(1, 4)), trial, bool(trial % 2))
    assert steps > 500


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 8), st.integers(1, 5), st.integers(0, 10**6))
def test_replay_property(n, k, seed):
    s = to_stream(generate_er_signed(n, 0.7, 0.5, seed), seed)
    if s.m:
        check_trajectory(s, k, seed, True)
