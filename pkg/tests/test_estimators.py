import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from signedtri.analytics import oracle_k_split
from signedtri.estimators import (
    EstimatorConfig,
    balance_pure_classical,
    classical_batch,
    count_all_pure_classical,
    heavy_batch,
    heavy_rates,
    heavy_scale,
    heavy_weights,
    light_batch,
    t1_heavy_classical,
    t1_light_quantum,
    t1_pure_classical,
    t_all_heavy,
    t_all_light,
    target_stream,
    tj_pure_classical,
    tj_stream,
)
from signedtri.graph import UndefinedBalanceError, count_triangles_exact, generate_er_signed
from signedtri.sampling import worker_seeds
from signedtri.stream import StreamMode, make_stream, to_stream

SIGNED, UNSIGNED = StreamMode.SIGNED_T1, StreamMode.UNSIGNED_ALL


def _er(n, pe, pp, seed):
    return to_stream(generate_er_signed(n, pe, pp, seed), seed + 100)


@pytest.mark.parametrize("k", [1, 3, 30])
@pytest.mark.parametrize("mode", [SIGNED, UNSIGNED])
def test_light_kernel_matches_reference(k, mode):
    s = _er(14, 0.6, 0.4, 1)
    seeds = worker_seeds(3, 0, 300)
    ref = t1_light_quantum if mode is SIGNED else t_all_light
    expect = [ref(s, k, int(x)).value for x in seeds]
    assert list(light_batch(s, k, seeds, mode)) == expect


@pytest.mark.parametrize("k", [1, 3, 30])
@pytest.mark.parametrize("mode", [SIGNED, UNSIGNED])
def test_heavy_kernel_matches_reference(k, mode):
    s = _er(14, 0.6, 0.4, 2)
    seeds = worker_seeds(4, 0, 300)
    ref = t1_heavy_classical if mode is SIGNED else t_all_heavy
    expect = [ref(s, k, int(x)).value for x in seeds]
    assert np.array_equal(heavy_batch(s, k, seeds, mode), np.array(expect))


def test_classical_kernel_matches_reference():
    from signedtri.estimators import _classical_pass
    s = _er(14, 0.6, 0.4, 3)
    seeds = worker_seeds(5, 0, 200)
    got = classical_batch(s, 0.6, 0.7, seeds)
    expect = np.array([_classical_pass(s, 0.6, 0.7, int(x)) for x in seeds])
    assert np.array_equal(got, expect)


def test_rates_one_are_exact(fixture_stream):
    c = count_triangles_exact(fixture_stream.to_graph())
    assert t1_pure_classical(fixture_stream, 1, 1, 0).value == c.t1
    assert count_all_pure_classical(fixture_stream, 1, 1, 0).value == 1595
    assert tj_pure_classical(fixture_stream, 3, (1, 1), 0).value == 147
    assert tj_pure_classical(fixture_stream, 0, (1, 1), 0).value == 215
    assert tj_pure_classical(fixture_stream, 2, (1, 1), 0).value == 557
    assert round(balance_pure_classical(fixture_stream, 1, 1, 0), 3) == 0.516


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 12), st.floats(0.3, 1), st.floats(0, 1), st.integers(0, 10**6), st.integers(0, 3))
def test_tj_transforms_exact(n, pe, pp, seed, j):
    s = _er(n, pe, pp, seed)
    c = count_triangles_exact(s.to_graph())
    assert tj_pure_classical(s, j, (1, 1), seed).value == c[j]
    t, mode = target_stream(s, f"T{j}")
    assert t == tj_stream(s, j)[0]


def test_target_stream_total_and_errors():
    s = _er(8, 0.7, 0.5, 4)
    t, mode = target_stream(s, "T")
    assert mode is UNSIGNED and all(x == 1 for *_, x in t)
    with pytest.raises(ValueError):
        target_stream(s, "T7")
    with pytest.raises(ValueError):
        tj_stream(s, 4)


def test_balance_undefined_without_triangles():
    s = make_stream(4, [(0, 1, 1), (2, 3, -1)])
    with pytest.raises(UndefinedBalanceError):
        balance_pure_classical(s, 1, 1, 0)


def test_single_triangle_light_values(single_t1):
    vals = light_batch(single_t1, 1, worker_seeds(0, 0, 20000), SIGNED)
    assert set(np.unique(vals)) <= {-3.0, 0.0, 3.0}
    # the closing query succeeds w.p. 2/6, the scenario-two branch is symmetric
    assert abs(vals.mean() - 1.0) < 4 * vals.std() / np.sqrt(vals.size)


def test_light_outputs_bounded():
    s = _er(12, 0.6, 0.5, 5)
    k = 3
    vals = light_batch(s, k, worker_seeds(1, 0, 5000), SIGNED)
    assert np.all(np.isin(vals, [-k * s.m, 0, k * s.m]))


def test_light_mean_matches_split():
    s = _er(10, 0.5, 0.5, 6)
    k = 3
    vals = light_batch(s, k, worker_seeds(2, 0, 100_000), SIGNED)
    want = oracle_k_split(s, k).t_less
    assert abs(vals.mean() - want) < 4 * vals.std(ddof=1) / np.sqrt(vals.size)


def test_heavy_mean_matches_split():
    s = _er(10, 0.5, 0.5, 7)
    k = 3
    vals = heavy_batch(s, k, worker_seeds(3, 0, 100_000), SIGNED)
    want = oracle_k_split(s, k).t_greater / heavy_scale(k, s.m)
    assert abs(vals.mean() - want) < 4 * vals.std(ddof=1) / np.sqrt(vals.size)


def test_classical_unbiased():
    s = _er(10, 0.6, 0.4, 8)
    t1 = count_triangles_exact(s.to_graph()).t1
    vals = classical_batch(s, 0.5, 0.5, worker_seeds(4, 0, 50_000))[:, 0]
    assert abs(vals.mean() - t1) < 4 * vals.std(ddof=1) / np.sqrt(vals.size)


def test_heavy_helpers():
    assert heavy_rates(4, 16) == (0.125, 0.5)
    assert heavy_rates(1, 1) == (1.0, 1.0)
    w = heavy_weights(2, 4)
    assert list(w) == [0.0, 0.5, 0.75, 0.875]
    assert heavy_weights(1, 3)[0] == 0.0 and heavy_weights(1, 3)[1] == 1.0
    assert heavy_scale(4, 16) == 32.0


def test_batch_validation():
    s = _er(8, 0.7, 0.5, 9)
    with pytest.raises(ValueError):
        light_batch(s, s.m + 1, [1], SIGNED)
    with pytest.raises(ValueError):
        light_batch(s, 1, [1], SIGNED, m=max(1, s.m - 1))
    with pytest.raises(ValueError):
        heavy_batch(s, 1, [-1], SIGNED)
    with pytest.raises(ValueError):
        classical_batch(s, 0, 1, [1])
    with pytest.raises(ValueError):
        light_batch(s, 1, [[1, 2]], SIGNED)


def test_empty_stream_is_zero():
    s = make_stream(3, [])
    assert list(light_batch(s, 1, [1, 2], SIGNED)) == [0, 0]
    assert list(heavy_batch(s, 1, [1], SIGNED)) == [0]
    assert t1_light_quantum(s, 1, 0).value == 0
    assert t1_heavy_classical(s, 1, 0).value == 0


def test_config_validation():
    with pytest.raises(ValueError):
        EstimatorConfig(epsilon=0)
    with pytest.raises(ValueError):
        EstimatorConfig(p_e_rate=1.5)
    with pytest.raises(ValueError):
        EstimatorConfig(t_hint=-1)
    assert EstimatorConfig(k=50).clamped_k(10) == 10
