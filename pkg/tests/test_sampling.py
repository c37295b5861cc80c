import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from signedtri.sampling import (
    FIELD_PRIME,
    BernoulliSource,
    clamp_probability,
    geometric_gap,
    hash_threshold,
    make_pairwise_hash,
    split_seed,
    worker_seeds,
)


def test_split_seed_is_deterministic():
    assert split_seed(42, 7) == split_seed(42, 7)
    assert split_seed(42, 7) != split_seed(43, 7)


def test_worker_seeds_match_scalar():
    vec = worker_seeds(5, 1000, 300)
    assert [int(x) for x in vec] == [split_seed(5, i) for i in range(1000, 1300)]


def test_worker_seeds_unique():
    seeds = worker_seeds(0, 0, 200_000)
    assert np.unique(seeds).size == seeds.size
    assert seeds.min() >= 0 and seeds.max() < 2**32


@given(st.integers(0, 2**20), st.integers(0, 2**32 - 2))
def test_split_seed_injective_neighbours(master, i):
    assert split_seed(master, i) != split_seed(master, i + 1)


def test_split_seed_rejects_bad_index():
    with pytest.raises(ValueError):
        split_seed(0, -1)
    with pytest.raises(ValueError):
        split_seed(-1, 0)


def test_clamp_and_threshold():
    assert clamp_probability(3.0) == 1.0
    assert clamp_probability(-1) == 0.0
    assert hash_threshold(1.0) == FIELD_PRIME
    assert hash_threshold(0.0) == 0


def test_pairwise_hash_edge_rates():
    assert make_pairwise_hash(1.0, 50, 1).table().all()
    assert not make_pairwise_hash(0.0, 50, 1).table().any()


def test_pairwise_hash_marginal_and_pairs():
    # over many independent draws of (a, b): Pr[h(u)=1] = p, pairs independent
    p, n, reps = 0.3, 6, 20000
    tabs = np.array([make_pairwise_hash(p, n, s).table() for s in range(reps)])
    marg = tabs.mean(axis=0)
    se = np.sqrt(p * (1 - p) / reps)
    assert np.all(np.abs(marg - p) < 4 * se)
    both = (tabs[:, 0] & tabs[:, 3]).mean()
    se2 = np.sqrt(p * p * (1 - p * p) / reps)
    assert abs(both - p * p) < 4 * se2


def test_pairwise_hash_call_matches_table():
    h = make_pairwise_hash(0.5, 40, 9)
    assert [h(u) for u in range(40)] == list(h.table())


def test_hash_advances_rng_by_two():
    a = np.random.RandomState(3)
    make_pairwise_hash(0.5, 10, a)
    b = np.random.RandomState(3)
    b.random_sample(2)
    assert a.random_sample() == b.random_sample()


def test_pairwise_hash_domain_checks():
    with pytest.raises(ValueError):
        make_pairwise_hash(0.5, 0, 1)
    with pytest.raises(ValueError):
        make_pairwise_hash(1.5, 10, 1)


def test_bernoulli_source_rate():
    src = BernoulliSource(0.25, 4)
    x = src.draws(100_000)
    assert abs(x.mean() - 0.25) < 0.01
    assert src.draw() in (0, 1)


def test_geometric_gap_distribution():
    # gap = number of failures before a success of probability 1/k
    k = 4
    log_q = np.log(1 - 1 / k)
    rng = np.random.RandomState(0)
    gaps = np.array([geometric_gap(rng.random_sample(), log_q, 10**9) for _ in range(50_000)])
    assert abs(gaps.mean() - (k - 1)) < 0.06
    assert abs((gaps == 0).mean() - 1 / k) < 0.01


def test_geometric_gap_edge_cases():
    assert geometric_gap(0.7, -np.inf, 10) == 0
    assert geometric_gap(0.999999, np.log(0.5), 5) == 5


@settings(max_examples=50)
@given(st.floats(0, 0.999999), st.floats(-5, -1e-3), st.integers(0, 100))
def test_geometric_gap_bounded(u, log_q, limit):
    assert 0 <= geometric_gap(u, log_q, limit) <= limit
