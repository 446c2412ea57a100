import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats as sps

from moeaad.stats import SampleSet, exact_rank_sum_p, midranks, rank_sum_normal_p, wilcoxon_rank_sum

samples = st.lists(st.integers(0, 20).map(float), min_size=2, max_size=15)


def brute_force_p(a, b):
    """Two-sided p from enumerating every split of the pooled midranks."""
    pooled = midranks(np.concatenate([a, b]))
    n1, n = len(a), len(a) + len(b)
    center = n1 * (n + 1) / 2
    observed = abs(pooled[:n1].sum() - center)
    sums = [pooled[list(c)].sum() for c in itertools.combinations(range(n), n1)]
    return np.mean([abs(s - center) >= observed - 1e-9 for s in sums])


def test_examples():
    r = wilcoxon_rank_sum(np.arange(1.0, 32), np.arange(1.0, 32))
    assert r.p_value == 1.0 and not r.a_better and not r.b_better
    r = wilcoxon_rank_sum(np.arange(1.0, 32), np.arange(101.0, 132))
    assert r.p_value < 1e-9 and r.b_better and not r.a_better and not r.small_n
    assert exact_rank_sum_p([1, 2], [3, 4]) == pytest.approx(1 / 3)
    assert wilcoxon_rank_sum([1, 2], [3, 4]).small_n
    assert wilcoxon_rank_sum([5.0, 5.0], [5.0, 5.0]).p_value == 1.0


def test_sample_validation():
    with pytest.raises(ValueError):
        SampleSet([1.0])
    with pytest.raises(ValueError):
        wilcoxon_rank_sum([1.0, np.inf], [1.0, 2.0])


def test_midranks():
    assert list(midranks([3, 1, 3, 2])) == [3.5, 1, 3.5, 2]


@settings(max_examples=200)
@given(samples, samples)
def test_symmetry(a, b):
    ab, ba = wilcoxon_rank_sum(a, b), wilcoxon_rank_sum(b, a)
    assert ab.p_value == pytest.approx(ba.p_value, abs=1e-15)
    assert (ab.a_better, ab.b_better) == (ba.b_better, ba.a_better)
    assert not (ab.a_better and ab.b_better)


@settings(max_examples=100)
@given(samples, samples, st.floats(0.1, 30.0))
def test_shifting_b_up_never_raises_p_when_b_leads(a, b, shift):
    # Once b's rank sum is at or above its mean, moving b further up only separates the samples.
    a, b = np.array(a), np.array(b)
    mean = len(b) * (len(a) + len(b) + 1) / 2
    if midranks(np.concatenate([a, b]))[len(a) :].sum() < mean:
        b = b + (a.max() - b.min() + 1)
    assert rank_sum_normal_p(a, b + shift) <= rank_sum_normal_p(a, b) + 1e-15


def test_monotone_separation_on_random_samples():
    rng = np.random.default_rng(3)
    for _ in range(200):
        a, b = rng.normal(size=12), rng.normal(size=12)
        ps = [rank_sum_normal_p(a, b + s) for s in np.linspace(0, 5, 11)]
        # the p-value dips to its minimum and is non-increasing from where b overtakes a
        start = int(np.argmax(ps))
        assert all(x >= y - 1e-15 for x, y in zip(ps[start:], ps[start + 1 :]))


@settings(max_examples=60)
@given(st.lists(st.integers(0, 6), min_size=2, max_size=6), st.lists(st.integers(0, 6), min_size=2, max_size=6))
def test_exact_matches_enumeration(a, b):
    assert exact_rank_sum_p(a, b) == pytest.approx(brute_force_p(np.array(a, float), np.array(b, float)), abs=1e-12)


def test_normal_matches_scipy():
    rng = np.random.default_rng(4)
    for _ in range(100):
        a = rng.integers(0, 10, rng.integers(2, 40)).astype(float)
        b = rng.integers(0, 10, rng.integers(2, 40)).astype(float)
        if np.all(np.concatenate([a, b]) == a[0]):
            continue
        ref = sps.mannwhitneyu(a, b, alternative="two-sided", method="asymptotic", use_continuity=True).pvalue
        assert rank_sum_normal_p(a, b) == pytest.approx(ref, abs=1e-12)


def test_exact_matches_scipy_without_ties():
    rng = np.random.default_rng(6)
    for _ in range(100):
        a, b = rng.random(rng.integers(2, 10)), rng.random(rng.integers(2, 10))
        ref = sps.mannwhitneyu(a, b, alternative="two-sided", method="exact").pvalue
        assert exact_rank_sum_p(a, b) == pytest.approx(ref, abs=1e-12)


def test_normal_approximation_against_exact_small_n():
    """Acceptance 6(c): 500 random samples with n1, n2 in [5, 10]."""
    rng = np.random.default_rng(7)
    worst, disagreements = 0.0, 0
    for _ in range(500):
        n1, n2 = rng.integers(5, 11, 2)
        shift = rng.uniform(0, 2)
        a = np.round(rng.normal(size=n1), 1)
        b = np.round(rng.normal(size=n2) + shift, 1)
        approx, exact = rank_sum_normal_p(a, b), exact_rank_sum_p(a, b)
        worst = max(worst, abs(approx - exact))
        if not 0.025 <= exact <= 0.1 and (approx < 0.05) != (exact < 0.05):
            disagreements += 1
    assert worst <= 0.05
    assert disagreements == 0
