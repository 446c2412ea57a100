import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from moeaad.core import Solution, normalize_many
from moeaad.engine import (
    AlgorithmConfig,
    Subproblem,
    initialize,
    mating_selection,
    pop_selection,
    population_update,
    relative_improvement,
    run,
    run_moead_baseline,
    run_variant,
    update_references,
    variation,
)
from moeaad.engine import kernels
from moeaad.engine.moead_ad import refresh_nadir
from moeaad.matching import match
from moeaad.problems import make_problem
from moeaad.scalarizing import maasf_convergence, pbi_diversity
from moeaad.weights import default_weights, generate_weights

DTLZ2 = make_problem("dtlz2", 3)
CFG = AlgorithmConfig(seed=7)


def small_state(N_div=4, seed=0, **cfg):
    """DTLZ2 with two objectives and a handful of weights."""
    p = make_problem("dtlz2", 2)
    W = generate_weights(2, N_div).vectors
    config = AlgorithmConfig(seed=seed, T=3, **cfg)
    return p, config, initialize(p, config, weights=W)


# initialization and references ------------------------------------------------


def test_initialize_contract():
    s = initialize(DTLZ2, CFG)
    N = len(default_weights(3))
    assert s.X_d.shape == (N, DTLZ2.n) and np.array_equal(s.X_d, s.X_c)
    assert list(s.M) == list(range(N)) and list(s.R) == [1] * N
    assert list(s.closest_p) == list(range(N)) and np.all(s.closeness == 1)
    assert np.all(s.ideal <= s.nadir)
    assert np.array_equal(s.ideal, s.F_d.min(axis=0)) and np.array_equal(s.nadir, s.F_d.max(axis=0))
    t = initialize(DTLZ2, CFG)
    assert np.array_equal(s.X_d, t.X_d) and np.array_equal(s.F_c, t.F_c)


def test_update_references():
    s = initialize(DTLZ2, CFG)
    before = s.ideal.copy()
    update_references(s, before + 1.0)
    assert np.array_equal(s.ideal, before)
    f = before + 1.0
    f[2] = before[2] - 0.5
    update_references(s, f)
    assert np.array_equal(s.ideal[:2], before[:2]) and s.ideal[2] == before[2] - 0.5


def test_nadir_shrinks_at_generation_boundary():
    s = initialize(DTLZ2, CFG)
    s.F_d[:] = 0.5
    s.F_c[:] = 0.25
    refresh_nadir(s)
    assert np.allclose(s.nadir, 0.5)


def test_config_validation():
    with pytest.raises(ValueError):
        AlgorithmConfig(delta=1.5)
    with pytest.raises(ValueError):
        AlgorithmConfig(nr_c=0)
    with pytest.raises(ValueError):
        AlgorithmConfig(variant="v4")
    with pytest.raises(ValueError):
        initialize(DTLZ2, AlgorithmConfig(N=90))


# population update -------------------------------------------------------------


def test_worse_offspring_changes_nothing():
    p, cfg, s = small_state()
    bad = Solution(np.ones(p.n), s.nadir + 10.0)
    X_d, X_c = s.X_d.copy(), s.X_c.copy()
    assert population_update(s, bad, cfg) == (-1, 0)
    assert np.array_equal(X_d, s.X_d) and np.array_equal(X_c, s.X_c)


def test_equal_value_replaces_diversity_slot():
    p, cfg, s = small_state()
    fbar = normalize_many(s.F_d, s.refs)
    i = 2
    # the incumbent itself is re-offered to its nearest subproblem; <= accepts it
    d2 = [kernels._d2_origin(fbar[i], w) for w in s.W]
    target = int(np.argmin(d2))
    s.F_d[target] = s.F_d[i]
    s.X_d[target] = s.X_d[i]
    replaced, _ = population_update(s, Solution(s.X_d[i].copy(), s.F_d[i].copy()), cfg)
    assert replaced == target


def test_dominant_offspring_takes_exactly_nr_c_slots():
    p, cfg, s = small_state()
    f = s.ideal - 1.0
    fbar = (f - s.ideal) / (s.nadir - s.ideal)
    order = np.argsort([kernels._d2_ones(fbar, w) for w in s.W], kind="stable")
    _, taken = population_update(s, Solution(np.zeros(p.n), f), cfg)
    assert taken == 2
    changed = [j for j in range(len(s.W)) if np.array_equal(s.F_c[j], f)]
    assert sorted(changed) == sorted(order[:2])
    assert s.closeness[order[0]] == 1 and s.closeness[order[1]] == 2
    assert s.closest_p[order[0]] == order[0] and s.closest_p[order[1]] == order[0]


# principal choice and mating ---------------------------------------------------


def test_relative_improvement_examples():
    w = np.array([0.5, 0.5])
    assert relative_improvement(Subproblem(w, 1.3, 1.3), "d") == 0.0
    assert relative_improvement(Subproblem(w, 2.0, 1.0), "d") == pytest.approx(0.5)
    assert relative_improvement(Subproblem(w, -0.5, -1.0), "c") == pytest.approx(1.0)
    assert relative_improvement(Subproblem(w, 0.0, -1.0), "c") == 0.0
    with pytest.raises(ValueError):
        relative_improvement(Subproblem(w, 1.0, 1.0), "x")


def _set_improvement(s, i, j, cfg, delta_d, delta_c):
    """Make slot improvements exactly delta_d (S_d slot i) and delta_c (S_c slot j)."""
    # scale objective vectors along their ray: g is linear in the scale when refs put the ideal at 0
    s.ideal[:] = 0.0
    s.nadir[:] = 1.0
    base = s.W[i] / s.W[i].sum()
    s.F_d_prev[i] = base
    s.F_d[i] = base * (1.0 - delta_d)
    g_prev = maasf_convergence(np.full(2, 0.5), s.W[j])
    target = g_prev * (1.0 - delta_c) if delta_c >= 0 else g_prev
    s.F_c_prev[j] = 0.5
    s.F_c[j] = 1.0 + (0.5 - 1.0) * target / g_prev
    ri_d = relative_improvement(s.subproblem("D", i, cfg), "d")
    ri_c = relative_improvement(s.subproblem("C", j, cfg), "c")
    return ri_d, ri_c


def test_pop_selection_by_improvement():
    p, cfg, s = small_state()
    rng = np.random.default_rng(0)
    ri_d, ri_c = _set_improvement(s, 1, int(s.M[1]), cfg, 0.3, 0.1)
    assert ri_d == pytest.approx(0.3) and ri_c == pytest.approx(0.1, abs=1e-5)
    assert pop_selection(s, 1, cfg, rng) == "D"
    _set_improvement(s, 1, int(s.M[1]), cfg, 0.1, 0.3)
    assert pop_selection(s, 1, cfg, rng) == "C"


def test_pop_selection_ties():
    p, cfg, s = small_state()
    rng = np.random.default_rng(0)
    s.F_d_prev[:] = s.F_d
    s.F_c_prev[:] = s.F_c
    m = p.m
    # make pair 0's diversity member nondominated in the union
    s.F_d[0] = s.F_d_prev[0] = s.ideal - 1.0
    s.closeness[s.M[0]] = m + 1
    assert pop_selection(s, 0, cfg, rng) == "D"
    # and a dominated one with a close partner
    s.F_d[1] = s.F_d_prev[1] = s.nadir + 1.0
    s.closeness[s.M[1]] = 1
    assert pop_selection(s, 1, cfg, rng) == "C"


def test_v3_tie_break_is_fair():
    p, cfg, s = small_state(variant="v3")
    s.F_d_prev[:] = s.F_d
    s.F_c_prev[:] = s.F_c
    s.F_d[0] = s.F_d_prev[0] = s.ideal - 1.0
    s.closeness[s.M[0]] = p.m + 1
    rng = np.random.default_rng(5)
    picks = [pop_selection(s, 0, cfg, rng) for _ in range(10_000)]
    assert abs(picks.count("D") / 10_000 - 0.5) < 0.05


def test_mate_pool_without_collaboration_is_diversity_only():
    p, cfg, s = small_state(delta=1.0)
    s.R[:] = 0
    rng = np.random.default_rng(1)
    for i in range(len(s.W)):
        for _ in range(50):
            (pp, pi), (mp, mi) = mating_selection(s, i, cfg, rng, principal_pop="D")
            assert (pp, pi) == ("D", i) and mp == "D" and mi in set(s.B[i]) - {i}


def test_shared_closest_p_falls_back_to_global_draw():
    p, cfg, s = small_state(delta=1.0)
    s.closest_p[:] = 0
    rng = np.random.default_rng(2)
    seen = set()
    for _ in range(400):
        (pp, pi), (mp, mi) = mating_selection(s, 0, cfg, rng, principal_pop="C")
        assert (pp, pi) == ("C", int(s.M[0]))
        assert (mp, mi) not in {("C", int(s.M[0])), ("D", 0)}
        seen.add(mp)
    assert seen == {"C", "D"}


def test_delta_zero_draws_from_the_union():
    p, cfg, s = small_state(delta=0.0)
    rng = np.random.default_rng(3)
    mates = {mating_selection(s, 2, cfg, rng, principal_pop="D")[1] for _ in range(2000)}
    N = len(s.W)
    expected = {("D", j) for j in range(N) if j != 2} | {("C", j) for j in range(N) if j != s.M[2]}
    assert mates == expected


def test_v2_mates_come_from_the_principals_population():
    for delta in (0.0, 1.0, 0.9):
        p, cfg, s = small_state(variant="v2", delta=delta)
        rng = np.random.default_rng(4)
        for i in range(len(s.W)):
            for tag in ("D", "C"):
                (pp, _), (mp, _) = mating_selection(s, i, cfg, rng, principal_pop=tag)
                assert pp == mp == tag


@settings(max_examples=60)
@given(st.integers(0, 2**32 - 1), st.sampled_from(["full", "v1", "v2", "v3"]), st.floats(0.0, 1.0))
def test_at_most_one_parent_per_pair(seed, variant, delta):
    p, cfg, s = small_state(N_div=6, seed=seed, variant=variant, delta=delta)
    rng = np.random.default_rng(seed)
    s.M[:] = rng.permutation(len(s.W))
    s.R[:] = rng.integers(0, 2, len(s.W))
    s.closest_p[:] = rng.integers(0, 3, len(s.W))
    for i in range(len(s.W)):
        (pp, pi), (mp, mi) = mating_selection(s, i, cfg, rng)
        pair = {("D", i), ("C", int(s.M[i]))}
        assert (pp, pi) in pair
        assert (mp, mi) not in pair


def test_variation_returns_evaluated_solution():
    rng = np.random.default_rng(0)
    s = initialize(DTLZ2, CFG)
    child = variation((s.X_d[0], s.X_d[1]), DTLZ2, CFG, rng)
    assert np.array_equal(child.f, DTLZ2.evaluate(child.x))


# runs --------------------------------------------------------------------------


def test_zero_generations_returns_initial_populations():
    res = run(DTLZ2, CFG.with_(generations=0))
    s = initialize(DTLZ2, CFG)
    assert np.array_equal(res.X_d, s.X_d) and np.array_equal(res.F_c, s.F_c)
    assert res.generations == 0 and res.evaluations == 91


def test_run_invariants():
    ideals, sizes = [], []

    def watch(state):
        ideals.append(state.ideal.copy())
        sizes.append((len(state.X_d), len(state.X_c)))
        assert sorted(state.M) == list(range(state.N))

    res = run(DTLZ2, CFG.with_(generations=30), callback=watch)
    assert set(sizes) == {(91, 91)}
    assert all(np.all(b <= a) for a, b in zip(ideals, ideals[1:]))
    assert res.evaluations == 91 * 31


def test_run_is_deterministic():
    a = run(DTLZ2, CFG.with_(generations=20))
    b = run(DTLZ2, CFG.with_(generations=20))
    assert np.array_equal(a.X_d, b.X_d) and np.array_equal(a.X_c, b.X_c)
    c = run(DTLZ2, CFG.with_(generations=20, seed=8))
    assert not np.array_equal(a.X_c, c.X_c)


def test_nr_c_cap_holds_during_a_run():
    p, cfg, s = small_state(N_div=10)
    rng = np.random.default_rng(0)
    for _ in range(300):
        i, j = rng.integers(0, len(s.W), 2)
        child = variation((s.X_d[i], s.X_c[j]), p, cfg, rng)
        update_references(s, child.f)
        before_c = s.F_c.copy()
        d, c = population_update(s, child, cfg)
        assert c <= cfg.nr_c and c == int(np.sum(np.any(before_c != s.F_c, axis=1)) or c)
        assert d in range(-1, len(s.W))


def _values(state, theta=5.0, alpha=1e-6):
    fd = normalize_many(state.F_d, state.refs)
    fc = normalize_many(state.F_c, state.refs)
    gd = np.array([pbi_diversity(fd[i], state.W[i]) for i in range(state.N)])
    gc = np.array([maasf_convergence(fc[i], state.W[i]) for i in range(state.N)])
    return gd, gc


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_monotone_values_under_frozen_refs(seed):
    """Acceptance 6(e): full-length DTLZ2 runs with the reference points frozen."""
    prev = {}
    violations = []

    def watch(state):
        gd, gc = _values(state)
        if prev:
            violations.extend(np.flatnonzero(gd > prev["d"] + 1e-12))
            violations.extend(np.flatnonzero(gc > prev["c"] + 1e-12))
            assert np.array_equal(state.ideal, prev["ideal"]) and np.array_equal(state.nadir, prev["nadir"])
        prev.update(d=gd, c=gc, ideal=state.ideal.copy(), nadir=state.nadir.copy())

    run(DTLZ2, AlgorithmConfig(seed=seed, generations=250, update_references=False), callback=watch)
    assert violations == []


def test_v1_matching_is_random():
    stable, random_perm = [], []
    cfg = CFG.with_(generations=3)
    run(DTLZ2, cfg, callback=lambda s: stable.append((s.M.copy(), s.R.copy())))

    def watch(s):
        random_perm.append((s.M.copy(), s.R.copy()))
        if s.generation:
            ref = match(normalize_many(s.F_c, s.refs), s.W, s.m)
            assert not np.array_equal(ref.M, s.M)
            assert np.all(s.R == 1)

    run_variant(DTLZ2, cfg.with_(variant="v1"), callback=watch)
    assert not np.array_equal(random_perm[1][0], random_perm[2][0])
    with pytest.raises(ValueError):
        run_variant(DTLZ2, cfg)


@pytest.mark.parametrize("algorithm", ["moead_pbi", "moead_ipbi"])
def test_baselines(algorithm):
    seen = []
    cfg = AlgorithmConfig(algorithm=algorithm, generations=30, seed=3)
    res = run_moead_baseline(DTLZ2, cfg, callback=lambda X, F, ideal, nadir: seen.append(F.copy()))
    assert res.F_d.shape == (91, 3) and np.array_equal(res.F_d, res.F_c)
    assert len(seen) == 31
    again = run_moead_baseline(DTLZ2, cfg)
    assert np.array_equal(res.X_d, again.X_d)
    with pytest.raises(ValueError):
        run_moead_baseline(DTLZ2, CFG)
    with pytest.raises(ValueError):
        run(DTLZ2, cfg)


def test_baseline_values_monotone_under_frozen_refs():
    prev = {}

    def watch(X, F, ideal, nadir):
        fbar = (F - ideal) / np.maximum(nadir - ideal, 1e-12)
        W = default_weights(3).vectors
        g = np.array([pbi_diversity(fbar[i], W[i]) for i in range(len(W))])
        if "g" in prev:
            assert np.all(g <= prev["g"] + 1e-12)
        prev["g"] = g

    run_moead_baseline(DTLZ2, AlgorithmConfig(algorithm="moead_pbi", generations=50, update_references=False), watch)
