import itertools
import json
import math
import warnings
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from grades import (
    BACKEND,
    BudgetExceededError,
    ConditionError,
    ContractError,
    Exact,
    RipBounds,
    Sampled,
    check_convergence_condition,
    delta_from_bounds,
    exact_rip_bounds,
    gen_gaussian_matrix,
    iteration_bound,
    sampled_rip_bounds,
)
from grades.rip import extremal_supports, sample_supports
from oracles import brute_rip

GOLDEN = Path(__file__).parent / "golden"


def probe_ratios(phi, s, rng, count):
    n = phi.shape[1]
    out = np.empty(count)
    for k in range(count):
        x = np.zeros(n)
        S = rng.choice(n, s, replace=False)
        x[S] = rng.standard_normal(s)
        out[k] = np.sum((phi @ x) ** 2) / np.sum(x**2)
    return out


@pytest.mark.parametrize("s", [1, 2, 3, 5])
def test_identity(s):
    b = exact_rip_bounds(np.eye(5), s)
    assert (b.alpha, b.beta) == (1.0, 1.0)
    assert b.provenance == Exact()
    sb = sampled_rip_bounds(np.eye(5), s, trials=7, seed=3)
    assert (sb.alpha, sb.beta) == (1.0, 1.0)


@pytest.mark.parametrize("c", [0.5, 3.0])
def test_scaled_orthonormal(c, rng):
    q, _ = np.linalg.qr(rng.standard_normal((6, 6)))
    b = exact_rip_bounds(c * q, 3)
    assert b.alpha == pytest.approx(c * c, rel=1e-12)
    assert b.beta == pytest.approx(c * c, rel=1e-12)


def test_two_by_two_level_one():
    b = exact_rip_bounds(np.array([[1.0, 1.0], [0.0, 1.0]]), 1)
    assert b.alpha == pytest.approx(1.0, rel=1e-15)
    assert b.beta == pytest.approx(2.0, rel=1e-15)


def test_matches_brute_force(rng):
    for _ in range(5):
        phi = rng.standard_normal((8, 10)) / np.sqrt(8)
        for s in (1, 2, 3):
            b = exact_rip_bounds(phi, s)
            lo, hi = brute_rip(phi, s)
            assert b.alpha == pytest.approx(lo, rel=1e-9)
            assert b.beta == pytest.approx(hi, rel=1e-9)


def test_soundness_and_tightness(rng):
    phi = rng.standard_normal((10, 12)) / np.sqrt(10)
    s = 3
    b = exact_rip_bounds(phi, s)
    ratios = probe_ratios(phi, s, rng, 10_000)
    assert np.all(ratios >= b.alpha * (1 - 1e-9))
    assert np.all(ratios <= b.beta * (1 + 1e-9))

    alpha, beta, amin, amax = extremal_supports(phi, s)
    for target, sup, pick in ((alpha, amin, 0), (beta, amax, -1)):
        w, v = np.linalg.eigh(phi[:, sup].T @ phi[:, sup])
        x = np.zeros(phi.shape[1])
        x[sup] = v[:, pick]
        assert np.sum((phi @ x) ** 2) / np.sum(x**2) == pytest.approx(target, rel=1e-9)


@pytest.mark.parametrize("c", [0.5, 2.0])
def test_scaling_covariance(c, rng):
    phi = rng.standard_normal((7, 9))
    b, bc = exact_rip_bounds(phi, 2), exact_rip_bounds(c * phi, 2)
    assert bc.alpha == pytest.approx(c * c * b.alpha, rel=1e-9)
    assert bc.beta == pytest.approx(c * c * b.beta, rel=1e-9)


def test_monotone_in_level(rng):
    phi = rng.standard_normal((12, 10)) / np.sqrt(12)
    bs = [exact_rip_bounds(phi, s) for s in range(1, 7)]
    for lo, hi in zip(bs, bs[1:]):
        assert hi.alpha <= lo.alpha
        assert hi.beta >= lo.beta


@pytest.mark.parametrize("seed", range(4))
def test_sampled_inside_exact(seed):
    phi = gen_gaussian_matrix(12, 9, seed)
    for s in (1, 2, 3):
        ex = exact_rip_bounds(phi, s)
        trials = math.comb(9, s) + 10
        sa = sampled_rip_bounds(phi, s, trials, seed)
        assert sa.alpha >= ex.alpha - 1e-12
        assert sa.beta <= ex.beta + 1e-12
        assert sa.provenance == Sampled(trials, seed)


def test_sampled_single_trial_degenerate():
    phi = gen_gaussian_matrix(6, 8, 1)
    b = sampled_rip_bounds(phi, 1, trials=1, seed=5)
    assert b.alpha == b.beta


def test_sampled_golden():
    g = json.loads((GOLDEN / "sampled_20x50.json").read_text())
    phi = gen_gaussian_matrix(g["m"], g["n"], g["matrix_seed"])
    b = sampled_rip_bounds(phi, g["s"], g["trials"], g["seed"])
    # eigenvalue routines differ in the last ulp, so each backend has its own record
    ref = g["backends"][BACKEND]
    assert (b.alpha, b.beta) == (ref["alpha"], ref["beta"])
    other = [v for k, v in g["backends"].items() if k != BACKEND]
    for v in other:
        assert b.alpha == pytest.approx(v["alpha"], rel=1e-13)
        assert b.beta == pytest.approx(v["beta"], rel=1e-13)
    again = sampled_rip_bounds(phi, g["s"], g["trials"], g["seed"])
    assert again == b


def test_sample_supports_partition_independent():
    full = sample_supports(30, 4, 50, 11)
    assert full.shape == (50, 4)
    assert all(len(set(row)) == 4 for row in full)
    # trial t depends only on (seed, t)
    np.testing.assert_array_equal(sample_supports(30, 4, 20, 11), full[:20])


def test_budget_error():
    phi = np.ones((2, 30))
    with pytest.raises(BudgetExceededError, match="sampled"):
        exact_rip_bounds(phi, 10, budget=1000)


@pytest.mark.parametrize("s", [0, 4])
def test_level_out_of_range(s):
    with pytest.raises(ContractError):
        exact_rip_bounds(np.eye(3), s)


def test_rank_deficient_level():
    with pytest.raises(ContractError, match="rank deficient"):
        exact_rip_bounds(np.ones((3, 3)), 2)


def test_trials_must_be_positive():
    with pytest.raises(ContractError):
        sampled_rip_bounds(np.eye(3), 1, trials=0, seed=0)


@pytest.mark.parametrize("alpha,beta", [(0.0, 1.0), (2.0, 1.0), (-1.0, 1.0), (1.0, math.inf)])
def test_invalid_bounds(alpha, beta):
    with pytest.raises(ContractError):
        RipBounds(alpha, beta, 2)


@pytest.mark.parametrize(
    "alpha,beta,delta", [(1.0, 1.0, 0.0), (0.9, 1.1, 0.1), (0.5, 1.2, 0.5)]
)
def test_delta(alpha, beta, delta):
    assert delta_from_bounds(RipBounds(alpha, beta, 2)) == pytest.approx(delta, abs=1e-15)


@pytest.mark.parametrize(
    "alpha,beta,ok", [(1.0, 1.0, True), (1.0, 2.0, False), (0.9, 1.1, True), (0.5, 1.2, False)]
)
def test_condition(alpha, beta, ok):
    assert check_convergence_condition(RipBounds(alpha, beta, 2)) is ok


def test_iteration_bound_values():
    b = RipBounds(0.9, 1.1, 4)
    assert iteration_bound(100.0, 0.01, b) == 7
    assert iteration_bound(100.0, 100.0, b) == 0
    assert iteration_bound(100.0, 1000.0, b) == 0
    assert iteration_bound(math.e, 1.0, RipBounds(1.0, 1.9, 4)) == 10


def test_iteration_bound_isometry():
    with pytest.warns(UserWarning, match="one step"):
        assert iteration_bound(5.0, 1e-3, RipBounds(1.0, 1.0, 2)) == 1
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert iteration_bound(5.0, 6.0, RipBounds(1.0, 1.0, 2)) == 0


def test_iteration_bound_condition_error():
    with pytest.raises(ConditionError):
        iteration_bound(100.0, 0.01, RipBounds(1.0, 2.0, 2))
    with pytest.raises(ContractError):
        iteration_bound(100.0, 0.0, RipBounds(1.0, 1.5, 2))


valid = st.tuples(st.floats(0.1, 10), st.floats(0.01, 0.99)).map(
    lambda t: (t[0], t[0] * (1 + t[1]))
)


@pytest.mark.filterwarnings("ignore:alpha == beta")
@given(valid, st.floats(1e-3, 0.5), st.floats(1.0, 1e12))
def test_iteration_bound_monotone(ab, shrink, ratio):
    alpha, beta = ab
    base = iteration_bound(ratio, 1.0, RipBounds(alpha, beta, 2))
    # larger alpha (same beta) helps; larger beta hurts; larger ratio hurts
    bigger_alpha = min(beta, alpha * (1 + shrink))
    assert iteration_bound(ratio, 1.0, RipBounds(bigger_alpha, beta, 2)) <= base
    bigger_beta = min(beta * (1 + shrink), 2 * alpha * (1 - 1e-9))
    if bigger_beta > beta:
        assert iteration_bound(ratio, 1.0, RipBounds(alpha, bigger_beta, 2)) >= base
    assert iteration_bound(ratio * 10, 1.0, RipBounds(alpha, beta, 2)) >= base
