import math

import numpy as np
import pytest

import oracles
from breakcast.errors import DomainError
from breakcast.simulate import (
    BreakModel,
    InnovationKind,
    draw_innovations,
    draw_innovations_batch,
    draw_model,
    draw_models_batch,
    pseudo_uniform,
    simulate_path,
    simulate_paths,
)

PU_T0_S1 = 0.17571334735483529792  # oracles.pseudo_uniform(0, 1)
STOCHASTIC = [k for k in InnovationKind if k.stochastic]
BIG = np.arange(1, 1_000_001)


@pytest.fixture(scope="module")
def big_draws():
    return {kind: draw_innovations_batch(kind, 4, BIG, 777) for kind in STOCHASTIC}


def test_pseudo_uniform_oracle():
    assert float(oracles.pseudo_uniform(0, 1)) == pytest.approx(PU_T0_S1, abs=1e-18)
    eta = draw_innovations(InnovationKind.SCALED_PSEUDO_UNIFORM, 4, 1, seed=0)
    assert eta[0] == pytest.approx(PU_T0_S1, abs=1e-12)


@pytest.mark.parametrize("t, s", [(1, 1), (4, 17), (6, 300_000), (2, 12345)])
def test_pseudo_uniform_closed_form(t, s):
    assert pseudo_uniform(t, s) == pytest.approx(float(oracles.pseudo_uniform(t, s)), abs=1e-9)


def test_pseudo_uniform_ignores_seed_and_honours_offset():
    a = draw_innovations_batch("pseudo-uniform", 5, [3, 4], seed=1)
    b = draw_innovations_batch("pseudo-uniform", 5, [3, 4], seed=2)
    np.testing.assert_array_equal(a, b)
    shifted = draw_innovations_batch("pseudo-uniform", 5, [3, 4], seed=1, pu_time_offset=1)
    np.testing.assert_allclose(shifted[:, :-1], a[:, 1:], rtol=0, atol=0)


def test_gamma_moments(big_draws):
    eta = big_draws[InnovationKind.SHIFTED_GAMMA].ravel()
    assert eta.mean() == pytest.approx(0.0, abs=0.005)
    assert eta.var() == pytest.approx(1.0, abs=0.01)
    assert eta.min() > -math.sqrt(2)


def test_ma1_lag_one_correlation(big_draws):
    eta = big_draws[InnovationKind.MA1_GAUSSIAN]
    corr = np.mean(eta[:, 1:] * eta[:, :-1])
    assert corr == pytest.approx(0.5, abs=0.01)
    assert np.mean(eta[:, 2:] * eta[:, :-2]) == pytest.approx(0.0, abs=0.01)


@pytest.mark.parametrize("kind", STOCHASTIC, ids=lambda k: k.value)
def test_unit_variance(big_draws, kind):
    assert 0.99 <= big_draws[kind][:, 0].var() <= 1.01
    assert 0.99 <= big_draws[kind][:, -1].var() <= 1.01


def test_innovations_shape_and_single_matches_batch():
    for kind in InnovationKind:
        batch = draw_innovations_batch(kind, 6, [5, 9], 11)
        assert batch.shape == (2, 7)
        np.testing.assert_array_equal(draw_innovations(kind, 6, 9, 11), batch[1])


def test_innovations_validation():
    with pytest.raises(DomainError):
        draw_innovations("gaussian", 3, 1, 0)
    with pytest.raises(DomainError):
        draw_innovations("gaussian", 4, 0, 0)
    with pytest.raises(ValueError):
        draw_innovations("cauchy", 4, 1, 0)


def test_theta_singleton_for_d4():
    _, _, theta = draw_models_batch((0, 1), (0, 1), 4, np.arange(1, 1001), 3)
    assert np.all(theta == 2)


@pytest.mark.parametrize("theta_min, d", [(2, 6), (1, 5), (1, 4)])
def test_theta_uniform(theta_min, d):
    _, _, theta = draw_models_batch((0, 1), (0, 1), d, np.arange(1, 60_001), 3, theta_min=theta_min)
    support = np.arange(theta_min, d - 1)
    assert set(np.unique(theta)) == set(support)
    freq = np.bincount(theta)[support] / theta.size
    np.testing.assert_allclose(freq, 1 / support.size, atol=0.01)


def test_beta_draws():
    beta1, beta2, _ = draw_models_batch((0, 1), (-1, 0), 5, np.arange(1, 100_001), 8)
    assert beta1.mean() == pytest.approx(0.5, abs=0.005)
    assert np.all((beta2 > -1) & (beta2 < 0))
    assert np.all((beta1 > 0) & (beta1 < 1))


@pytest.mark.parametrize("bad", [(0.5, 0.2), (-1.5, 0.0), (0.0, 2.0)])
def test_invalid_range(bad):
    with pytest.raises(DomainError):
        draw_model(bad, (0, 1), 4, 0.3, 1, 0)


def test_draw_model_returns_valid_model():
    model = draw_model((0, 1), (-1, 0), 6, 0.3, 42, 0)
    assert isinstance(model, BreakModel)
    assert 2 <= model.theta <= 4


def test_hand_recursion():
    model = BreakModel(0.5, -0.5, 2, 0.3, 4)
    path = simulate_path(model, np.ones(5))
    np.testing.assert_allclose(path.x, [0.3, 0.45, 0.075, 0.2625, 0.16875], rtol=0, atol=1e-15)
    assert path.target == pytest.approx(0.16875, abs=1e-15)
    np.testing.assert_allclose(path.learning, [0.3, 0.45, 0.075, 0.2625], atol=1e-15)


def test_break_boundary_convention():
    # with eta = e_1 only x(1) is non-zero among x(0..1); x(2) = beta2 * x(1)
    model = BreakModel(0.9, -0.4, 2, 1.0, 4)
    x = simulate_path(model, [0, 1, 0, 0, 0]).x
    assert x[1] == 1.0
    assert x[2] == pytest.approx(-0.4)
    assert model.beta_at(1) == 0.9 and model.beta_at(2) == -0.4


def test_zero_sigma_and_memoryless():
    eta = np.array([0.3, -1.2, 2.0, 0.1, -0.7])
    assert np.all(simulate_path(BreakModel(0.5, 0.5, 2, 0.0, 4), eta).x == 0)
    np.testing.assert_array_equal(simulate_path(BreakModel(0.0, 0.0, 2, 0.3, 4), eta).x, 0.3 * eta)


def test_first_value_and_determinism():
    trials = np.arange(1, 501)
    b1, b2, th = draw_models_batch((-1, 1), (-1, 1), 6, trials, 2**63 + 5)
    eta = draw_innovations_batch("ma1", 6, trials, 2**63 + 5)
    x = simulate_paths(b1, b2, th, 0.3, eta)
    np.testing.assert_array_equal(x[:, 0], 0.3 * eta[:, 0])
    again = simulate_paths(*draw_models_batch((-1, 1), (-1, 1), 6, trials[::-1], 2**63 + 5), 0.3,
                           draw_innovations_batch("ma1", 6, trials[::-1], 2**63 + 5))
    np.testing.assert_array_equal(x, again[::-1])


def test_break_model_validation():
    with pytest.raises(DomainError):
        BreakModel(1.0, 0.0, 2, 0.3, 4)
    with pytest.raises(DomainError):
        BreakModel(0.1, 0.0, 3, 0.3, 4)
    with pytest.raises(DomainError):
        BreakModel(0.1, 0.0, 2, 0.3, 3)
    with pytest.raises(DomainError):
        simulate_path(BreakModel(0.1, 0.0, 2, 0.3, 4), np.ones(4))
