import math

import numpy as np
import pytest

from holdermd import DomainError, GroupModel, LpPoint, act, lp_norm, sample_point, word_ball

Z = GroupModel.lattice(1)


def test_norm_examples():
    assert lp_norm(LpPoint.atom(Z, (0,), 1.0, 3), 3) == 1.0
    assert lp_norm(LpPoint.atom(Z, (0,), 1.0, 1), math.inf) == 1.0
    x = LpPoint(Z, {(0,): 0.5, (1,): 0.5}, 1)
    assert lp_norm(x, 1) == 1.0
    y = LpPoint(Z, {(0,): 0.6, (1,): 0.8}, 2)
    first = word_ball(Z, 0)
    assert lp_norm(y, 2, first) == pytest.approx(0.6, abs=1e-15)
    assert lp_norm(y, 2) == pytest.approx(1.0, abs=1e-15)


def test_zeros_elided_and_ball_checked():
    x = LpPoint(Z, {(0,): 0.0, (1,): 0.3}, 2)
    assert x.support == [(1,)]
    with pytest.raises(DomainError):
        LpPoint(Z, {(0,): 0.8, (1,): 0.8}, 2)
    LpPoint(Z, {(0,): 1 + 1e-13}, 2)  # within tolerance


def test_act_examples():
    x = LpPoint.atom(Z, (0,), 1.0, 2)
    assert act((0,), x) == x
    assert act((5,), x).values == {(5,): 1.0}


def test_action_is_isometric(model, rng):
    window = word_ball(model, 2)
    gammas = list(word_ball(model, 3))
    for _ in range(100):
        p = float(rng.choice([1.0, 1.5, 2.0, 3.0]))
        x = sample_point(rng, window, p)
        g = gammas[rng.integers(len(gammas))]
        assert lp_norm(act(g, x), p) == lp_norm(x, p)


def test_action_law(model, rng):
    window = word_ball(model, 2)
    gammas = list(word_ball(model, 2))
    for _ in range(50):
        x = sample_point(rng, window, 2.0)
        a = gammas[rng.integers(len(gammas))]
        b = gammas[rng.integers(len(gammas))]
        assert act(a, act(b, x)) == act(model.multiply(a, b), x)


def test_act_translates_values(model, rng):
    x = sample_point(rng, word_ball(model, 2), 2.0)
    g = model.generators()[0]
    y = act(g, x)
    for h in word_ball(model, 3):
        assert y(h) == x(model.multiply(model.inverse(g), h))


def test_restricted_norm_on_support_is_full_norm(model, rng):
    window = word_ball(model, 2)
    for _ in range(20):
        x = sample_point(rng, window, 1.5)
        assert lp_norm(x, 1.5, window) == lp_norm(x, 1.5)


def test_sampler_norm_uniform(rng):
    window = word_ball(Z, 3)
    norms = np.array([lp_norm(sample_point(rng, window, 2.0), 2.0) for _ in range(2000)])
    assert norms.max() <= 1 + 1e-12
    # uniform on [0, 1]: mean 1/2, variance 1/12
    assert abs(norms.mean() - 0.5) < 0.03
    assert abs(norms.var() - 1 / 12) < 0.01


def test_sampler_is_seed_deterministic():
    window = word_ball(GroupModel.free(2), 2)
    a = sample_point(np.random.default_rng(7), window, 2.0)
    b = sample_point(np.random.default_rng(7), window, 2.0)
    assert a == b


def test_json_round_trip(model, rng):
    x = sample_point(rng, word_ball(model, 1), 3.0)
    assert LpPoint.from_json(x.to_json()) == x
