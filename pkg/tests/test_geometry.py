import math

import numpy as np
import pytest

from mirrortail.geometry import (MirrorSetup, as_point, bregman, mirror_step,
                                 prox_objective)
from mirrortail.noise import stream

EUCLID = MirrorSetup()
BALL = MirrorSetup(domain="l2-ball", radius=1.0)
BOX = MirrorSetup(domain="box", lo=(-1.0, -1.0), hi=(1.0, 2.0))
SIMPLEX = MirrorSetup(regularizer="neg-entropy", domain="simplex")


def test_bregman_euclidean_is_half_squared_distance():
    assert bregman(EUCLID, [1.0, 2.0], [0.0, 0.0]) == pytest.approx(2.5)


def test_bregman_zero_at_identical_points():
    for setup, x in ((EUCLID, [0.3, -1.2]), (SIMPLEX, [0.25, 0.75])):
        assert bregman(setup, x, x) == pytest.approx(0.0, abs=1e-15)


def test_bregman_neg_entropy_is_kl_on_simplex():
    assert bregman(SIMPLEX, [1.0, 0.0], [0.5, 0.5]) == pytest.approx(math.log(2))


def test_bregman_boundary_y_rejected():
    with pytest.raises(ValueError):
        bregman(SIMPLEX, [0.5, 0.5], [1.0, 0.0])


def test_bregman_dimension_mismatch():
    with pytest.raises(ValueError):
        bregman(EUCLID, [1.0], [1.0, 2.0])


def test_strong_convexity_lower_bound_random_pairs():
    # B(x, y) >= (1/2) ||x - y||^2 in the primal norm
    gen = stream(0, 11)
    for _ in range(300):
        x, y = gen.normal(size=2), gen.normal(size=2)
        assert bregman(EUCLID, x, y) >= 0.5 * EUCLID.norm(x - y) ** 2 - 1e-10
    for _ in range(300):
        x = gen.dirichlet(np.ones(4))
        y = np.maximum(gen.dirichlet(np.ones(4)), 1e-9)
        y = y / y.sum()
        assert bregman(SIMPLEX, x, y) >= 0.5 * SIMPLEX.norm(x - y) ** 2 - 1e-10


def test_mirror_step_euclidean_unconstrained():
    np.testing.assert_allclose(
        mirror_step(EUCLID, [1.0, 1.0], [2.0, 0.0], 0.5), [0.0, 1.0])


def test_mirror_step_simplex_multiplicative():
    out = mirror_step(SIMPLEX, [0.5, 0.5], [1.0, 0.0], math.log(2.0))
    np.testing.assert_allclose(out, [1.0 / 3.0, 2.0 / 3.0], rtol=1e-12)


def test_mirror_step_ball_projection():
    np.testing.assert_allclose(
        mirror_step(BALL, [1.0, 0.0], [-2.0, 0.0], 1.0), [1.0, 0.0])


def test_mirror_step_box_clip():
    np.testing.assert_allclose(
        mirror_step(BOX, [0.5, 0.5], [-3.0, -4.0], 1.0), [1.0, 2.0])


def test_mirror_step_rejects_bad_args():
    with pytest.raises(ValueError):
        mirror_step(EUCLID, [1.0, 0.0], [1.0], 0.5)
    with pytest.raises(ValueError):
        mirror_step(EUCLID, [1.0], [1.0], 0.0)


def test_mirror_step_simplex_no_overflow():
    # huge eta * ghat must survive the log-sum-exp guard
    out = mirror_step(SIMPLEX, [0.5, 0.5], [5000.0, -5000.0], 1.0)
    assert np.all(np.isfinite(out))
    assert out.sum() == pytest.approx(1.0, abs=1e-12)
    assert out[1] > out[0]


@pytest.mark.parametrize("setup,x,g", [
    (EUCLID, [0.4, -0.7], [1.0, 2.0]),
    (BALL, [0.6, 0.3], [-2.0, 1.0]),
    (BOX, [0.5, 1.5], [0.7, -0.4]),
    (SIMPLEX, [0.2, 0.3, 0.5], [1.0, -1.0, 0.5]),
])
def test_mirror_step_optimality_against_feasible_probes(setup, x, g):
    # Phi(x_next) <= Phi(feasible probe near x_next) + 1e-9, 1000 probes
    eta = 0.37
    x_next = mirror_step(setup, x, g, eta)
    base = prox_objective(setup, x, g, eta, x_next)
    gen = stream(1, 13)
    d = len(x)
    eps = 1e-4
    for _ in range(1000):
        v = gen.normal(size=d)
        if setup.regularizer == "neg-entropy":
            v -= v.mean()                      # stay on the simplex
        probe = setup.project(x_next + eps * v)
        if setup.regularizer == "neg-entropy":
            probe = np.maximum(probe, 1e-300)
            probe = probe / probe.sum()
        assert base <= prox_objective(setup, x, g, eta, probe) + 1e-9


def test_simplex_iterates_stay_feasible():
    gen = stream(2, 17)
    x = np.array([0.2, 0.3, 0.5])
    for _ in range(200):
        g = gen.normal(size=3) * 5.0
        x = mirror_step(SIMPLEX, x, g, 0.5)
        assert np.all(x >= 0.0)
        assert abs(x.sum() - 1.0) <= 1e-12


def test_setup_pairing_rules():
    with pytest.raises(ValueError):
        MirrorSetup(regularizer="neg-entropy", domain="unconstrained")
    with pytest.raises(ValueError):
        MirrorSetup(regularizer="euclidean", domain="simplex")
    with pytest.raises(ValueError):
        MirrorSetup(primal_norm="l1")


def test_as_point_rejects_non_finite():
    with pytest.raises(ValueError):
        as_point([1.0, float("nan")])
    with pytest.raises(ValueError):
        as_point([float("inf")])
