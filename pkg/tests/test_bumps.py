import math

import numpy as np
import pytest

from wavelab import BumpSpec, InitialData, eval_bump, eval_sum, initial_values
from wavelab.bumps import directional_derivative, sum_value_grad_hess


def test_center_value_equals_amplitude(unit_bump):
    assert eval_bump(unit_bump, (0.0, 0.0)) == 1.0
    scaled = BumpSpec((0.5, -1.0), 2.0, -3.5)
    assert eval_bump(scaled, (0.5, -1.0)) == -3.5


def test_zero_outside_support(unit_bump):
    assert eval_bump(unit_bump, (2.0, 0.0)) == 0.0
    assert eval_bump(unit_bump, (1.0, 0.0)) == 0.0          # boundary exactly
    assert eval_bump(unit_bump, (0.8, 0.8)) == 0.0


def test_half_radius_value(unit_bump):
    # direct evaluation of A exp(1 - 1/(1 - 1/4)) = exp(-1/3)
    assert eval_bump(unit_bump, (0.5, 0.0)) == pytest.approx(math.exp(-1.0 / 3.0), rel=1e-15)


def test_interior_range(unit_bump, rng):
    pts = rng.uniform(-0.999, 0.999, size=(200, 2))
    pts = pts[np.hypot(pts[:, 0], pts[:, 1]) < 0.999]
    vals = eval_bump(unit_bump, pts)
    assert np.all(vals > 0.0)
    assert np.all(vals <= 1.0)
    # negative amplitude flips the sign of every interior value
    neg = BumpSpec((0.0, 0.0), 1.0, -2.5)
    nvals = eval_bump(neg, pts)
    assert np.all(nvals < 0.0)
    assert np.all(nvals >= -2.5)


def test_invalid_radius():
    with pytest.raises(ValueError, match="radius"):
        BumpSpec((0.0, 0.0), -1.0, 1.0)


def test_unsupported_derivative_order(unit_bump):
    with pytest.raises(ValueError, match="order"):
        eval_bump(unit_bump, (0.1, 0.2), (2, 1))


@pytest.mark.parametrize("order", [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2)])
def test_derivatives_match_finite_differences(order, rng):
    """Closed-form derivatives against centered differences of plain values."""
    spec = BumpSpec((0.2, -0.3), 1.3, 0.8)
    step = 1e-4
    pts = rng.uniform(-0.9, 0.9, size=(60, 2)) + np.array(spec.center)
    # margin from the support boundary, where high derivatives blow up and
    # the finite-difference truncation term dominates
    pts = pts[np.hypot(*(pts - spec.center).T) < 0.65 * spec.radius]
    exact = eval_bump(spec, pts, order)

    ex, ey = np.array([step, 0.0]), np.array([0.0, step])

    def value(p):
        return eval_bump(spec, p)

    approx = np.empty(len(pts))
    for i, p in enumerate(pts):
        if order == (1, 0):
            approx[i] = (value(p + ex) - value(p - ex)) / (2 * step)
        elif order == (0, 1):
            approx[i] = (value(p + ey) - value(p - ey)) / (2 * step)
        elif order == (2, 0):
            approx[i] = (value(p + ex) - 2 * value(p) + value(p - ex)) / step**2
        elif order == (0, 2):
            approx[i] = (value(p + ey) - 2 * value(p) + value(p - ey)) / step**2
        else:
            approx[i] = (value(p + ex + ey) - value(p + ex - ey)
                         - value(p - ex + ey) + value(p - ex - ey)) / (4 * step**2)
    scale = np.maximum(np.abs(exact), 0.05 * np.max(np.abs(exact)))
    assert np.max(np.abs(approx - exact) / scale) < 1e-6


def test_directional_derivative_consistency(unit_bump):
    omega = np.array([math.cos(0.3), math.sin(0.3)])
    pts = np.array([[0.2, 0.1], [0.5, -0.3], [0.9, 0.9]])
    d1 = directional_derivative([unit_bump], pts, omega, 1)
    expect = omega[0] * eval_bump(unit_bump, pts, (1, 0)) \
        + omega[1] * eval_bump(unit_bump, pts, (0, 1))
    np.testing.assert_allclose(d1, expect, rtol=1e-14)
    d2 = directional_derivative([unit_bump], pts, omega, 2)
    expect2 = (omega[0] ** 2 * eval_bump(unit_bump, pts, (2, 0))
               + 2 * omega[0] * omega[1] * eval_bump(unit_bump, pts, (1, 1))
               + omega[1] ** 2 * eval_bump(unit_bump, pts, (0, 2)))
    np.testing.assert_allclose(d2, expect2, rtol=1e-13, atol=1e-15)


def test_initial_values_zero_epsilon(unit_bump):
    data = InitialData(f1=(unit_bump,), g1=(unit_bump,), epsilon=0.0)
    vals = initial_values(data, np.array([0.3, 0.1]))
    for key in ("u1", "ut1", "u2", "ut2"):
        assert vals[key] == 0.0
    assert np.all(vals["grad_u1"] == 0.0)


def test_initial_values_single_bump(unit_bump):
    data = InitialData(f1=(unit_bump,), epsilon=0.1)
    vals = initial_values(data, np.array([0.0, 0.0]))
    assert vals["u1"] == pytest.approx(0.1)
    assert vals["ut1"] == 0.0
    assert vals["u2"] == 0.0


def test_initial_values_linear_in_epsilon(radial_data, rng):
    # power-of-two ratio scales exactly in floating point
    pts = rng.uniform(-1.0, 1.0, size=(30, 2))
    base = initial_values(radial_data.with_epsilon(0.25), pts)
    double = initial_values(radial_data.with_epsilon(0.5), pts)
    for key in ("u1", "ut1", "u2", "ut2"):
        np.testing.assert_array_equal(double[key], 2.0 * base[key])


def test_support_radius():
    data = InitialData(
        f1=(BumpSpec((1.0, 0.0), 0.5, 1.0),),
        g2=(BumpSpec((0.0, -2.0), 1.0, 1.0),),
        epsilon=0.1,
    )
    assert data.support_radius == pytest.approx(3.0)
    assert InitialData(epsilon=0.1).support_radius == 0.0


def test_sum_evaluation_adds(unit_bump):
    shifted = BumpSpec((0.3, 0.0), 1.0, 0.5)
    x = np.array([0.2, 0.1])
    total = eval_sum([unit_bump, shifted], x)
    assert total == pytest.approx(eval_bump(unit_bump, x) + eval_bump(shifted, x))
    val, grad, hess = sum_value_grad_hess([unit_bump, shifted], x[None, :])
    assert val[0] == pytest.approx(total)
    assert grad.shape == (1, 2) and hess.shape == (1, 3)
