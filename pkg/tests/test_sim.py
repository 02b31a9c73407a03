"""Closed-loop RK4 simulation and oscillation measurement."""

from __future__ import annotations

import math

import numpy as np
import pytest

from dfcycle import LinearPlant, PiecewiseNonlinearity
from dfcycle.sim import (
    CONVERGED,
    DIVERGED,
    SUSTAINED,
    default_horizon,
    loop_matrices,
    measure_oscillation,
    simulate,
)

from conftest import plant_a, plant_b


def linear_gain(m: float) -> PiecewiseNonlinearity:
    return PiecewiseNonlinearity(x=(0.0,), y=(0.0,), final_slope=m)


class TestLoopSetup:
    def test_matrices_shapes(self):
        A, B, C = loop_matrices(plant_b(15.0))
        assert A.shape == (3, 3) and B.shape == (3,) and C.shape == (3,)

    def test_default_horizon_scales_with_period(self):
        T, dt = default_horizon(2.0)
        period = math.pi
        assert T == pytest.approx(200.0 * period)
        assert dt == pytest.approx(period / 400.0)


class TestAgainstClosedForm:
    def test_linear_loop_matches_matrix_exponential(self):
        # with a pure gain nonlinearity the loop is linear:
        # xdot = (A - m B C) x, solvable by eigendecomposition
        p = LinearPlant(num=(1.0,), den=(1.0, 3.0, 2.0))
        m = 0.7
        A, B, C = loop_matrices(p)
        M = A - m * np.outer(B, -C)  # C here is already negated
        x0 = np.array([1.0, -0.5])
        T = 4.0
        vals, vecs = np.linalg.eig(M)
        exact = (vecs @ np.diag(np.exp(vals * T)) @ np.linalg.inv(vecs) @ x0).real

        res = simulate(p, linear_gain(m), x0, T, T / 4000.0)
        np.testing.assert_allclose(res.states[-1], exact, atol=1e-9)

    def test_rk4_is_fourth_order(self):
        p = LinearPlant(num=(1.0,), den=(1.0, 3.0, 2.0))
        m = 0.7
        A, B, C = loop_matrices(p)
        M = A - m * np.outer(B, -C)
        x0 = np.array([1.0, -0.5])
        T = 2.0
        vals, vecs = np.linalg.eig(M)
        exact = (vecs @ np.diag(np.exp(vals * T)) @ np.linalg.inv(vecs) @ x0).real

        errs = []
        steps = [100, 200, 400, 800]
        for n in steps:
            res = simulate(p, linear_gain(m), x0, T, T / n)
            errs.append(np.max(np.abs(res.states[-1] - exact)))
        orders = [
            math.log2(errs[i] / errs[i + 1]) for i in range(len(errs) - 1)
        ]
        assert min(orders) >= 3.5


class TestVerdicts:
    def test_stable_linear_loop_converges(self):
        p = LinearPlant(num=(1.0,), den=(1.0, 3.0, 2.0))
        res = simulate(p, linear_gain(0.5), np.array([1.0, 1.0]), 40.0, 0.01)
        assert res.verdict == CONVERGED
        assert res.amplitude is None

    def test_unstable_linear_loop_diverges(self):
        p = LinearPlant(num=(1.0,), den=(1.0, 3.0, 2.0))
        res = simulate(p, linear_gain(-10.0), np.array([1.0, 0.0]), 400.0, 0.01)
        assert res.verdict == DIVERGED
        assert res.t[-1] < 400.0  # truncated at the divergence threshold

    def test_relay_loop_sustains(self, nl_b):
        p = plant_b(30.0)
        T, dt = default_horizon(math.sqrt(3.0))
        res = simulate(p, nl_b, np.array([1.0, 1.0, 0.0]), T, dt)
        assert res.verdict == SUSTAINED
        assert res.frequency == pytest.approx(math.sqrt(3.0), rel=0.05)

    def test_requires_enough_steps(self, nl_b):
        with pytest.raises(ValueError):
            simulate(plant_b(30.0), nl_b, np.zeros(3), 1.0, 0.5)


class TestMeasurement:
    def test_clean_sine(self):
        w = 1.7
        t = np.linspace(0.0, 80.0, 20_001)
        x = 3.2 * np.sin(w * t)
        amp, freq = measure_oscillation(t, x)
        assert amp == pytest.approx(3.2, rel=1e-3)
        assert freq == pytest.approx(w, rel=1e-3)

    def test_decaying_signal_rejected(self):
        t = np.linspace(0.0, 80.0, 20_001)
        x = np.exp(-0.1 * t) * np.sin(1.7 * t)
        assert measure_oscillation(t, x) is None

    def test_flat_signal_rejected(self):
        t = np.linspace(0.0, 10.0, 1001)
        assert measure_oscillation(t, np.full_like(t, 1e-12)) is None
