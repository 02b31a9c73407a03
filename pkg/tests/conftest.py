"""Shared fixtures: case-study inputs and a random-nonlinearity generator."""

from __future__ import annotations

import random

import pytest

from dfcycle import LinearPlant, PiecewiseNonlinearity


def random_nonlinearity(
    rng: random.Random,
    *,
    max_breakpoints: int = 6,
    max_jumps: int = 2,
) -> PiecewiseNonlinearity:
    """A valid odd piecewise-linear nonlinearity with bounded complexity.

    Breakpoint abscissae are kept well separated and slopes/jumps bounded so
    the generated shapes exercise the code without degenerate geometry.
    """
    n = rng.randint(1, max_breakpoints)
    xs = sorted(rng.uniform(0.3, 12.0) for _ in range(n))
    # enforce separation so quadrature split points stay distinct
    for i in range(1, n):
        xs[i] = max(xs[i], xs[i - 1] + 0.25)

    n_jumps = rng.randint(0, min(max_jumps, n))
    jump_at = set(rng.sample(range(n), n_jumps))

    x: list[float] = []
    y: list[float] = []
    value = 0.0
    prev = 0.0
    slope = rng.uniform(-1.5, 1.5)
    for i, xi in enumerate(xs):
        value += slope * (xi - prev)
        x.append(xi)
        y.append(value)
        if i in jump_at:
            value += rng.choice((-1.0, 1.0)) * rng.uniform(0.3, 2.5)
            x.append(xi)
            y.append(value)
        new_slope = rng.uniform(-1.5, 1.5)
        # forbid a silent duplicate vertex: no jump means the slope must change
        if i not in jump_at and abs(new_slope - slope) < 1e-3:
            new_slope += 0.5
        slope = new_slope
        prev = xi
    return PiecewiseNonlinearity(x=tuple(x), y=tuple(y), final_slope=slope)


@pytest.fixture
def nl_a() -> PiecewiseNonlinearity:
    """First case-study nonlinearity: rise, shallower rise, drop, shallow rise."""
    return PiecewiseNonlinearity(x=(2, 7, 20, 20, 25), y=(0, 4.5, 7.21, 4.21, 5.25))


@pytest.fixture
def nl_b() -> PiecewiseNonlinearity:
    """Second case-study nonlinearity: slope 1, plateau, slope 1.75, plateau."""
    return PiecewiseNonlinearity(x=(3, 6, 10, 19), y=(3, 3, 10, 10))


def plant_a(k: float) -> LinearPlant:
    """k (2 - s) / (s (s + 1)): integrator plus lag with a right-half-plane zero."""
    return LinearPlant(num=(-1.0, 2.0), den=(1.0, 1.0, 0.0), k=k)


def plant_b(k: float) -> LinearPlant:
    """k / (s (s + 1) (s + 3)): integrator plus two lags."""
    return LinearPlant(num=(1.0,), den=(1.0, 4.0, 3.0, 0.0), k=k)
