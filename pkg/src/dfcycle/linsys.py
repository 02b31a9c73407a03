"""Rational plant G(s): frequency response, phase crossovers, realization.

The plant is stored as numerator/denominator polynomial coefficients plus a
scalar gain.  A controllable canonical state-space realization is derived for
the steady-state geometry and the time simulator.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np


class PlantError(ValueError):
    """Raised when plant coefficients are unusable."""


class PoleOnAxisError(ValueError):
    """Frequency response requested at (or numerically on) an imaginary pole."""


class SingularFrequencyError(ValueError):
    """State-space resolvent is singular at the requested frequency."""


@dataclass(frozen=True)
class FrequencyResponsePoint:
    omega: float
    value: complex


@dataclass(frozen=True)
class LinearPlant:
    """Proper rational transfer function ``G(s) = k * num(s) / den(s)``.

    Coefficients are in descending powers of s.  The gain multiplier ``k``
    is kept separate so gain sweeps reuse one coefficient set.
    """

    num: tuple[float, ...]
    den: tuple[float, ...]
    k: float = 1.0

    def __post_init__(self) -> None:
        num = tuple(float(c) for c in self.num)
        den = tuple(float(c) for c in self.den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "k", float(self.k))
        if not num or not den:
            raise PlantError("numerator and denominator must be non-empty")
        if not all(math.isfinite(c) for c in num + den) or not math.isfinite(self.k):
            raise PlantError("coefficients must be finite")
        if den[0] == 0.0:
            raise PlantError("denominator leading coefficient must be nonzero")
        num_deg = len(num) - 1 - next(
            (i for i, c in enumerate(num) if c != 0.0), len(num) - 1
        )
        if num_deg > len(den) - 1:
            raise PlantError("plant must be proper (deg num <= deg den)")

    @property
    def order(self) -> int:
        return len(self.den) - 1

    @property
    def origin_poles(self) -> int:
        """Number of poles at s = 0 (trailing zero denominator coefficients)."""
        n = 0
        for c in reversed(self.den):
            if c != 0.0:
                break
            n += 1
        return n

    def with_gain(self, k: float) -> "LinearPlant":
        return LinearPlant(self.num, self.den, k)

    def transfer(self, s: complex) -> complex:
        num = np.polyval(self.num, s)
        den = np.polyval(self.den, s)
        scale = max(abs(np.polyval(np.abs(self.den), abs(s))), 1.0)
        if abs(den) <= 1e-14 * scale:
            raise PoleOnAxisError(f"pole at s = {s}")
        return self.k * num / den

    @cached_property
    def state_space(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, float]:
        """Controllable canonical realization (A, B, C, D) with gain folded in."""
        a = np.asarray(self.den, dtype=float) / self.den[0]
        b = np.asarray(self.num, dtype=float) * (self.k / self.den[0])
        n = len(a) - 1
        if n == 0:
            raise PlantError("static plant has no state-space realization")
        b_full = np.zeros(n + 1)
        b_full[n + 1 - len(b):] = b
        d = b_full[0]
        rem = b_full[1:] - d * a[1:]  # remainder of b(s)/a(s), degree < n
        A = np.zeros((n, n))
        A[:-1, 1:] = np.eye(n - 1)
        A[-1, :] = -a[1:][::-1]
        B = np.zeros(n)
        B[-1] = 1.0
        C = rem[::-1].copy()
        return A, B, C, d

    @classmethod
    def from_dict(cls, data: dict) -> "LinearPlant":
        try:
            num = data["num"]
            den = data["den"]
        except (KeyError, TypeError) as exc:
            raise PlantError(
                "plant descriptor must be an object with 'num' and 'den' arrays"
            ) from exc
        if not isinstance(num, Sequence) or not isinstance(den, Sequence):
            raise PlantError("'num' and 'den' must be arrays of numbers")
        return cls(tuple(num), tuple(den), float(data.get("k", 1.0)))

    @classmethod
    def from_json(cls, text: str) -> "LinearPlant":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise PlantError(f"invalid JSON: {exc}") from exc
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        return {"num": list(self.num), "den": list(self.den), "k": self.k}


def freq_response(plant: LinearPlant, omega: float) -> complex:
    """G(j*omega) for omega > 0."""
    if omega <= 0:
        raise ValueError("frequency must be positive")
    return plant.transfer(1j * omega)


def nyquist_samples(plant: LinearPlant, omega_grid) -> list[FrequencyResponsePoint]:
    """Frequency response sampled pointwise over a positive frequency grid."""
    return [FrequencyResponsePoint(float(w), freq_response(plant, float(w)))
            for w in np.asarray(omega_grid, dtype=float)]


def phase_crossovers(
    plant: LinearPlant,
    omega_range: tuple[float, float] = (1e-3, 1e3),
    *,
    n_scan: int = 4000,
    max_iter: int = 200,
) -> list[tuple[float, float]]:
    """Negative-real-axis crossings of G(j*omega) as (omega, gain margin).

    Sign changes of Im G on a log grid are bracketed and bisected until
    ``|Im G| <= 1e-12 * |G|``; crossings with Re G >= 0 are discarded.
    """
    lo, hi = omega_range
    if not (0 < lo < hi):
        raise ValueError("omega_range must be a positive increasing interval")
    ws = np.logspace(math.log10(lo), math.log10(hi), n_scan)
    G = np.array([plant.transfer(1j * w) for w in ws])
    im = G.imag

    out: list[tuple[float, float]] = []
    for i in range(len(ws) - 1):
        if im[i] == 0.0 or im[i] * im[i + 1] > 0.0:
            continue
        a, fa = ws[i], im[i]
        b = ws[i + 1]
        g_mid = G[i]
        mid = a
        for _ in range(max_iter):
            mid = 0.5 * (a + b)
            g_mid = plant.transfer(1j * mid)
            if abs(g_mid.imag) <= 1e-12 * abs(g_mid):
                break
            if (g_mid.imag > 0) == (fa > 0):
                a, fa = mid, g_mid.imag
            else:
                b = mid
        if g_mid.real < 0:
            out.append((float(mid), float(1.0 / abs(g_mid))))
    # collapse brackets that refined to the same crossing
    dedup: list[tuple[float, float]] = []
    for w, km in out:
        if not dedup or abs(w - dedup[-1][0]) > 1e-9 * w:
            dedup.append((w, km))
    return dedup


def nyquist_contour(
    plant: LinearPlant,
    omega_min: float = 1e-3,
    omega_max: float = 1e3,
    n: int = 8192,
) -> np.ndarray:
    """Closed Nyquist polygon of G for winding-number enclosure tests.

    The positive-frequency branch is mirrored by conjugation; a pole of G at
    the origin opens the contour, which is closed with a large clockwise arc
    of pi radians per origin pole at ten times the innermost sample radius
    (the standard indentation image).
    """
    ws = np.logspace(math.log10(omega_min), math.log10(omega_max), n)
    g = np.array([plant.transfer(1j * w) for w in ws])
    parts = [g, np.conj(g)[::-1]]
    q = plant.origin_poles
    if q > 0:
        start = np.conj(g[0])
        theta0 = np.angle(start)
        radius = 10.0 * abs(g[0])
        sweep = theta0 - np.linspace(0.0, q * math.pi, 64 * q + 1)
        parts.append(radius * np.exp(1j * sweep))
    contour = np.concatenate(parts)
    return np.append(contour, contour[0])


def h_of_jw(plant: LinearPlant, omega: float) -> np.ndarray:
    """State resolvent ``(j*omega*I - A)^(-1) B`` of the realization."""
    A, B, _, _ = plant.state_space
    M = 1j * omega * np.eye(len(B)) - A
    try:
        h = np.linalg.solve(M, B.astype(complex))
    except np.linalg.LinAlgError as exc:
        raise SingularFrequencyError(
            f"omega = {omega} is an eigenvalue frequency of the realization"
        ) from exc
    return h
