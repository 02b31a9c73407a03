"""Odd piecewise-linear nonlinearities with jumps, and their primitive decomposition.

A nonlinearity is described by the breakpoints of its graph on x >= 0 and is
interpreted as odd, y(-x) = -y(x).  A repeated abscissa encodes a vertical
jump.  Every such map is the sum of an initial linear gain, dead-zone terms
(one per slope change) and relay terms (one per jump); :func:`PiecewiseNonlinearity.decompose`
produces that sum.
"""

from __future__ import annotations

import enum
import json
import math
from bisect import bisect_right
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence


class NonlinearityError(ValueError):
    """Raised when breakpoint data does not describe a valid nonlinearity."""


class PrimitiveKind(enum.Enum):
    DEAD_ZONE = "dead_zone"
    RELAY = "relay"


@dataclass(frozen=True)
class PrimitiveComponent:
    """One dead-zone or relay term of the primitive decomposition.

    For a dead zone, ``magnitude`` is the outer slope m; for a relay it is the
    jump amplitude Y1.  ``threshold`` is the activation abscissa X1 >= 0.
    """

    kind: PrimitiveKind
    threshold: float
    magnitude: float

    def __post_init__(self) -> None:
        if self.threshold < 0:
            raise NonlinearityError(f"negative threshold {self.threshold}")

    def evaluate(self, x: float) -> float:
        """Time-domain value at ``x`` (odd, right-limit at the threshold)."""
        s = math.copysign(1.0, x) if x != 0 else 0.0
        a = abs(x)
        if self.kind is PrimitiveKind.DEAD_ZONE:
            return self.magnitude * s * max(a - self.threshold, 0.0)
        return self.magnitude * s if a >= self.threshold and a > 0 else 0.0


@dataclass(frozen=True)
class PiecewiseNonlinearity:
    """Odd piecewise-linear map defined by breakpoints on x >= 0.

    ``x`` is nondecreasing; a value repeated twice marks a jump.  The graph
    starts at the origin (prepended implicitly when absent), passes through
    the given points, and extends beyond the last point with ``final_slope``
    (default: the slope of the last recorded segment, or 0 when there is
    none).  A leading point at x=0 with y != 0 encodes a jump at the origin
    (ideal relay).  Evaluation at a jump abscissa returns the right limit.
    """

    x: tuple[float, ...]
    y: tuple[float, ...]
    final_slope: float | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", tuple(float(v) for v in self.x))
        object.__setattr__(self, "y", tuple(float(v) for v in self.y))
        if self.final_slope is not None:
            object.__setattr__(self, "final_slope", float(self.final_slope))
        self._validate()

    def _validate(self) -> None:
        if len(self.x) != len(self.y) or len(self.x) < 1:
            raise NonlinearityError("x and y must have equal length >= 1")
        if not all(math.isfinite(v) for v in self.x + self.y):
            raise NonlinearityError("breakpoints must be finite")
        if self.x[0] < 0:
            raise NonlinearityError("abscissae must be >= 0")
        if any(b < a for a, b in zip(self.x, self.x[1:])):
            raise NonlinearityError("abscissae must be nondecreasing")
        counts: dict[float, int] = {}
        for v in self._vertex_xs():
            counts[v] = counts.get(v, 0) + 1
            if counts[v] > 2:
                raise NonlinearityError(
                    f"abscissa {v} repeated more than twice (merge coincident jumps)"
                )
        for a, b, ya, yb in zip(self.x, self.x[1:], self.y, self.y[1:]):
            if a == b and ya == yb:
                raise NonlinearityError(f"repeated abscissa {a} with no jump")
        if self.final_slope is not None and not math.isfinite(self.final_slope):
            raise NonlinearityError("final_slope must be finite")

    def _vertex_xs(self) -> list[float]:
        xs = list(self.x)
        if not (xs[0] == 0.0 and self.y[0] == 0.0):
            xs.insert(0, 0.0)
        return xs

    # -- derived geometry -------------------------------------------------

    @cached_property
    def vertices(self) -> tuple[tuple[float, float], ...]:
        """Graph vertices on x >= 0, starting at the origin."""
        pts = list(zip(self.x, self.y))
        if pts[0] != (0.0, 0.0):
            pts.insert(0, (0.0, 0.0))
        return tuple(pts)

    @cached_property
    def segments(self) -> tuple[tuple[float, float, float], ...]:
        """Finite linear pieces as (start x, end x, slope)."""
        out = []
        for (x0, y0), (x1, y1) in zip(self.vertices, self.vertices[1:]):
            if x1 > x0:
                out.append((x0, x1, (y1 - y0) / (x1 - x0)))
        return tuple(out)

    @cached_property
    def jumps(self) -> tuple[tuple[float, float], ...]:
        """Discontinuities as (abscissa Xj, amplitude Yj)."""
        out = []
        for (x0, y0), (x1, y1) in zip(self.vertices, self.vertices[1:]):
            if x1 == x0:
                out.append((x0, y1 - y0))
        return tuple(out)

    @cached_property
    def initial_slope(self) -> float:
        """Slope m0 of the first linear piece."""
        if self.segments:
            return self.segments[0][2]
        return self.last_slope

    @cached_property
    def last_slope(self) -> float:
        """Slope extending beyond the last vertex (m_r)."""
        if self.final_slope is not None:
            return self.final_slope
        if self.segments:
            return self.segments[-1][2]
        return 0.0

    @cached_property
    def breakpoints(self) -> tuple[float, ...]:
        """Distinct abscissae where the slope changes or the graph jumps."""
        marks = {xj for xj, _ in self.jumps}
        for (_, xe, m), nxt in zip(self.segments, self.segments[1:]):
            if nxt[2] != m:
                marks.add(xe)
        if self.segments and self.last_slope != self.segments[-1][2]:
            marks.add(self.segments[-1][1])
        return tuple(sorted(marks))

    @property
    def max_breakpoint(self) -> float:
        """Largest vertex abscissa (0 when only the origin is recorded)."""
        return self.vertices[-1][0]

    @property
    def has_origin_jump(self) -> bool:
        return any(xj == 0.0 for xj, _ in self.jumps)

    # -- evaluation -------------------------------------------------------

    def evaluate(self, x: float, *, left: bool = False) -> float:
        """Value y(x) with odd extension; right limit at jumps.

        ``left=True`` returns the left limit instead, which only differs at a
        jump abscissa (used by the quadrature oracle to integrate one-sided).
        """
        if x < 0:
            return -self.evaluate(-x, left=left)
        xs = self._xs
        ys = self._ys
        # rightmost vertex with vx <= x; ties (jump) resolved to the right
        i = bisect_right(xs, x) - 1
        if left and i > 0 and xs[i] == x:
            i -= 1
        if i >= len(xs) - 1:
            return ys[-1] + self.last_slope * (x - xs[-1])
        m = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]) if xs[i + 1] > xs[i] else 0.0
        return ys[i] + m * (x - xs[i])

    @cached_property
    def _xs(self) -> tuple[float, ...]:
        return tuple(v[0] for v in self.vertices)

    @cached_property
    def _ys(self) -> tuple[float, ...]:
        return tuple(v[1] for v in self.vertices)

    # -- decomposition ----------------------------------------------------

    def decompose(self) -> tuple[float, tuple[PrimitiveComponent, ...]]:
        """Split into the initial gain m0 plus dead-zone and relay terms.

        Returns ``(m0, components)`` such that for every x not at a jump:

            y(x) = m0 * x + sum(c.evaluate(x) for c in components)
        """
        comps: list[PrimitiveComponent] = []
        slopes = [m for _, _, m in self.segments] + [self.last_slope]
        bounds = [xe for _, xe, _ in self.segments]
        for xb, m_prev, m_next in zip(bounds, slopes, slopes[1:]):
            if m_next != m_prev:
                comps.append(
                    PrimitiveComponent(PrimitiveKind.DEAD_ZONE, xb, m_next - m_prev)
                )
        for xj, yj in self.jumps:
            comps.append(PrimitiveComponent(PrimitiveKind.RELAY, xj, yj))
        comps.sort(key=lambda c: (c.threshold, c.kind.value))
        return self.initial_slope, tuple(comps)

    # -- serialization ----------------------------------------------------

    @classmethod
    def from_dict(cls, data: dict) -> "PiecewiseNonlinearity":
        try:
            x = data["x"]
            y = data["y"]
        except (KeyError, TypeError) as exc:
            raise NonlinearityError(
                "nonlinearity descriptor must be an object with 'x' and 'y' arrays"
            ) from exc
        if not isinstance(x, Sequence) or not isinstance(y, Sequence):
            raise NonlinearityError("'x' and 'y' must be arrays of numbers")
        return cls(tuple(x), tuple(y), data.get("final_slope"))

    @classmethod
    def from_json(cls, text: str) -> "PiecewiseNonlinearity":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise NonlinearityError(f"invalid JSON: {exc}") from exc
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        out = {"x": list(self.x), "y": list(self.y)}
        if self.final_slope is not None:
            out["final_slope"] = self.final_slope
        return out
