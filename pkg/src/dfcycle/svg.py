"""Dependency-free standalone SVG line plots for the CLI data products."""

from __future__ import annotations

from dataclasses import dataclass, field

_MARGIN_L = 64
_MARGIN_R = 16
_MARGIN_T = 28
_MARGIN_B = 44


@dataclass(frozen=True)
class Series:
    x: list
    y: list
    label: str = ""
    color: str = "#c02020"
    dash: str | None = None  # e.g. "6,4"
    points: list = field(default_factory=list)


def _fmt(v: float) -> str:
    return f"{v:.6g}"


def _bounds(series):
    xs = [v for s in series for v in s.x]
    ys = [v for s in series for v in s.y]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0
    pad = 0.04 * (y1 - y0)
    return x0, x1, y0 - pad, y1 + pad


def line_plot(
    series: list[Series],
    *,
    title: str = "",
    xlabel: str = "",
    ylabel: str = "",
    width: int = 720,
    height: int = 480,
) -> str:
    """Render polyline series with axes and min/max tick labels."""
    if not series or all(len(s.x) == 0 for s in series):
        raise ValueError("nothing to plot")
    x0, x1, y0, y1 = _bounds(series)
    pw = width - _MARGIN_L - _MARGIN_R
    ph = height - _MARGIN_T - _MARGIN_B

    def sx(v):
        return _MARGIN_L + pw * (v - x0) / (x1 - x0)

    def sy(v):
        return _MARGIN_T + ph * (1.0 - (v - y0) / (y1 - y0))

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    ax = (
        f'<path d="M {_MARGIN_L} {_MARGIN_T} V {_MARGIN_T + ph} H {_MARGIN_L + pw}" '
        'fill="none" stroke="black" stroke-width="1"/>'
    )
    out.append(ax)
    if y0 < 0 < y1:  # zero line helps read sign changes
        out.append(
            f'<line x1="{_MARGIN_L}" y1="{_fmt(sy(0))}" x2="{_MARGIN_L + pw}" '
            f'y2="{_fmt(sy(0))}" stroke="#bbbbbb" stroke-width="0.7"/>'
        )
    font = 'font-family="sans-serif" font-size="12"'
    out.append(
        f'<text x="{_MARGIN_L}" y="{_MARGIN_T + ph + 16}" {font}>{_fmt(x0)}</text>'
    )
    out.append(
        f'<text x="{_MARGIN_L + pw}" y="{_MARGIN_T + ph + 16}" text-anchor="end" '
        f"{font}>{_fmt(x1)}</text>"
    )
    out.append(
        f'<text x="{_MARGIN_L - 6}" y="{_MARGIN_T + ph}" text-anchor="end" {font}>'
        f"{_fmt(y0)}</text>"
    )
    out.append(
        f'<text x="{_MARGIN_L - 6}" y="{_MARGIN_T + 10}" text-anchor="end" {font}>'
        f"{_fmt(y1)}</text>"
    )
    if title:
        out.append(
            f'<text x="{width // 2}" y="18" text-anchor="middle" {font}>{title}</text>'
        )
    if xlabel:
        out.append(
            f'<text x="{_MARGIN_L + pw // 2}" y="{height - 8}" text-anchor="middle" '
            f"{font}>{xlabel}</text>"
        )
    if ylabel:
        out.append(
            f'<text x="14" y="{_MARGIN_T + ph // 2}" text-anchor="middle" {font} '
            f'transform="rotate(-90 14 {_MARGIN_T + ph // 2})">{ylabel}</text>'
        )

    legend_y = _MARGIN_T + 14
    for s in series:
        pts = " ".join(f"{_fmt(sx(px))},{_fmt(sy(py))}" for px, py in zip(s.x, s.y))
        dash = f' stroke-dasharray="{s.dash}"' if s.dash else ""
        out.append(
            f'<polyline points="{pts}" fill="none" stroke="{s.color}" '
            f'stroke-width="1.5"{dash}/>'
        )
        for px, py in s.points:
            out.append(
                f'<circle cx="{_fmt(sx(px))}" cy="{_fmt(sy(py))}" r="3.5" '
                f'fill="{s.color}"/>'
            )
        if s.label:
            lx = _MARGIN_L + pw - 150
            out.append(
                f'<line x1="{lx}" y1="{legend_y - 4}" x2="{lx + 26}" y2="{legend_y - 4}" '
                f'stroke="{s.color}" stroke-width="1.5"{dash}/>'
            )
            out.append(f'<text x="{lx + 32}" y="{legend_y}" {font}>{s.label}</text>')
            legend_y += 16
    out.append("</svg>")
    return "\n".join(out) + "\n"
