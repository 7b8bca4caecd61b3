"""CSV and SVG writers for surfaces and profiles.

Every writer takes a ``sink``: a path, or an open file object (text or
binary).  Output is UTF-8 with LF line endings and is byte-for-byte
deterministic for identical input.
"""

from __future__ import annotations

import io
import os
from dataclasses import dataclass
from typing import Sequence
from xml.sax.saxutils import escape

import numpy as np

from .errors import EmptySeries, SinkWriteFailure
from .model import SolutionSurface


def fmt(value: float) -> str:
    """9 significant digits, no trailing zeros; -0 printed as 0."""
    value = float(value)
    if value == 0:
        return "0"
    return format(value, ".9g")


def write_text(text: str, sink) -> int:
    data = text.encode("utf-8")
    try:
        if isinstance(sink, (str, os.PathLike)):
            with open(sink, "wb") as fh:
                fh.write(data)
        elif isinstance(sink, io.TextIOBase):
            sink.write(text)
        else:
            sink.write(data)
    except (OSError, ValueError) as exc:
        raise SinkWriteFailure(f"could not write output: {exc}") from exc
    return len(data)


def write_surface_csv(surface: SolutionSurface, sink) -> int:
    """Long-format ``x,t,C`` rows, time-outer; returns bytes written."""
    lines = ["x,t,C"]
    xs = [fmt(x) for x in surface.x]
    for t, row in zip(surface.t, surface.values):
        ts = fmt(t)
        lines.extend(f"{x},{ts},{fmt(c)}" for x, c in zip(xs, row))
    return write_text("\n".join(lines) + "\n", sink)


@dataclass(frozen=True, eq=False)
class ProfileSeries:
    """One curve: concentration against x (or against t)."""

    label: str
    abscissa: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.abscissa, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if a.shape != v.shape or a.ndim != 1:
            raise ValueError("abscissa and values must be 1-D arrays of equal length")
        if a.size > 1 and np.any(np.diff(a) <= 0):
            raise ValueError(f"{self.label}: abscissae must be strictly increasing")
        object.__setattr__(self, "abscissa", a)
        object.__setattr__(self, "values", v)

    @property
    def column(self) -> str:
        return "C_" + "".join(ch for ch in self.label if ch not in " =")


def profiles_at_times(surface: SolutionSurface, times: Sequence[float]) -> list[ProfileSeries]:
    """C(x, t) against x at each requested time level."""
    return [ProfileSeries(f"t={fmt(t)}", surface.x, surface.at_time(t)) for t in times]


def histories_at_nodes(surface: SolutionSurface, xs: Sequence[float]) -> list[ProfileSeries]:
    """C(x, t) against t at each requested spatial node."""
    out = []
    for x in xs:
        m = int(round(x / surface.grid.dx))
        if abs(m * surface.grid.dx - x) > 1e-9 or not 0 <= m <= surface.grid.M:
            raise ValueError(f"x={x:g} is not a grid node")
        out.append(ProfileSeries(f"x={fmt(x)}", surface.t, surface.values[:, m]))
    return out


def write_profiles_csv(series: Sequence[ProfileSeries], sink, abscissa: str = "x") -> int:
    """Wide CSV ``x,C_t0.5,C_t1,...``; all series must share abscissae."""
    if not series:
        raise EmptySeries("no profiles to write")
    base = series[0].abscissa
    for s in series[1:]:
        if s.abscissa.shape != base.shape or np.any(s.abscissa != base):
            raise ValueError("profiles in one CSV must share their abscissae")
    lines = [",".join([abscissa] + [s.column for s in series])]
    for i, a in enumerate(base):
        lines.append(",".join([fmt(a)] + [fmt(s.values[i]) for s in series]))
    return write_text("\n".join(lines) + "\n", sink)


# ---------------------------------------------------------------------------
# SVG

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b")


def _ticks(lo: float, hi: float, count: int = 5) -> np.ndarray:
    if hi == lo:
        return np.array([lo])
    return np.linspace(lo, hi, count)


def _tick_label(v: float) -> str:
    return format(0.0 if abs(v) < 1e-15 else v, ".3g")


def write_profile_svg(series: Sequence[ProfileSeries], x_label: str, y_label: str,
                      sink, width: int = 640, height: int = 420, title: str = "") -> int:
    """Standalone SVG line plot: one polyline per series, ticks and a legend."""
    if not series:
        raise EmptySeries("need at least one series to plot")
    for s in series:
        if s.abscissa.size < 2:
            raise EmptySeries(f"series {s.label!r} has fewer than two points")

    left, right, top, bottom = 70, 150, 40 if title else 20, 55
    pw, ph = width - left - right, height - top - bottom
    xlo = min(float(s.abscissa[0]) for s in series)
    xhi = max(float(s.abscissa[-1]) for s in series)
    ylo = min(float(np.min(s.values)) for s in series)
    yhi = max(float(np.max(s.values)) for s in series)
    ylo = min(ylo, 0.0)
    if yhi == ylo:
        yhi = ylo + 1.0

    def sx(v):
        return left + (v - xlo) / (xhi - xlo) * pw

    def sy(v):
        return top + ph - (v - ylo) / (yhi - ylo) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{left + pw / 2:.2f}" y="22" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="14">{escape(title)}</text>')
    out.append(f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>')

    for v in _ticks(xlo, xhi):
        px = sx(v)
        out.append(f'<line x1="{px:.2f}" y1="{top + ph}" x2="{px:.2f}" y2="{top + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{px:.2f}" y="{top + ph + 18}" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="11">{_tick_label(v)}</text>')
    for v in _ticks(ylo, yhi):
        py = sy(v)
        out.append(f'<line x1="{left - 5}" y1="{py:.2f}" x2="{left}" y2="{py:.2f}" stroke="black"/>')
        out.append(f'<text x="{left - 8}" y="{py + 4:.2f}" text-anchor="end" '
                   f'font-family="sans-serif" font-size="11">{_tick_label(v)}</text>')
    out.append(f'<text x="{left + pw / 2:.2f}" y="{height - 12}" text-anchor="middle" '
               f'font-family="sans-serif" font-size="13">{escape(x_label)}</text>')
    out.append(f'<text x="16" y="{top + ph / 2:.2f}" text-anchor="middle" font-family="sans-serif" '
               f'font-size="13" transform="rotate(-90 16 {top + ph / 2:.2f})">{escape(y_label)}</text>')

    for i, s in enumerate(series):
        color = _PALETTE[i % len(_PALETTE)]
        pts = " ".join(f"{sx(a):.2f},{sy(v):.2f}" for a, v in zip(s.abscissa, s.values))
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>')

    lx, ly = left + pw + 15, top + 10
    for i, s in enumerate(series):
        color = _PALETTE[i % len(_PALETTE)]
        y = ly + 18 * i
        out.append(f'<line x1="{lx}" y1="{y}" x2="{lx + 20}" y2="{y}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{lx + 26}" y="{y + 4}" font-family="sans-serif" '
                   f'font-size="12">{escape(s.label)}</text>')
    out.append("</svg>")
    return write_text("\n".join(out) + "\n", sink)
