"""Closed-form machinery for C_t = D C_xx - u C_x with C(0,t) = C(L,t) = 0.

The substitution C = A V with

    A(x, t) = A0 exp(-u^2 t / (4 D)) exp(u x / (2 D))

removes the advection term and leaves the heat equation V_t = D V_xx with
V(x, 0) = exp(-u x / (2 D)) f(x).  Expanding V in the half-range sine
basis gives

    C(x, t) = A(x, t) sum_n b_n sin(n pi x / L) exp(-D (n pi / L)^2 t),
    b_n = (2 / L) int_0^L exp(-u x / (2 D)) f(x) sin(n pi x / L) dx.

Only the negative separation constant yields nontrivial Dirichlet modes,
so the zero and positive cases have no runtime counterpart here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ExponentOverflow, NotSineMode, QuadratureNotConverged, ScenarioError
from .model import (
    EXPONENT_LIMIT,
    InitialCondition,
    Samples,
    ScenarioSpec,
    SineMode,
    sine_mode,
    validate_scenario,
)

TRUNCATED_PI = 3.14
DEFAULT_TERMS = 64
DEFAULT_PANELS = 2048
RICHARDSON_TOL = 1e-10
MAX_AUTO_PANELS = 65536

_CHUNK = 8192


def _check_exponent(x, u: float, D: float) -> None:
    worst = np.max(np.abs(u * np.asarray(x, dtype=float) / (2.0 * D)), initial=0.0)
    if worst > EXPONENT_LIMIT:
        raise ExponentOverflow(
            f"|u x / (2 D)| = {worst:g} exceeds {EXPONENT_LIMIT:g}"
        )


def transform_factor(x, t, u: float, D: float, A0: float = 1.0):
    """A0 exp(-u^2 t / (4 D)) exp(u x / (2 D)); vectorised over x and t."""
    _check_exponent(x, u, D)
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    out = A0 * np.exp(-u * u * t / (4.0 * D)) * np.exp(u * x / (2.0 * D))
    return out[()] if out.ndim == 0 else out


@dataclass(frozen=True)
class DecayRate:
    """Exponential decay rate of one sine mode, split into its two parts."""

    rate: float
    n: int
    advective: float
    diffusive: float


def mode_decay_rate(n: int, D: float, u: float, L: float, pi: float = np.pi) -> DecayRate:
    """u^2/(4D) + D (n pi / L)^2.

    ``pi`` is exposed so the truncated value 3.14 can be substituted when
    matching published decay rates that were computed with it.
    """
    if n < 1:
        raise ValueError(f"mode number must be >= 1, got {n}")
    if D <= 0:
        raise ScenarioError(f"D must be > 0, got {D}")
    advective = u * u / (4.0 * D)
    diffusive = D * (n * pi / L) ** 2
    return DecayRate(rate=advective + diffusive, n=n, advective=advective, diffusive=diffusive)


# ---------------------------------------------------------------------------
# Fourier sine coefficients


def _even_at_least_two(k: int) -> int:
    k = max(2, int(k))
    return k + (k % 2)


def _simpson_rule(breaks: np.ndarray, counts: list[int]) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of composite Simpson on each [breaks[i], breaks[i+1]]."""
    xs, ws = [], []
    for a, b, k in zip(breaks[:-1], breaks[1:], counts):
        h = (b - a) / k
        x = a + h * np.arange(k + 1)
        w = np.full(k + 1, 2.0)
        w[1::2] = 4.0
        w[0] = w[-1] = 1.0
        xs.append(x)
        ws.append(w * h / 3.0)
    return np.concatenate(xs), np.concatenate(ws)


def _sine_projection(ic: InitialCondition, u: float, D: float, L: float, K: int,
                     breaks: np.ndarray, counts: list[int]) -> np.ndarray:
    x, w = _simpson_rule(breaks, counts)
    g = np.exp(-u * x / (2.0 * D)) * ic.values(x, L)
    n = np.arange(1, K + 1)
    modes = sine_mode(n[None, :], x[:, None], L)
    return (2.0 / L) * ((w * g) @ modes)


def fourier_coefficients(ic: InitialCondition, u: float, D: float, L: float,
                         K: int = DEFAULT_TERMS, panels: int = DEFAULT_PANELS) -> np.ndarray:
    """Sine coefficients b_1..b_K of the transformed initial profile.

    Composite Simpson over ``panels`` intervals.  Tabulated profiles are
    integrated segment by segment so the interpolation kinks fall on panel
    edges.  The result is checked against the same rule at half resolution;
    a disagreement above 1e-10 raises QuadratureNotConverged.
    """
    if K < 1:
        raise ValueError(f"need at least one term, got K={K}")
    if panels < 8 or panels % 2:
        raise ValueError(f"panels must be even and >= 8, got {panels}")
    _check_exponent(L, u, D)

    if isinstance(ic, Samples):
        breaks = np.asarray(ic.xs, dtype=float)
        counts = [_even_at_least_two(np.ceil(panels * (b - a) / L))
                  for a, b in zip(breaks[:-1], breaks[1:])]
    else:
        breaks = np.array([0.0, L])
        counts = [panels]
    halves = [_even_at_least_two(k // 2) for k in counts]

    fine = _sine_projection(ic, u, D, L, K, breaks, counts)
    coarse = _sine_projection(ic, u, D, L, K, breaks, halves)
    gap = np.abs(fine - coarse)
    if np.max(gap) > RICHARDSON_TOL:
        worst = int(np.argmax(gap)) + 1
        raise QuadratureNotConverged(
            f"b_{worst} changes by {gap[worst - 1]:.3g} between {sum(halves)} and "
            f"{sum(counts)} panels (tolerance {RICHARDSON_TOL:g}); increase panels"
        )
    return fine


# ---------------------------------------------------------------------------
# series solution


class SeriesValue(NamedTuple):
    value: np.ndarray | float
    tail: np.ndarray | float


@dataclass(frozen=True, eq=False)
class SeriesSolution:
    """Truncated sine-series solution; call it as ``sol(x, t)``."""

    coefficients: np.ndarray
    u: float
    D: float
    L: float

    def __post_init__(self):
        b = np.asarray(self.coefficients, dtype=float)
        if b.ndim != 1 or b.size < 1:
            raise ValueError("need a non-empty 1-D coefficient vector")
        if not np.all(np.isfinite(b)):
            raise ValueError("coefficients must be finite")
        b.setflags(write=False)
        object.__setattr__(self, "coefficients", b)

    @property
    def K(self) -> int:
        return self.coefficients.size

    @property
    def wavenumbers(self) -> np.ndarray:
        return np.arange(1, self.K + 1) * np.pi / self.L

    def __call__(self, x, t):
        return series_evaluate(self, x, t).value

    def on_grid(self, x, t) -> np.ndarray:
        """Values on the tensor grid, shape (len(t), len(x))."""
        x = np.asarray(x, dtype=float)
        t = np.asarray(t, dtype=float)
        self._check_domain(x, t)
        n = np.arange(1, self.K + 1)
        k2 = self.wavenumbers ** 2
        modes = sine_mode(n[:, None], x[None, :], self.L)
        weighted = self.coefficients[None, :] * np.exp(-self.D * np.outer(t, k2))
        factor = np.exp(-self.u ** 2 * t / (4.0 * self.D))[:, None] * \
            np.exp(self.u * x / (2.0 * self.D))[None, :]
        return factor * (weighted @ modes)

    def _check_domain(self, x, t) -> None:
        if np.any(x < 0) or np.any(x > self.L * (1 + 1e-12)):
            raise ValueError(f"x must lie in [0, {self.L:g}]")
        if np.any(t < 0):
            raise ValueError("t must be >= 0")
        _check_exponent(x, self.u, self.D)


def series_evaluate(sol: SeriesSolution, x, t) -> SeriesValue:
    """C(x, t) from the truncated series, plus |b_K| exp(-D (K pi/L)^2 t).

    The tail estimate is in transformed (V) units; it ignores the
    transformation factor.
    """
    x, t = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(t, dtype=float))
    sol._check_domain(x, t)
    flat_x, flat_t = x.ravel(), t.ravel()
    n = np.arange(1, sol.K + 1)
    k2 = sol.wavenumbers ** 2
    total = np.empty(flat_x.size)
    for lo in range(0, flat_x.size, _CHUNK):
        xs = flat_x[lo:lo + _CHUNK, None]
        ts = flat_t[lo:lo + _CHUNK, None]
        terms = sine_mode(n[None, :], xs, sol.L) * np.exp(-sol.D * k2[None, :] * ts)
        total[lo:lo + _CHUNK] = terms @ sol.coefficients
    value = transform_factor(flat_x, flat_t, sol.u, sol.D) * total
    tail = abs(sol.coefficients[-1]) * np.exp(-sol.D * k2[-1] * flat_t)
    value = value.reshape(x.shape)
    tail = tail.reshape(x.shape)
    if value.ndim == 0:
        return SeriesValue(float(value), float(tail))
    return SeriesValue(value, tail)


def series_solution(scenario: ScenarioSpec, terms: int = DEFAULT_TERMS,
                    panels: int | None = None) -> SeriesSolution:
    """Series solution of a uniform-diffusivity scenario.

    ``panels=None`` starts at the default quadrature resolution and doubles
    it (up to 65536 panels) until the half-resolution check passes; an
    explicit count is used as given.

    With u != 0 the transformed initial profile is not a single mode, so
    the series needs many terms near t = 0 (t < 1e-3 or so).
    """
    scenario = validate_scenario(scenario)
    if scenario.is_split:
        raise ScenarioError("the series solution needs a uniform diffusivity D")
    if panels is not None:
        b = fourier_coefficients(scenario.ic, scenario.u, scenario.D, scenario.L, terms, panels)
        return SeriesSolution(b, scenario.u, scenario.D, scenario.L)
    panels = DEFAULT_PANELS
    while True:
        try:
            b = fourier_coefficients(scenario.ic, scenario.u, scenario.D, scenario.L, terms, panels)
            break
        except QuadratureNotConverged:
            if panels >= MAX_AUTO_PANELS:
                raise
            panels *= 2
    return SeriesSolution(b, scenario.u, scenario.D, scenario.L)


# ---------------------------------------------------------------------------
# single-mode reference formula


def _single_mode(scenario: ScenarioSpec) -> int:
    if not isinstance(scenario.ic, SineMode):
        raise NotSineMode("the closed-form reference needs a sine-mode initial condition")
    if scenario.is_split:
        raise ScenarioError("the closed-form reference needs a uniform diffusivity D")
    return scenario.ic.n


def closed_form_reference(x, t, scenario: ScenarioSpec):
    """exp(-(u^2/(4D) + D (n pi/L)^2) t) sin(n pi x / L).

    Exact only for u = 0: with advection the transformed initial profile
    exp(-u x/(2D)) sin(n pi x/L) is not a single sine mode.  Use
    ``closed_form_residual`` to see how far off it is.
    """
    n = _single_mode(scenario)
    rate = mode_decay_rate(n, scenario.D, scenario.u, scenario.L).rate
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    out = np.exp(-rate * t) * sine_mode(n, x, scenario.L)
    return out[()] if out.ndim == 0 else out


def closed_form_residual(x, t, scenario: ScenarioSpec):
    """C_t - D C_xx + u C_x of the closed-form reference, from exact derivatives."""
    n = _single_mode(scenario)
    D, u, L = scenario.D, scenario.u, scenario.L
    k = n * np.pi / L
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    decay = np.exp(-mode_decay_rate(n, D, u, L).rate * t)
    # C_t - D C_xx = -(u^2 / 4D) C once the diffusive part of the rate cancels
    out = -(u * u / (4.0 * D)) * decay * sine_mode(n, x, L) + u * k * decay * np.cos(k * x)
    return out[()] if out.ndim == 0 else out
