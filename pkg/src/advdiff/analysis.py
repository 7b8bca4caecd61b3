"""Verification layer: pointwise errors, golden tables, convergence, pollutants."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence, Union

import numpy as np

from .analytic import (
    DEFAULT_TERMS,
    TRUNCATED_PI,
    closed_form_reference,
    mode_decay_rate,
    series_solution,
)
from .errors import ConfigError, ScenarioError
from .fdm import Stencil, ftcs_coefficients, solve_ftcs, steps_for_alpha
from .model import (
    ScenarioSpec,
    SineMode,
    SolutionSurface,
    UniformGrid,
    build_grid,
    validate_scenario,
)

PERCENT_FLOOR = 1e-12

# Printed worked-example tables on the 6 x 6 grid x, t in {0, 0.2, ..., 1};
# rows are time levels, columns spatial nodes.
GOLDEN_FTCS = np.array([
    [0.0, 0.5878, 0.9511, 0.9511, 0.5878, 0.0],
    [0.0, 0.58361, 0.9445, 0.9446, 0.5841, 0.0],
    [0.0, 0.5794, 0.9380, 0.9377, 0.5802, 0.0],
    [0.0, 0.5752, 0.9315, 0.9313, 0.5764, 0.0],
    [0.0, 0.5711, 0.9250, 0.9250, 0.5726, 0.0],
    [0.0, 0.5670, 0.9185, 0.9187, 0.5688, 0.0],
])
GOLDEN_CLOSED_FORM = np.array([
    [0.0, 0.5878, 0.9511, 0.9511, 0.5878, 0.0],
    [0.0, 0.58362, 0.94432, 0.94431, 0.58361, 0.0],
    [0.0, 0.57948, 0.9376, 0.9376, 0.57948, 0.0],
    [0.0, 0.5753, 0.93099, 0.93098, 0.5753, 0.0],
    [0.0, 0.5713, 0.9244, 0.9243, 0.5713, 0.0],
    [0.0, 0.5672, 0.91785, 0.91784, 0.56725, 0.0],
])
GOLDEN_GRID = UniformGrid(dx=0.2, dt=0.2, M=5, N=5)


def golden_surface(table: np.ndarray) -> SolutionSurface:
    return SolutionSurface(grid=GOLDEN_GRID, values=np.array(table, dtype=float))


# ---------------------------------------------------------------------------
# pointwise error


class NodeError(NamedTuple):
    x: float
    t: float
    exact: float
    approx: float
    abs_error: float
    percent_error: float


@dataclass(frozen=True, eq=False)
class ErrorReport:
    """Errors at interior nodes (0 < x < L, every time level).

    ``percent_error`` is NaN where |exact| <= 1e-12; ``percent_defined``
    flags the nodes where it is meaningful.
    """

    x: np.ndarray
    t: np.ndarray
    exact: np.ndarray
    approx: np.ndarray
    abs_error: np.ndarray
    percent_error: np.ndarray
    grid: UniformGrid

    @property
    def percent_defined(self) -> np.ndarray:
        return ~np.isnan(self.percent_error)

    @property
    def sup_norm(self) -> float:
        return float(np.max(self.abs_error, initial=0.0))

    def __len__(self) -> int:
        return self.x.size

    def _node(self, i: int) -> NodeError:
        return NodeError(float(self.x[i]), float(self.t[i]), float(self.exact[i]),
                         float(self.approx[i]), float(self.abs_error[i]),
                         float(self.percent_error[i]))

    def rows(self):
        return (self._node(i) for i in range(self.x.size))

    def at(self, x: float, t: float) -> NodeError:
        d = np.hypot(self.x - x, self.t - t)
        i = int(np.argmin(d))
        if d[i] > 1e-9:
            raise KeyError(f"no reported node at (x={x:g}, t={t:g})")
        return self._node(i)


Reference = Union[SolutionSurface, np.ndarray, Callable]


def pointwise_error(surface: SolutionSurface, reference: Reference) -> ErrorReport:
    """|exact - approx| and percent error, with ``reference`` as the exact side.

    ``reference`` is another surface on the same grid, an array of the same
    shape, or a callable ``f(x, t)`` evaluated on the tensor grid.
    """
    grid = surface.grid
    tt, xx = np.meshgrid(grid.t, grid.x, indexing="ij")
    if isinstance(reference, SolutionSurface):
        exact = reference.values
    elif callable(reference):
        exact = np.asarray(reference(xx, tt), dtype=float)
    else:
        exact = np.asarray(reference, dtype=float)
    if exact.shape != surface.values.shape:
        raise ValueError(f"reference shape {exact.shape} != surface shape {surface.values.shape}")

    inner = (slice(None), slice(1, grid.M))
    exact = exact[inner].ravel()
    approx = surface.values[inner].ravel()
    abs_error = np.abs(exact - approx)
    defined = np.abs(exact) > PERCENT_FLOOR
    percent = np.full_like(abs_error, np.nan)
    percent[defined] = 100.0 * abs_error[defined] / np.abs(exact[defined])
    return ErrorReport(x=xx[inner].ravel(), t=tt[inner].ravel(), exact=exact, approx=approx,
                       abs_error=abs_error, percent_error=percent, grid=grid)


def reference_evaluator(scenario: ScenarioSpec, kind: str = "auto",
                        terms: int = DEFAULT_TERMS) -> Callable:
    """Exact-side evaluator: "closed-form", "series", or "auto".

    "auto" picks the closed-form formula for a single sine mode and the
    series otherwise.
    """
    scenario = validate_scenario(scenario)
    if kind == "auto":
        kind = "closed-form" if isinstance(scenario.ic, SineMode) else "series"
    if kind == "closed-form":
        return lambda x, t: closed_form_reference(x, t, scenario)
    if kind == "series":
        return series_solution(scenario, terms)
    raise ValueError(f"unknown reference kind {kind!r}")


def compare_scenario(scenario: ScenarioSpec, grid: UniformGrid,
                     stencil: Stencil = Stencil.FORWARD, reference: str = "auto",
                     terms: int = DEFAULT_TERMS, unsafe: bool = False) -> ErrorReport:
    surface = solve_ftcs(scenario, grid, stencil, unsafe=unsafe)
    return pointwise_error(surface, reference_evaluator(scenario, reference, terms))


def final_time_error(scenario: ScenarioSpec, grid: UniformGrid,
                     stencil: Stencil = Stencil.FORWARD, terms: int = DEFAULT_TERMS) -> float:
    """Sup-norm gap between the FTCS and series solutions at t = N dt."""
    surface = solve_ftcs(scenario, grid, stencil)
    oracle = series_solution(scenario, terms)
    exact = oracle(grid.x, np.full(grid.M + 1, grid.T))
    return float(np.max(np.abs(surface.values[-1] - exact)))


def argmax_location(surface: SolutionSurface, t: float) -> float:
    """Abscissa of the largest concentration at time level ``t``."""
    row = surface.at_time(t)
    return float(surface.x[int(np.argmax(row))])


# ---------------------------------------------------------------------------
# convergence


@dataclass(frozen=True, eq=False)
class ConvergenceStudy:
    M: np.ndarray
    dx: np.ndarray
    dt: np.ndarray
    alpha: float
    errors: np.ndarray
    orders: np.ndarray

    @property
    def order_defined(self) -> bool:
        return bool(np.all(np.isfinite(self.orders)))

    @property
    def ratios(self) -> np.ndarray:
        with np.errstate(divide="ignore", invalid="ignore"):
            return self.errors[:-1] / self.errors[1:]


def convergence_study(scenario: ScenarioSpec, levels: Sequence[int] = (10, 20, 40),
                      stencil: Stencil = Stencil.FORWARD, alpha: float = 0.25,
                      t_final: float | None = None,
                      terms: int = DEFAULT_TERMS) -> ConvergenceStudy:
    """Sup-norm error vs the series oracle on successively refined grids.

    ``levels`` are spatial interval counts M.  The coarsest level takes the
    fewest steps with D dt/dx^2 <= ``alpha``; finer levels scale the step
    count by (M_k / M_0)^2 so the realised alpha is identical on every level.
    Observed orders are log(e_k / e_{k+1}) / log(dx_k / dx_{k+1}); they are
    NaN when an error is zero.
    """
    scenario = validate_scenario(scenario)
    if scenario.is_split:
        raise ScenarioError("convergence study needs a uniform diffusivity")
    levels = [int(m) for m in levels]
    if len(levels) < 3 or sorted(set(levels)) != levels:
        raise ValueError("need at least three strictly increasing refinement levels")
    T = scenario.T if t_final is None else float(t_final)
    if T <= 0:
        raise ValueError("convergence study needs a positive final time")

    n0 = steps_for_alpha(scenario.D, scenario.L / levels[0], T, alpha)
    oracle = series_solution(scenario, terms)
    dxs, dts, errs = [], [], []
    for m in levels:
        scale = (m / levels[0]) ** 2
        n = int(round(n0 * scale))
        if abs(n - n0 * scale) > 1e-9:
            raise ValueError(f"level M={m} cannot keep alpha fixed (needs {n0 * scale:g} steps)")
        grid = build_grid(scenario.L, T, m, n)
        surface = solve_ftcs(scenario, grid, stencil)
        exact = oracle(grid.x, np.full(m + 1, T))
        dxs.append(grid.dx)
        dts.append(grid.dt)
        errs.append(float(np.max(np.abs(surface.values[-1] - exact))))

    dxs, dts, errs = np.array(dxs), np.array(dts), np.array(errs)
    with np.errstate(divide="ignore", invalid="ignore"):
        orders = np.log(errs[:-1] / errs[1:]) / np.log(dxs[:-1] / dxs[1:])
    orders[~np.isfinite(orders)] = np.nan
    realised = scenario.D * dts[0] / dxs[0] ** 2
    return ConvergenceStudy(M=np.array(levels), dx=dxs, dt=dts, alpha=realised,
                            errors=errs, orders=orders)


# ---------------------------------------------------------------------------
# pollutants


@dataclass(frozen=True)
class PollutantSpec:
    name: str
    diffusivity: float
    velocity: float
    formula: str = ""

    def __post_init__(self):
        if not self.diffusivity > 0:
            raise ScenarioError(f"{self.name}: diffusivity must be > 0, got {self.diffusivity}")


DEFAULT_REGISTRY = (
    PollutantSpec("Ammonia", 7.92e-2, 3.6e-4, "NH3"),
    PollutantSpec("Carbon monoxide", 7.20e-2, 3.6e-4, "CO"),
    PollutantSpec("Carbon dioxide", 5.40e-2, 3.6e-4, "CO2"),
    PollutantSpec("Sulphur dioxide", 4.68e-2, 3.6e-4, "SO2"),
)


def load_registry(path) -> tuple[PollutantSpec, ...]:
    """Read a JSON list of {"name", "diffusivity", "velocity"[, "formula"]}."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, list) or not data:
        raise ConfigError("pollutant registry must be a non-empty JSON list")
    allowed = {"name", "diffusivity", "velocity", "formula"}
    out = []
    for rec in data:
        if not isinstance(rec, dict) or set(rec) - allowed:
            raise ConfigError(f"bad pollutant record {rec!r}")
        try:
            out.append(PollutantSpec(str(rec["name"]), float(rec["diffusivity"]),
                                     float(rec["velocity"]), str(rec.get("formula", ""))))
        except KeyError as exc:
            raise ConfigError(f"pollutant record missing {exc}") from None
    return tuple(out)


def by_formula(formula: str, registry=DEFAULT_REGISTRY) -> PollutantSpec:
    for p in registry:
        if p.formula.lower() == formula.lower() or p.name.lower() == formula.lower():
            return p
    raise KeyError(formula)


@dataclass(frozen=True)
class PollutantRow:
    name: str
    formula: str
    diffusivity: float
    velocity: float
    rate: float
    rate_truncated_pi: float | None
    alpha: float
    beta: float
    label: str


def pollutant_table(registry: Sequence[PollutantSpec], u: float | None = None,
                    L: float = 1.0, grid: UniformGrid = GOLDEN_GRID,
                    truncated_pi: bool = False) -> list[PollutantRow]:
    """Decay rate and FTCS ratios per pollutant for the sin(pi x / L) mode.

    ``u`` overrides each record's own velocity.  With ``truncated_pi`` the
    rate is also computed with pi = 3.14 and the label shows that value.
    """
    if not registry:
        raise ValueError("empty pollutant registry")
    rows = []
    for p in registry:
        vel = p.velocity if u is None else u
        rate = mode_decay_rate(1, p.diffusivity, vel, L).rate
        rate_314 = mode_decay_rate(1, p.diffusivity, vel, L, pi=TRUNCATED_PI).rate \
            if truncated_pi else None
        c = ftcs_coefficients(p.diffusivity, vel, grid.dx, grid.dt)
        shown = rate_314 if truncated_pi else rate
        xs = "x" if L == 1 else f"x/{L:g}"
        rows.append(PollutantRow(
            name=p.name, formula=p.formula, diffusivity=p.diffusivity, velocity=vel,
            rate=rate, rate_truncated_pi=rate_314, alpha=float(c.alpha), beta=float(c.beta),
            label=f"exp(-{shown:.5f} t) sin(pi {xs})",
        ))
    return rows

