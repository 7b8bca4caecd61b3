"""Explicit forward-time, centred-space solver.

Interior update, with alpha = D dt/dx^2 and beta = u dt/dx:

    V_m^{n+1} = V_m^n + alpha (V_{m+1} - 2 V_m + V_{m-1}) + advection

where the advection term depends on the stencil:

    forward   -beta (V_{m+1} - V_m)           (downwind for u > 0)
    central   -beta/2 (V_{m+1} - V_{m-1})
    upwind    -beta (V_m - V_{m-1}) for u >= 0, -beta (V_{m+1} - V_m) for u < 0

Boundary nodes are held at zero.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import InterfaceOffGrid, LengthMismatch, ScenarioError, UnstableParameters
from .model import ScenarioSpec, SolutionSurface, UniformGrid, validate_scenario


class Stencil(str, enum.Enum):
    FORWARD = "forward"
    CENTRAL = "central"
    UPWIND = "upwind"


@dataclass(frozen=True, eq=False)
class FtcsCoefficients:
    """Mesh ratios alpha = D dt/dx^2 and beta = u dt/dx.

    ``alpha`` may be a per-node array (piecewise diffusivity).
    """

    alpha: float | np.ndarray
    beta: float

    @property
    def alpha_max(self) -> float:
        return float(np.max(self.alpha))


def ftcs_coefficients(D, u: float, dx: float, dt: float) -> FtcsCoefficients:
    if dx <= 0 or dt < 0:
        raise ValueError(f"need dx > 0 and dt >= 0, got dx={dx}, dt={dt}")
    alpha = D * dt / dx ** 2
    beta = u * dt / dx
    if isinstance(alpha, np.ndarray):
        alpha = alpha.copy()
        alpha.setflags(write=False)
    return FtcsCoefficients(alpha=alpha, beta=beta)


def update_weights(alpha, beta: float, stencil: Stencil = Stencil.FORWARD):
    """(left, centre, right) weights of V_{m-1}, V_m, V_{m+1} in the update."""
    stencil = Stencil(stencil)
    if stencil is Stencil.FORWARD or (stencil is Stencil.UPWIND and beta < 0):
        return alpha, 1 - 2 * alpha + beta, alpha - beta
    if stencil is Stencil.CENTRAL:
        return alpha + beta / 2, 1 - 2 * alpha, alpha - beta / 2
    return alpha + beta, 1 - 2 * alpha - beta, alpha


@dataclass(frozen=True)
class StabilityReport:
    alpha: float
    beta: float
    stencil: Stencil
    stable: bool
    rules: dict[str, bool] = field(compare=False)
    peclet: float

    def violations(self) -> list[str]:
        return [rule for rule, ok in self.rules.items() if not ok]

    def describe(self) -> str:
        state = "stable" if self.stable else "UNSTABLE"
        text = (f"{state}: alpha={self.alpha:.6g}, beta={self.beta:.6g}, "
                f"cell Peclet={self.peclet:.6g}, stencil={self.stencil.value}")
        if not self.stable:
            text += "; violated: " + ", ".join(self.violations())
        return text


def check_stability(c: FtcsCoefficients, stencil: Stencil = Stencil.FORWARD) -> StabilityReport:
    """Report whether every update weight is nonnegative and alpha <= 1/2.

    Nonnegative weights that sum to one make each step a convex
    combination, hence the discrete maximum principle.  For per-node alpha
    the worst node decides.
    """
    stencil = Stencil(stencil)
    alpha = np.asarray(c.alpha, dtype=float)
    left, centre, right = update_weights(alpha, c.beta, stencil)
    rules = {
        "alpha <= 1/2": bool(np.all(alpha <= 0.5)),
        "left weight >= 0": bool(np.all(np.asarray(left) >= 0)),
        "centre weight >= 0": bool(np.all(np.asarray(centre) >= 0)),
        "right weight >= 0": bool(np.all(np.asarray(right) >= 0)),
    }
    a = float(np.max(alpha))
    peclet = c.beta / a if a > 0 else float("inf")
    return StabilityReport(alpha=a, beta=float(c.beta), stencil=stencil,
                           stable=all(rules.values()), rules=rules, peclet=peclet)


def ftcs_step(row, c: FtcsCoefficients, stencil: Stencil = Stencil.FORWARD) -> np.ndarray:
    """Advance one time level; returns a new array with zero boundaries."""
    v = np.asarray(row, dtype=float)
    if v.ndim != 1 or v.size < 3:
        raise LengthMismatch(f"need a 1-D row with at least 3 nodes, got shape {v.shape}")
    alpha = c.alpha
    if isinstance(alpha, np.ndarray):
        if alpha.shape != v.shape:
            raise LengthMismatch(f"per-node alpha has {alpha.size} entries, row has {v.size}")
        alpha = alpha[1:-1]
    beta = c.beta
    stencil = Stencil(stencil)

    left, mid, right = v[:-2], v[1:-1], v[2:]
    if stencil is Stencil.FORWARD or (stencil is Stencil.UPWIND and beta < 0):
        adv = -beta * (right - mid)
    elif stencil is Stencil.CENTRAL:
        adv = -(beta / 2) * (right - left)
    else:
        adv = -beta * (mid - left)

    out = np.zeros_like(v)
    out[1:-1] = mid + alpha * (right - 2 * mid + left) + adv
    return out


def _check_grid(scenario: ScenarioSpec, grid: UniformGrid) -> None:
    if abs(grid.L - scenario.L) > 1e-12 * max(1.0, scenario.L):
        raise ScenarioError(f"grid length M*dx={grid.L:g} does not match L={scenario.L:g}")


def _march(scenario: ScenarioSpec, grid: UniformGrid, c: FtcsCoefficients,
           stencil: Stencil, unsafe: bool) -> SolutionSurface:
    report = check_stability(c, stencil)
    if not report.stable and not unsafe:
        raise UnstableParameters(
            f"refusing unstable run ({report.describe()}); the explicit scheme needs "
            "alpha <= 1/2 and nonnegative update weights. Pass unsafe=True to override."
        )
    values = np.empty((grid.N + 1, grid.M + 1))
    row = np.asarray(scenario.initial_values(grid.x), dtype=float).copy()
    row[0] = row[-1] = 0.0
    values[0] = row
    for n in range(grid.N):
        row = ftcs_step(row, c, stencil)
        values[n + 1] = row
    return SolutionSurface(grid=grid, values=values)


def solve_ftcs(scenario: ScenarioSpec, grid: UniformGrid,
               stencil: Stencil = Stencil.FORWARD, unsafe: bool = False) -> SolutionSurface:
    """March the uniform-D scheme over every time level of ``grid``.

    The run horizon is the grid's N*dt; the scenario supplies D, u, L and
    the initial profile.  Unstable parameters raise UnstableParameters
    unless ``unsafe`` is set.
    """
    scenario = validate_scenario(scenario)
    if scenario.is_split:
        raise ScenarioError("split-diffusivity scenario: use solve_ftcs_piecewise")
    _check_grid(scenario, grid)
    c = ftcs_coefficients(scenario.D, scenario.u, grid.dx, grid.dt)
    return _march(scenario, grid, c, stencil, unsafe)


def node_diffusivity(scenario: ScenarioSpec, grid: UniformGrid) -> np.ndarray:
    """D1 left of L/2, D2 right of it, their mean on the interface node."""
    if grid.M % 2:
        raise InterfaceOffGrid(f"interface x = L/2 needs an even M, got M={grid.M}")
    if scenario.is_split:
        d1, d2 = scenario.D1, scenario.D2
    else:
        d1 = d2 = scenario.D
    m = np.arange(grid.M + 1)
    half = grid.M // 2
    return np.where(m < half, d1, np.where(m > half, d2, (d1 + d2) / 2))


def solve_ftcs_piecewise(scenario: ScenarioSpec, grid: UniformGrid,
                         stencil: Stencil = Stencil.FORWARD,
                         unsafe: bool = False) -> SolutionSurface:
    """Same march as solve_ftcs with a per-node alpha from node_diffusivity."""
    scenario = validate_scenario(scenario)
    _check_grid(scenario, grid)
    c = ftcs_coefficients(node_diffusivity(scenario, grid), scenario.u, grid.dx, grid.dt)
    return _march(scenario, grid, c, stencil, unsafe)


def steps_for_alpha(D: float, dx: float, T: float, alpha: float) -> int:
    """Smallest step count N with D (T/N) / dx^2 <= alpha."""
    if T == 0:
        return 0
    n = int(np.ceil(T * D / (alpha * dx * dx) - 1e-9))
    return max(n, 1)
