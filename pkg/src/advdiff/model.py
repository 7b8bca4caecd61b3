"""Problem definition: scenarios, initial conditions, grids and surfaces.

Units are hours and metres throughout: D in m^2/hr, u in m/hr, L in m,
T in hr.  Boundaries are homogeneous Dirichlet (C = 0 at both ends).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, fields, replace
from os import PathLike
from typing import Any, Union

import numpy as np

from .errors import (
    ConfigError,
    DegenerateGrid,
    ExponentOverflow,
    IncompatibleIC,
    InvalidInitialCondition,
    NonPositiveDiffusivity,
    ScenarioError,
)

EXPONENT_LIMIT = 700.0
BOUNDARY_TOL = 1e-12


def _on_boundary(x: np.ndarray, L: float) -> np.ndarray:
    return (x == 0.0) | (np.abs(x - L) <= BOUNDARY_TOL * max(L, 1.0))


def sine_mode(n: int, x, L: float) -> np.ndarray:
    """sin(n pi x / L), forced to exactly zero at x = 0 and x = L."""
    x = np.asarray(x, dtype=float)
    s = np.sin(n * np.pi * (x / L))
    return np.where(_on_boundary(x, L), 0.0, s)


@dataclass(frozen=True)
class SineMode:
    """Initial profile f(x) = sin(n pi x / L)."""

    n: int = 1

    def values(self, x, L: float) -> np.ndarray:
        return sine_mode(self.n, x, L)


@dataclass(frozen=True)
class Samples:
    """Tabulated initial profile, linearly interpolated between samples."""

    xs: tuple[float, ...]
    fs: tuple[float, ...]

    def values(self, x, L: float) -> np.ndarray:
        return np.interp(np.asarray(x, dtype=float), self.xs, self.fs)


InitialCondition = Union[SineMode, Samples]


@dataclass(frozen=True)
class ScenarioSpec:
    """One advection-diffusion problem on [0, L] x [0, T].

    Either ``D`` (uniform diffusivity) or the pair ``D1``/``D2`` (left and
    right halves of the domain) is given, never both.
    """

    u: float
    L: float
    T: float
    ic: InitialCondition = field(default_factory=SineMode)
    D: float | None = None
    D1: float | None = None
    D2: float | None = None
    bc_left: float = 0.0
    bc_right: float = 0.0

    @property
    def is_split(self) -> bool:
        return self.D is None

    @property
    def diffusivities(self) -> tuple[float, ...]:
        if self.is_split:
            return (self.D1, self.D2)
        return (self.D,)

    @property
    def max_diffusivity(self) -> float:
        return max(self.diffusivities)

    def initial_values(self, x) -> np.ndarray:
        return self.ic.values(x, self.L)


class ValidatedScenario(ScenarioSpec):
    """A ScenarioSpec whose invariants have been checked."""


def _check_finite(name: str, value: Any) -> float:
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise ScenarioError(f"{name} must be a number, got {value!r}") from None
    if not math.isfinite(value):
        raise ScenarioError(f"{name} must be finite, got {value}")
    return value


def _normalize_ic(ic: InitialCondition, L: float) -> InitialCondition:
    if isinstance(ic, SineMode):
        if isinstance(ic.n, bool) or int(ic.n) != ic.n or ic.n < 1:
            raise InvalidInitialCondition(f"sine mode requires integer n >= 1, got {ic.n!r}")
        return SineMode(int(ic.n))
    if not isinstance(ic, Samples):
        raise InvalidInitialCondition(f"unsupported initial condition {ic!r}")

    xs = np.asarray(ic.xs, dtype=float)
    fs = np.asarray(ic.fs, dtype=float)
    if xs.ndim != 1 or xs.shape != fs.shape or xs.size < 2:
        raise InvalidInitialCondition("samples need matching xs/fs with at least two points")
    if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(fs))):
        raise InvalidInitialCondition("samples must be finite")

    order = np.argsort(xs, kind="stable")
    xs, fs = xs[order], fs[order]
    ux, first = np.unique(xs, return_index=True)
    for x0, i0 in zip(ux, first):
        if np.any(fs[xs == x0] != fs[i0]):
            raise InvalidInitialCondition(f"conflicting sample values at x={x0:g}")
    xs, fs = ux, fs[first]
    if xs.size < 2:
        raise InvalidInitialCondition("samples need at least two distinct abscissae")

    tol = BOUNDARY_TOL * max(L, 1.0)
    if abs(xs[0]) > tol or abs(xs[-1] - L) > tol:
        raise InvalidInitialCondition(
            f"samples must span [0, L] = [0, {L:g}], got [{xs[0]:g}, {xs[-1]:g}]"
        )
    xs[0], xs[-1] = 0.0, L
    if abs(fs[0]) > BOUNDARY_TOL or abs(fs[-1]) > BOUNDARY_TOL:
        raise IncompatibleIC(
            f"f(0)={fs[0]:g}, f(L)={fs[-1]:g}: initial profile must vanish at both "
            "Dirichlet boundaries (|f| <= 1e-12)"
        )
    return Samples(tuple(xs.tolist()), tuple(fs.tolist()))


def validate_scenario(raw: ScenarioSpec) -> ValidatedScenario:
    """Check every scenario invariant and return a ValidatedScenario.

    Tabulated initial conditions are sorted and deduplicated.  Validating an
    already validated scenario returns an equal object.
    """
    u = _check_finite("u", raw.u)
    L = _check_finite("L", raw.L)
    T = _check_finite("T", raw.T)
    if L <= 0:
        raise ScenarioError(f"L must be positive, got {L}")
    if T < 0:
        raise ScenarioError(f"T must be >= 0, got {T}")
    if raw.bc_left != 0 or raw.bc_right != 0:
        raise ScenarioError("only homogeneous Dirichlet boundaries (bc_left = bc_right = 0) are supported")

    if raw.D is not None and (raw.D1 is not None or raw.D2 is not None):
        raise ScenarioError("give either D or D1+D2, not both")
    if raw.D is None and (raw.D1 is None or raw.D2 is None):
        raise ScenarioError("a split scenario needs both D1 and D2")

    names = ("D",) if raw.D is not None else ("D1", "D2")
    ds = {}
    for name in names:
        value = _check_finite(name, getattr(raw, name))
        if value <= 0:
            raise NonPositiveDiffusivity(f"{name} must be > 0, got {value}")
        ds[name] = value

    peclet_half = abs(u) * L / (2.0 * min(ds.values()))
    if peclet_half > EXPONENT_LIMIT:
        raise ExponentOverflow(
            f"|u| L / (2 D) = {peclet_half:g} exceeds {EXPONENT_LIMIT:g}; "
            "the transformation factor is not representable"
        )

    ic = _normalize_ic(raw.ic, L)
    values = {f.name: getattr(raw, f.name) for f in fields(ScenarioSpec)}
    values.update(u=u, L=L, T=T, ic=ic, bc_left=0.0, bc_right=0.0, **ds)
    return ValidatedScenario(**values)


@dataclass(frozen=True)
class UniformGrid:
    """Space-time grid: x_m = m dx (m = 0..M), t_n = n dt (n = 0..N)."""

    dx: float
    dt: float
    M: int
    N: int

    @property
    def L(self) -> float:
        return self.M * self.dx

    @property
    def T(self) -> float:
        return self.N * self.dt

    @property
    def x(self) -> np.ndarray:
        return np.arange(self.M + 1) * self.dx

    @property
    def t(self) -> np.ndarray:
        return np.arange(self.N + 1) * self.dt

    def time_index(self, t: float) -> int:
        """Index of the time level equal to ``t`` (within 1e-9 relative)."""
        if self.N == 0:
            if abs(t) <= 1e-12:
                return 0
            raise ValueError(f"t={t:g} is not a time level of a zero-step grid")
        n = int(round(t / self.dt))
        if n < 0 or n > self.N or abs(n * self.dt - t) > 1e-9 * max(1.0, abs(t)):
            raise ValueError(f"t={t:g} is not a time level of this grid (dt={self.dt:g})")
        return n


def build_grid(L: float, T: float, M: int, N: int) -> UniformGrid:
    """Uniform grid with dx = L/M and dt = T/N.

    ``N = 0`` is accepted only for a zero horizon (T = 0), where the grid
    holds the initial time level alone.
    """
    if M < 2:
        raise DegenerateGrid(f"need M >= 2 spatial intervals, got M={M}")
    if N < 1 and not (N == 0 and T == 0):
        raise DegenerateGrid(f"need N >= 1 time steps, got N={N}")
    if L <= 0 or T < 0:
        raise DegenerateGrid(f"need L > 0 and T >= 0, got L={L}, T={T}")
    return UniformGrid(dx=L / M, dt=(T / N) if N else 0.0, M=int(M), N=int(N))


@dataclass(frozen=True, eq=False)
class SolutionSurface:
    """Concentration values on a grid; ``values[n, m]`` is C(x_m, t_n)."""

    grid: UniformGrid
    values: np.ndarray

    def __post_init__(self):
        shape = (self.grid.N + 1, self.grid.M + 1)
        if self.values.shape != shape:
            raise ValueError(f"values shape {self.values.shape} does not match grid {shape}")

    @property
    def x(self) -> np.ndarray:
        return self.grid.x

    @property
    def t(self) -> np.ndarray:
        return self.grid.t

    def at_time(self, t: float) -> np.ndarray:
        return self.values[self.grid.time_index(t)]


# ---------------------------------------------------------------------------
# scenario files

_CONFIG_KEYS = {"D", "D1", "D2", "u", "L", "T", "ic"}


def _ic_from_dict(raw: Any) -> InitialCondition:
    if not isinstance(raw, dict) or len(raw) != 1:
        raise ConfigError('"ic" must be {"sine_mode": n} or {"samples": [[x, f], ...]}')
    (key, value), = raw.items()
    if key == "sine_mode":
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f'"sine_mode" must be an integer, got {value!r}')
        return SineMode(value)
    if key == "samples":
        try:
            pts = np.asarray(value, dtype=float)
        except (TypeError, ValueError):
            raise ConfigError('"samples" must be a list of [x, f] pairs') from None
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise ConfigError('"samples" must be a list of [x, f] pairs')
        return Samples(tuple(pts[:, 0].tolist()), tuple(pts[:, 1].tolist()))
    raise ConfigError(f'unknown initial-condition kind "{key}"')


def scenario_from_dict(data: dict) -> ValidatedScenario:
    """Build and validate a scenario from its JSON object form."""
    if not isinstance(data, dict):
        raise ConfigError("scenario config must be a JSON object")
    unknown = set(data) - _CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    missing = {"u", "L", "T", "ic"} - set(data)
    if missing:
        raise ConfigError(f"missing config keys: {', '.join(sorted(missing))}")
    split = "D1" in data or "D2" in data
    if split == ("D" in data):
        raise ConfigError('config needs exactly one of "D" or "D1"+"D2"')
    spec = ScenarioSpec(
        u=data["u"], L=data["L"], T=data["T"], ic=_ic_from_dict(data["ic"]),
        D=data.get("D"), D1=data.get("D1"), D2=data.get("D2"),
    )
    return validate_scenario(spec)


def scenario_to_dict(spec: ScenarioSpec) -> dict:
    out: dict[str, Any] = {}
    if spec.is_split:
        out.update(D1=spec.D1, D2=spec.D2)
    else:
        out["D"] = spec.D
    out.update(u=spec.u, L=spec.L, T=spec.T)
    if isinstance(spec.ic, SineMode):
        out["ic"] = {"sine_mode": spec.ic.n}
    else:
        out["ic"] = {"samples": [[x, f] for x, f in zip(spec.ic.xs, spec.ic.fs)]}
    return out


def load_scenario(path: Union[str, PathLike]) -> ValidatedScenario:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON ({exc})") from None
    return scenario_from_dict(data)


def worked_example(**overrides) -> ValidatedScenario:
    """The worked example: D = 3.6e-3, u = 3.6e-4, L = T = 1, f = sin(pi x)."""
    base = ScenarioSpec(u=3.6e-4, L=1.0, T=1.0, ic=SineMode(1), D=3.6e-3)
    return validate_scenario(replace(base, **overrides))
