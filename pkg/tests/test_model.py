import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from advdiff import Samples, ScenarioSpec, SineMode, build_grid, scenario_from_dict, validate_scenario
from advdiff.errors import (
    ConfigError,
    DegenerateGrid,
    ExponentOverflow,
    IncompatibleIC,
    InvalidInitialCondition,
    NonPositiveDiffusivity,
    ScenarioError,
)
from advdiff.model import ValidatedScenario, load_scenario, scenario_to_dict


def test_worked_example_is_valid():
    spec = validate_scenario(ScenarioSpec(u=3.6e-4, L=1.0, T=1.0, ic=SineMode(1), D=3.6e-3))
    assert isinstance(spec, ValidatedScenario)
    assert spec.D == 3.6e-3 and spec.u == 3.6e-4


def test_zero_diffusivity_rejected():
    with pytest.raises(NonPositiveDiffusivity):
        validate_scenario(ScenarioSpec(u=0.0, L=1.0, T=1.0, D=0.0))


@pytest.mark.parametrize("d1,d2", [(0.0, 1.0), (1.0, -2.0)])
def test_split_diffusivities_must_be_positive(d1, d2):
    with pytest.raises(NonPositiveDiffusivity):
        validate_scenario(ScenarioSpec(u=0.0, L=1.0, T=1.0, D1=d1, D2=d2))


def test_nonzero_boundary_sample_rejected():
    ic = Samples((0.0, 0.5, 1.0), (0.0, 1.0, 0.3))
    with pytest.raises(IncompatibleIC):
        validate_scenario(ScenarioSpec(u=0.0, L=1.0, T=1.0, ic=ic, D=1.0))


def test_exponent_guard():
    with pytest.raises(ExponentOverflow):
        validate_scenario(ScenarioSpec(u=1401.0, L=1.0, T=1.0, D=1.0))
    validate_scenario(ScenarioSpec(u=1400.0, L=1.0, T=1.0, D=1.0))


def test_other_invariants():
    with pytest.raises(ScenarioError):
        validate_scenario(ScenarioSpec(u=0.0, L=0.0, T=1.0, D=1.0))
    with pytest.raises(ScenarioError):
        validate_scenario(ScenarioSpec(u=0.0, L=1.0, T=-1.0, D=1.0))
    with pytest.raises(ScenarioError):
        validate_scenario(ScenarioSpec(u=0.0, L=1.0, T=1.0, D=1.0, bc_left=0.5))
    with pytest.raises(ScenarioError):
        validate_scenario(ScenarioSpec(u=0.0, L=1.0, T=1.0, D=1.0, D1=1.0, D2=1.0))
    with pytest.raises(InvalidInitialCondition):
        validate_scenario(ScenarioSpec(u=0.0, L=1.0, T=1.0, D=1.0, ic=SineMode(0)))
    with pytest.raises(InvalidInitialCondition):
        validate_scenario(ScenarioSpec(u=0.0, L=1.0, T=1.0, D=1.0,
                                       ic=Samples((0.0, 0.5), (0.0, 0.0))))


def test_samples_are_sorted_and_deduplicated():
    ic = Samples((1.0, 0.0, 0.5, 0.5), (0.0, 0.0, 2.0, 2.0))
    spec = validate_scenario(ScenarioSpec(u=0.0, L=1.0, T=1.0, ic=ic, D=1.0))
    assert spec.ic == Samples((0.0, 0.5, 1.0), (0.0, 2.0, 0.0))
    with pytest.raises(InvalidInitialCondition):
        validate_scenario(ScenarioSpec(u=0.0, L=1.0, T=1.0, D=1.0,
                                       ic=Samples((0.0, 0.5, 0.5, 1.0), (0.0, 1.0, 2.0, 0.0))))


def test_build_grid_examples():
    g = build_grid(1, 1, 5, 5)
    assert g.dx == pytest.approx(0.2, abs=1e-15) and g.dt == pytest.approx(0.2, abs=1e-15)
    g = build_grid(2, 1, 4, 2)
    assert (g.dx, g.dt) == (0.5, 0.5)
    with pytest.raises(DegenerateGrid):
        build_grid(1, 1, 1, 5)
    with pytest.raises(DegenerateGrid):
        build_grid(1, 1, 5, 0)


def test_zero_horizon_grid():
    g = build_grid(1, 0, 4, 0)
    assert g.N == 0 and g.t.tolist() == [0.0]


@settings(max_examples=200)
@given(L=st.floats(1e-3, 1e3), T=st.floats(0.0, 1e3, exclude_min=True),
       M=st.integers(2, 2000), N=st.integers(1, 5000))
def test_grid_node_reconstruction(L, T, M, N):
    g = build_grid(L, T, M, N)
    assert abs(g.x[-1] - L) <= 1e-12 * max(1.0, L)
    assert abs(g.t[-1] - T) <= 1e-12 * max(1.0, T)


ic_strategy = st.one_of(
    st.builds(SineMode, st.integers(1, 12)),
    st.lists(st.tuples(st.floats(0.01, 0.99), st.floats(-5, 5)), min_size=1, max_size=8,
             unique_by=lambda p: p[0]).map(
        lambda pts: Samples((0.0, *[p[0] for p in pts], 1.0), (0.0, *[p[1] for p in pts], 0.0))),
)


@given(ic=ic_strategy, u=st.floats(-1, 1), D=st.floats(1e-2, 10))
def test_validation_idempotent_and_boundary_zero(ic, u, D):
    spec = validate_scenario(ScenarioSpec(u=u, L=1.0, T=1.0, ic=ic, D=D))
    assert validate_scenario(spec) == spec
    grid = build_grid(spec.L, spec.T, 16, 4)
    f = spec.initial_values(grid.x)
    assert abs(f[0]) <= 1e-12 and abs(f[-1]) <= 1e-12


def test_config_round_trip(tmp_path):
    data = {"D": 3.6e-3, "u": 3.6e-4, "L": 1, "T": 1, "ic": {"sine_mode": 1}}
    path = tmp_path / "ex.json"
    path.write_text(json.dumps(data))
    spec = load_scenario(path)
    assert spec == scenario_from_dict(scenario_to_dict(spec))

    split = scenario_from_dict({"D1": 0.0792, "D2": 0.0468, "u": 0, "L": 1, "T": 2,
                                "ic": {"samples": [[0, 0], [0.5, 1], [1, 0]]}})
    assert split.is_split and split.diffusivities == (0.0792, 0.0468)


@pytest.mark.parametrize("data", [
    {"D": 1, "u": 0, "L": 1, "T": 1, "ic": {"sine_mode": 1}, "extra": 1},
    {"D": 1, "D1": 1, "D2": 1, "u": 0, "L": 1, "T": 1, "ic": {"sine_mode": 1}},
    {"u": 0, "L": 1, "T": 1, "ic": {"sine_mode": 1}},
    {"D": 1, "u": 0, "L": 1, "T": 1, "ic": {"cosine": 1}},
    {"D": 1, "u": 0, "L": 1, "ic": {"sine_mode": 1}},
])
def test_config_rejections(data):
    with pytest.raises(ConfigError):
        scenario_from_dict(data)


def test_sine_mode_boundaries_exact():
    g = build_grid(1.0, 1.0, 7, 1)
    f = SineMode(3).values(g.x, 1.0)
    assert f[0] == 0.0 and f[-1] == 0.0
    assert np.allclose(f[1:-1], np.sin(3 * np.pi * g.x[1:-1]))
