import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from advdiff import (
    FtcsCoefficients,
    Samples,
    ScenarioSpec,
    Stencil,
    build_grid,
    check_stability,
    ftcs_coefficients,
    ftcs_step,
    series_solution,
    solve_ftcs,
    solve_ftcs_piecewise,
    validate_scenario,
    worked_example,
)
from advdiff.errors import InterfaceOffGrid, LengthMismatch, UnstableParameters
from advdiff.fdm import node_diffusivity, steps_for_alpha, update_weights

from conftest import ftcs_reference

IC_ROW = np.array([0.0, 0.5878, 0.9511, 0.9511, 0.5878, 0.0])


@pytest.mark.parametrize("D,alpha", [(3.6e-3, 0.018), (7.92e-2, 0.396)])
def test_coefficients_match_printed(D, alpha):
    c = ftcs_coefficients(D, 3.6e-4, 0.2, 0.2)
    assert round(c.alpha, 3) == alpha
    assert round(c.beta, 5) == 0.00036


def test_coefficients_use_dt_over_dx_squared():
    c = ftcs_coefficients(2.0, 3.0, 0.1, 0.01)
    assert c.alpha == pytest.approx(2.0)
    assert c.beta == pytest.approx(0.3)
    assert ftcs_coefficients(1.0, 0.0, 0.1, 0.01).beta == 0.0


def test_stability_examples():
    assert check_stability(FtcsCoefficients(0.018, 0.00036)).stable
    assert not check_stability(FtcsCoefficients(0.6, 0.0)).stable
    rep = check_stability(FtcsCoefficients(0.396, 0.00036), Stencil.FORWARD)
    assert rep.stable
    _, centre, _ = update_weights(0.396, 0.00036, Stencil.FORWARD)
    assert centre == pytest.approx(0.20836, abs=1e-12)


def test_stability_rules_per_stencil():
    # beta > alpha makes the forward right weight negative, not the upwind one
    c = FtcsCoefficients(0.1, 0.3)
    assert not check_stability(c, Stencil.FORWARD).rules["right weight >= 0"]
    assert check_stability(c, Stencil.UPWIND).stable
    assert not check_stability(c, Stencil.CENTRAL).stable
    assert check_stability(c, Stencil.FORWARD).peclet == pytest.approx(3.0)


@pytest.mark.parametrize("stencil", list(Stencil))
@pytest.mark.parametrize("beta", [0.07, -0.07])
def test_weights_sum_to_one_and_match_step(stencil, beta):
    alpha = 0.31
    rng = np.random.default_rng(3)
    v = rng.normal(size=9)
    v[0] = v[-1] = 0
    left, centre, right = update_weights(alpha, beta, stencil)
    assert left + centre + right == pytest.approx(1.0)
    expected = left * v[:-2] + centre * v[1:-1] + right * v[2:]
    assert np.allclose(ftcs_step(v, FtcsCoefficients(alpha, beta), stencil)[1:-1], expected, atol=1e-15)


def test_step_hand_value():
    row = ftcs_step(IC_ROW, FtcsCoefficients(0.018, 0.00036))
    hand = 0.5878 + 0.018 * (0.9511 - 2 * 0.5878 + 0) - 0.00036 * (0.9511 - 0.5878)
    assert row[1] == pytest.approx(hand, abs=1e-15)
    assert row[1] == pytest.approx(0.58363, abs=5e-5)
    assert row[1] == pytest.approx(0.58361, abs=5e-5)


def test_step_zero_and_symmetry():
    c = FtcsCoefficients(0.3, 0.0)
    assert np.array_equal(ftcs_step(np.zeros(7), c), np.zeros(7))
    v = np.array([0, 0.2, 0.7, 1.0, 0.7, 0.2, 0])
    out = ftcs_step(v, c)
    assert np.array_equal(out, out[::-1])


def test_step_length_checks():
    with pytest.raises(LengthMismatch):
        ftcs_step(np.zeros(2), FtcsCoefficients(0.1, 0.0))
    with pytest.raises(LengthMismatch):
        ftcs_step(np.zeros(6), FtcsCoefficients(np.full(5, 0.1), 0.0))


def test_solve_matches_loop_reference(scenario, coarse_grid):
    surface = solve_ftcs(scenario, coarse_grid)
    x = coarse_grid.x
    f0 = np.sin(np.pi * x)
    f0[[0, -1]] = 0
    ref = ftcs_reference(f0, 3.6e-3 * 0.2 / 0.04, 3.6e-4, 5)
    assert np.allclose(surface.values, ref, atol=1e-15, rtol=0)
    assert surface.values[5, 2] == pytest.approx(0.9185, abs=5e-4)


def test_zero_step_surface(scenario):
    grid = build_grid(1.0, 0.0, 5, 0)
    surface = solve_ftcs(worked_example(T=0.0), grid)
    assert surface.values.shape == (1, 6)
    assert np.array_equal(surface.values[0], scenario.initial_values(grid.x))


def test_unstable_run_refused(scenario):
    grid = build_grid(1.0, 1.0, 40, 1)
    with pytest.raises(UnstableParameters, match=r"alpha <= 1/2"):
        solve_ftcs(scenario, grid)
    surface = solve_ftcs(scenario, grid, unsafe=True)
    assert surface.values.shape == (2, 41)


def test_pure_diffusion_fine_grid_vs_series():
    spec = worked_example(u=0.0)
    dx = 0.02
    grid = build_grid(1.0, 1.0, 50, steps_for_alpha(spec.D, dx, 1.0, 0.25))
    surface = solve_ftcs(spec, grid)
    exact = series_solution(spec)(grid.x, np.ones(51))
    assert np.max(np.abs(surface.values[-1] - exact)) <= 1e-3


def test_second_order_in_space():
    spec = worked_example(u=0.0)
    errors = []
    for k, M in enumerate((10, 20)):
        N = steps_for_alpha(spec.D, 0.1, 1.0, 0.25) * 4 ** k
        grid = build_grid(1.0, 1.0, M, N)
        exact = np.exp(-np.pi ** 2 * spec.D) * np.sin(np.pi * grid.x)
        errors.append(np.max(np.abs(solve_ftcs(spec, grid).values[-1] - exact)))
    assert 3.5 <= errors[0] / errors[1] <= 4.5


def test_stencils_track_central(scenario, coarse_grid):
    central = solve_ftcs(scenario, coarse_grid, Stencil.CENTRAL).values
    for stencil in (Stencil.FORWARD, Stencil.UPWIND):
        assert np.max(np.abs(solve_ftcs(scenario, coarse_grid, stencil).values - central)) <= 5e-4


@pytest.mark.xfail(strict=True, reason="forward and upwind differ by beta * second difference "
                   "per step, about 6.4e-4 after five steps")
def test_stencils_pairwise_within_5e4(scenario, coarse_grid):
    runs = [solve_ftcs(scenario, coarse_grid, s).values for s in Stencil]
    gaps = [np.max(np.abs(a - b)) for i, a in enumerate(runs) for b in runs[i + 1:]]
    assert max(gaps) <= 5e-4


# -- invariants -----------------------------------------------------------------

@st.composite
def stable_runs(draw):
    M = draw(st.integers(2, 24))
    stencil = draw(st.sampled_from(list(Stencil)))
    alpha = draw(st.floats(1e-4, 0.5))
    beta = draw(st.floats(-alpha, alpha))
    interior = draw(st.lists(st.floats(-10, 10), min_size=M - 1, max_size=M - 1))
    steps = draw(st.integers(1, 15))
    return M, stencil, alpha, beta, interior, steps


def _scenario_for(M, alpha, beta, interior, steps):
    L, T = 1.0, 1.0
    dx, dt = L / M, T / steps
    D = alpha * dx * dx / dt
    u = beta * dx / dt
    xs = np.linspace(0, L, M + 1)
    ic = Samples(tuple(xs), (0.0, *interior, 0.0))
    return validate_scenario(ScenarioSpec(u=u, L=L, T=T, ic=ic, D=D)), build_grid(L, T, M, steps)


@settings(max_examples=1000, deadline=None)
@given(stable_runs())
def test_discrete_maximum_principle(run):
    M, stencil, alpha, beta, interior, steps = run
    spec, grid = _scenario_for(M, alpha, beta, interior, steps)
    c = ftcs_coefficients(spec.D, spec.u, grid.dx, grid.dt)
    assume(check_stability(c, stencil).stable)
    values = solve_ftcs(spec, grid, stencil).values
    peaks = np.max(np.abs(values), axis=1)
    assert np.all(peaks[1:] <= peaks[:-1] * (1 + 1e-12) + 1e-300)
    assert np.all(values[:, 0] == 0.0) and np.all(values[:, -1] == 0.0)


@settings(max_examples=200, deadline=None)
@given(stable_runs(), st.floats(-1e3, 1e3))
def test_linearity(run, scale):
    M, stencil, alpha, beta, interior, steps = run
    spec, grid = _scenario_for(M, alpha, beta, interior, steps)
    scaled, _ = _scenario_for(M, alpha, beta, [scale * v for v in interior], steps)
    base = solve_ftcs(spec, grid, stencil, unsafe=True).values
    out = solve_ftcs(scaled, grid, stencil, unsafe=True).values
    tol = 1e-13 * max(1.0, np.max(np.abs(scale * base)))
    assert np.max(np.abs(out - scale * base)) <= tol


# -- piecewise ----------------------------------------------------------------

def test_piecewise_degenerate_split_is_bit_identical(scenario):
    grid = build_grid(1.0, 1.0, 20, 40)
    split = validate_scenario(ScenarioSpec(u=scenario.u, L=1.0, T=1.0, D1=scenario.D, D2=scenario.D))
    for stencil in Stencil:
        a = solve_ftcs(scenario, grid, stencil).values
        assert np.array_equal(a, solve_ftcs_piecewise(split, grid, stencil).values)
        assert np.array_equal(a, solve_ftcs_piecewise(scenario, grid, stencil).values)


def test_node_diffusivity_layout():
    spec = validate_scenario(ScenarioSpec(u=0.0, L=1.0, T=1.0, D1=2.0, D2=4.0))
    d = node_diffusivity(spec, build_grid(1.0, 1.0, 4, 1))
    assert d.tolist() == [2.0, 2.0, 3.0, 4.0, 4.0]
    with pytest.raises(InterfaceOffGrid):
        node_diffusivity(spec, build_grid(1.0, 1.0, 5, 1))


def test_piecewise_stability_uses_larger_diffusivity():
    spec = validate_scenario(ScenarioSpec(u=0.0, L=1.0, T=1.0, D1=0.01, D2=0.5))
    grid = build_grid(1.0, 1.0, 10, 50)  # alpha = 0.02 left, 1.0 right
    with pytest.raises(UnstableParameters):
        solve_ftcs_piecewise(spec, grid)


def test_piecewise_mirror_symmetry_without_advection():
    grid = build_grid(1.0, 0.5, 20, 64)
    a = solve_ftcs_piecewise(ScenarioSpec(u=0.0, L=1.0, T=0.5, D1=7.92e-2, D2=4.68e-2), grid)
    b = solve_ftcs_piecewise(ScenarioSpec(u=0.0, L=1.0, T=0.5, D1=4.68e-2, D2=7.92e-2), grid)
    assert np.allclose(a.values, b.values[:, ::-1], atol=1e-14)


def test_piecewise_peak_moves_toward_slower_side():
    grid = build_grid(1.0, 0.5, 20, 64)
    fast_left = solve_ftcs_piecewise(ScenarioSpec(u=3.6e-4, L=1.0, T=0.5, D1=7.92e-2, D2=4.68e-2), grid)
    fast_right = solve_ftcs_piecewise(ScenarioSpec(u=3.6e-4, L=1.0, T=0.5, D1=4.68e-2, D2=7.92e-2), grid)
    assert grid.x[np.argmax(fast_left.values[-1])] > 0.5
    assert grid.x[np.argmax(fast_right.values[-1])] < 0.5
