"""1-D advection-diffusion with zero Dirichlet boundaries: sine-series and FTCS solvers."""

from .analysis import (
    ErrorReport,
    PollutantSpec,
    argmax_location,
    compare_scenario,
    convergence_study,
    pointwise_error,
    pollutant_table,
)
from .analytic import (
    DecayRate,
    SeriesSolution,
    closed_form_reference,
    fourier_coefficients,
    mode_decay_rate,
    series_evaluate,
    series_solution,
    transform_factor,
)
from .errors import AdvDiffError
from .fdm import (
    FtcsCoefficients,
    StabilityReport,
    Stencil,
    check_stability,
    ftcs_coefficients,
    ftcs_step,
    solve_ftcs,
    solve_ftcs_piecewise,
)
from .model import (
    Samples,
    ScenarioSpec,
    SineMode,
    SolutionSurface,
    UniformGrid,
    ValidatedScenario,
    build_grid,
    load_scenario,
    scenario_from_dict,
    validate_scenario,
    worked_example,
)

__version__ = "0.1.0"
