"""Command-line front end.

    advdiff solve-analytic | solve-fdm | compare | pollutants | split-domain | converge

Bare runs use the worked example (D = 3.6e-3, u = 3.6e-4, L = T = 1,
f = sin(pi x), M = N = 5, forward stencil, 64 series terms).
Exit status: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace

import numpy as np

from . import analysis, analytic, fdm, report
from .errors import AdvDiffError
from .model import ScenarioSpec, SineMode, SolutionSurface, build_grid, load_scenario, validate_scenario, worked_example

SPLIT_DEFAULT = ScenarioSpec(u=3.6e-4, L=1.0, T=2.0, ic=SineMode(1), D1=7.92e-2, D2=4.68e-2)


class UsageError(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--config", metavar="PATH", help="scenario JSON file")
    p.add_argument("-M", type=int, help="spatial intervals")
    p.add_argument("-N", type=int, help="time steps")
    p.add_argument("--stencil", choices=[s.value for s in fdm.Stencil], default="forward")
    p.add_argument("--terms", type=int, default=analytic.DEFAULT_TERMS, metavar="K",
                   help="series truncation order")
    p.add_argument("--paper-pi", action="store_true",
                   help="also report decay rates computed with pi = 3.14")
    p.add_argument("--unsafe-override", action="store_true",
                   help="run even when the explicit scheme is unstable")
    p.add_argument("--out", default=".", metavar="DIR", help="output directory")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="advdiff", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common()
    sub.add_parser("solve-analytic", parents=[common], help="series and closed-form surfaces")
    sub.add_parser("solve-fdm", parents=[common], help="FTCS surface")
    p = sub.add_parser("compare", parents=[common], help="FTCS vs reference error report")
    p.add_argument("--reference", choices=["auto", "closed-form", "series"], default="auto")
    p = sub.add_parser("pollutants", parents=[common], help="pollutant decay-rate table")
    p.add_argument("--registry", metavar="PATH", help="JSON pollutant registry")
    p = sub.add_parser("split-domain", parents=[common], help="two-diffusivity FTCS run")
    p.add_argument("--times", type=float, nargs="+", default=[0.5, 1.0, 1.5, 2.0],
                   help="profile time levels")
    p = sub.add_parser("converge", parents=[common], help="grid-refinement order study")
    p.add_argument("--levels", type=int, nargs="+", default=[10, 20, 40], metavar="M")
    p.add_argument("--alpha", type=float, default=0.25, help="target D dt/dx^2")
    return parser


def _scenario(args, default=None):
    if args.config:
        try:
            return load_scenario(args.config)
        except OSError as exc:
            raise UsageError(f"cannot read config: {exc}") from None
    return validate_scenario(default) if default is not None else worked_example()


def _grid(args, scenario, M=5, N=5):
    return build_grid(scenario.L, scenario.T, args.M if args.M is not None else M,
                      args.N if args.N is not None else N)


def _out(args, name):
    os.makedirs(args.out, exist_ok=True)
    return os.path.join(args.out, name)


def _print_rate(scenario, paper_pi):
    if scenario.is_split or not isinstance(scenario.ic, SineMode):
        return
    n = scenario.ic.n
    r = analytic.mode_decay_rate(n, scenario.D, scenario.u, scenario.L)
    line = f"mode {n} decay rate: {r.rate:.6f} /hr (advective {r.advective:.3e}, diffusive {r.diffusive:.6f})"
    if paper_pi:
        r314 = analytic.mode_decay_rate(n, scenario.D, scenario.u, scenario.L, pi=analytic.TRUNCATED_PI)
        line += f"; with pi=3.14: {r314.rate:.5f}"
    print(line)


def cmd_solve_analytic(args):
    scenario = _scenario(args)
    grid = _grid(args, scenario)
    sol = analytic.series_solution(scenario, args.terms)
    series = SolutionSurface(grid, sol.on_grid(grid.x, grid.t))
    report.write_surface_csv(series, _out(args, "analytic_series.csv"))
    written = ["analytic_series.csv"]
    if isinstance(scenario.ic, SineMode):
        tt, xx = np.meshgrid(grid.t, grid.x, indexing="ij")
        closed = SolutionSurface(grid, analytic.closed_form_reference(xx, tt, scenario))
        report.write_surface_csv(closed, _out(args, "analytic_closed_form.csv"))
        written.append("analytic_closed_form.csv")
        gap = np.max(np.abs(series.values - closed.values))
        print(f"series vs closed-form sup gap: {gap:.3e}")
    _print_rate(scenario, args.paper_pi)
    print("wrote " + ", ".join(written))


def cmd_solve_fdm(args):
    scenario = _scenario(args)
    grid = _grid(args, scenario)
    stencil = fdm.Stencil(args.stencil)
    if scenario.is_split:
        surface = fdm.solve_ftcs_piecewise(scenario, grid, stencil, unsafe=args.unsafe_override)
        c = fdm.ftcs_coefficients(fdm.node_diffusivity(scenario, grid), scenario.u, grid.dx, grid.dt)
    else:
        surface = fdm.solve_ftcs(scenario, grid, stencil, unsafe=args.unsafe_override)
        c = fdm.ftcs_coefficients(scenario.D, scenario.u, grid.dx, grid.dt)
    print(fdm.check_stability(c, stencil).describe())
    report.write_surface_csv(surface, _out(args, "fdm_surface.csv"))
    print("wrote fdm_surface.csv")


def _pct(v):
    return "" if np.isnan(v) else report.fmt(v)


def cmd_compare(args):
    scenario = _scenario(args)
    grid = _grid(args, scenario)
    rep = analysis.compare_scenario(scenario, grid, fdm.Stencil(args.stencil), args.reference,
                                    args.terms, unsafe=args.unsafe_override)
    lines = ["x,t,exact,approx,abs_error,percent_error"]
    for r in rep.rows():
        lines.append(",".join([report.fmt(r.x), report.fmt(r.t), report.fmt(r.exact),
                               report.fmt(r.approx), report.fmt(r.abs_error), _pct(r.percent_error)]))
    report.write_text("\n".join(lines) + "\n", _out(args, "error_report.csv"))

    print(f"{'x':>6} {'t':>6} {'exact':>10} {'approx':>10} {'abs err':>10} {'% err':>9}")
    for r in rep.rows():
        pct = "n/a" if np.isnan(r.percent_error) else f"{r.percent_error:.4f}%"
        print(f"{r.x:6.3g} {r.t:6.3g} {r.exact:10.5f} {r.approx:10.5f} {r.abs_error:10.2e} {pct:>9}")
    print(f"sup-norm error: {rep.sup_norm:.3e}")
    print("wrote error_report.csv")


def cmd_pollutants(args):
    registry = analysis.DEFAULT_REGISTRY
    if args.registry:
        try:
            registry = analysis.load_registry(args.registry)
        except OSError as exc:
            raise UsageError(f"cannot read registry: {exc}") from None
    L = 1.0
    T = 1.0
    if args.config:
        scenario = _scenario(args)
        L, T = scenario.L, scenario.T
    grid = build_grid(L, T, args.M or 5, args.N or 5)
    rows = analysis.pollutant_table(registry, L=L, grid=grid, truncated_pi=args.paper_pi)

    header = ["name", "formula", "D", "u", "rate", "rate_pi314", "alpha", "beta", "profile"]
    lines = [",".join(header)]
    for r in rows:
        lines.append(",".join([r.name, r.formula, report.fmt(r.diffusivity), report.fmt(r.velocity),
                               report.fmt(r.rate),
                               "" if r.rate_truncated_pi is None else report.fmt(r.rate_truncated_pi),
                               report.fmt(r.alpha), report.fmt(r.beta), r.label]))
    report.write_text("\n".join(lines) + "\n", _out(args, "pollutants.csv"))

    print(f"{'pollutant':<18} {'D (m2/hr)':>10} {'u (m/hr)':>9} {'rate':>9} "
          f"{'rate@3.14':>9} {'alpha':>7} {'beta':>8}  C(x,t)")
    for r in rows:
        r314 = "" if r.rate_truncated_pi is None else f"{r.rate_truncated_pi:.5f}"
        print(f"{r.name:<18} {r.diffusivity:>10.3e} {r.velocity:>9.2e} {r.rate:>9.6f} "
              f"{r314:>9} {r.alpha:>7.3f} {r.beta:>8.5f}  {r.label}")
    print("wrote pollutants.csv")


def _split_steps(scenario, M, times):
    dx = scenario.L / M
    n = fdm.steps_for_alpha(scenario.max_diffusivity, dx, scenario.T, 0.5)
    for cand in range(n, 64 * n + 1):
        dt = scenario.T / cand
        if all(abs(round(t / dt) * dt - t) <= 1e-9 * max(1.0, t) for t in times):
            return cand
    return n


def cmd_split_domain(args):
    scenario = _scenario(args, SPLIT_DEFAULT)
    if not scenario.is_split:
        scenario = validate_scenario(replace(scenario, D=None, D1=scenario.D, D2=scenario.D))
    times = [t for t in args.times if t <= scenario.T + 1e-12]
    M = args.M if args.M is not None else 20
    N = args.N if args.N is not None else _split_steps(scenario, M, times)
    grid = build_grid(scenario.L, scenario.T, M, N)
    stencil = fdm.Stencil(args.stencil)
    surface = fdm.solve_ftcs_piecewise(scenario, grid, stencil, unsafe=args.unsafe_override)
    c = fdm.ftcs_coefficients(fdm.node_diffusivity(scenario, grid), scenario.u, grid.dx, grid.dt)
    print(f"D1={scenario.D1:g} on [0, L/2), D2={scenario.D2:g} on (L/2, L]; M={M}, N={N}")
    print(fdm.check_stability(c, stencil).describe())

    try:
        profiles = report.profiles_at_times(surface, times)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    for t, p in zip(times, profiles):
        i = int(np.argmax(p.values))
        print(f"t={t:g}: max C={p.values[i]:.6f} at x={p.abscissa[i]:.4g}")
    report.write_surface_csv(surface, _out(args, "split_surface.csv"))
    report.write_profiles_csv(profiles, _out(args, "split_profiles.csv"))
    report.write_profile_svg(profiles, "x (m)", "C", _out(args, "split_profiles.svg"),
                             title=f"D1={scenario.D1:g}, D2={scenario.D2:g}")
    print("wrote split_surface.csv, split_profiles.csv, split_profiles.svg")


def cmd_converge(args):
    scenario = _scenario(args)
    study = analysis.convergence_study(scenario, args.levels, fdm.Stencil(args.stencil),
                                       alpha=args.alpha, terms=args.terms)
    print(f"alpha = {study.alpha:.6g} on every level, t = {scenario.T:g}")
    lines = ["M,dx,dt,error,order"]
    print(f"{'M':>6} {'dx':>10} {'dt':>10} {'sup error':>12} {'order':>7}")
    for i, m in enumerate(study.M):
        order = study.orders[i - 1] if i else np.nan
        shown = "" if i == 0 else ("n/a" if np.isnan(order) else f"{order:.3f}")
        print(f"{m:>6} {study.dx[i]:>10.4g} {study.dt[i]:>10.4g} {study.errors[i]:>12.4e} {shown:>7}")
        lines.append(",".join([str(m), report.fmt(study.dx[i]), report.fmt(study.dt[i]),
                               report.fmt(study.errors[i]),
                               "" if np.isnan(order) else report.fmt(order)]))
    if not study.order_defined:
        print("observed order undefined (zero error on some level)")
    report.write_text("\n".join(lines) + "\n", _out(args, "convergence.csv"))
    print("wrote convergence.csv")


COMMANDS = {
    "solve-analytic": cmd_solve_analytic,
    "solve-fdm": cmd_solve_fdm,
    "compare": cmd_compare,
    "pollutants": cmd_pollutants,
    "split-domain": cmd_split_domain,
    "converge": cmd_converge,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"advdiff: error: {exc}", file=sys.stderr)
        return 2
    except AdvDiffError as exc:
        print(f"advdiff: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"advdiff: invalid input: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
