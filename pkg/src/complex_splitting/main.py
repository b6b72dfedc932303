"""CLI entry point for complex-splitting."""

from pathlib import Path

import typer
from rich.console import Console
from rich.panel import Panel
from rich.progress import BarColumn, MofNCompleteColumn, Progress, SpinnerColumn, TextColumn
from rich.table import Table

from .artifacts import CsvWriter, SvgWriter, read_study_csv
from .core.config import AppConfig, Settings
from .core.exceptions import SplittingError
from .core.logging import setup_logging
from .methods import create_method, list_methods
from .models.study import StudyConfig, StudyResult
from .problems import BenchmarkProblem
from .studies import (
    StudyRunner,
    build_problem,
    compare_forms,
    efficiency_report,
    paired_problem,
    run_bch_check,
    verify_method,
)
from .studies.verification import EMPIRICAL_SLACK

app = typer.Typer(
    name="splitting",
    help="Complex-coefficient N-split operator splitting: catalog, verification and studies",
)
console = Console()

ConfigOption = typer.Option(None, "--config", "-c", help="Path to configuration file")
SetOption = typer.Option(None, "--set", help="Override any config key: key.path=value")
PROBLEM_HELP = "adr2d | complex-ode | complex-ode-real"


def _load_config(config_path: Path | None, assignments: list[str] | None = None) -> AppConfig:
    """Settings-aware config loading; a missing default file means built-in defaults."""
    settings = Settings()
    setup_logging(settings.log_level)
    if config_path is None:
        default = Path(settings.config_path)
        config = AppConfig(default if default.exists() else None)
    else:
        config = AppConfig(config_path)
    config.apply_assignments(assignments or [])
    return config


def _apply_flags(config: AppConfig, flags: dict[str, object]) -> None:
    for key, value in flags.items():
        if value is not None:
            config.override(key, value)


def _prepare_study(config: AppConfig) -> tuple[StudyConfig, BenchmarkProblem]:
    problem = build_problem(config.study.problem, config.problem_options())
    study = config.to_study_config(problem.default_dt0, output_dir=Settings().output_dir)
    return study, problem


def _run_study(study: StudyConfig, problem: BenchmarkProblem, title: str) -> StudyResult:
    runner = StudyRunner(study, problem)
    total = len(study.methods) * len(study.dt_values)
    with Progress(
        SpinnerColumn(),
        TextColumn("[progress.description]{task.description}"),
        BarColumn(),
        MofNCompleteColumn(),
        console=console,
    ) as progress:
        task = progress.add_task("Computing reference solution...", total=None)
        _ = runner.reference
        progress.update(task, description=f"Running {title}...", total=total, completed=0)
        result = runner.run(on_row=lambda row: progress.advance(task))
    return result


def _print_rows(result: StudyResult, orders: dict[str, int]) -> None:
    table = Table(title="Study results")
    table.add_column("method")
    table.add_column("dt", justify="right")
    table.add_column("error", justify="right")
    table.add_column("RHS evals", justify="right")
    table.add_column("wall [s]", justify="right")
    for row in result.rows:
        error = "[red]blow-up[/red]" if row.blew_up else f"{row.error:.3e}"
        table.add_row(
            row.method,
            f"{row.dt:.4e}",
            error,
            str(row.rhs_evals_total),
            f"{row.wall_seconds:.3f}",
        )
    console.print(table)

    slopes = Table(title="Fitted orders")
    slopes.add_column("method")
    slopes.add_column("design order", justify="right")
    slopes.add_column("fitted", justify="right")
    for method, slope in result.slopes.items():
        slopes.add_row(method, str(orders[method]), "-" if slope is None else f"{slope:.3f}")
    console.print(slopes)


def _write_artifacts(
    config: AppConfig, study: StudyConfig, result: StudyResult, stem: str, kind: str
) -> None:
    out = Path(study.output_dir)
    if config.output.csv:
        path = CsvWriter(out).write(result, stem)
        console.print(f"[green]CSV written to {path}[/green]")
    if config.output.svg:
        try:
            path = SvgWriter(out, kind).write(result, stem)
            console.print(f"[green]SVG written to {path}[/green]")
        except SplittingError as e:
            console.print(f"[yellow]SVG skipped: {e}[/yellow]")


def _check_slopes(result: StudyResult, orders: dict[str, int]) -> bool:
    ok = True
    for method, slope in result.slopes.items():
        if slope is None or abs(slope - orders[method]) > EMPIRICAL_SLACK:
            console.print(
                f"[red]✗ {method}: fitted order {slope} vs design order {orders[method]}[/red]"
            )
            ok = False
    return ok


def _study_command(
    kind: str,
    config_path: Path | None,
    assignments: list[str] | None,
    flags: dict[str, object],
    check_orders: bool,
    compare: bool = False,
) -> None:
    try:
        config = _load_config(config_path, assignments)
        _apply_flags(config, flags)
        study, problem = _prepare_study(config)
        other = paired_problem(problem) if compare else None
    except SplittingError as e:
        console.print(f"[red]Configuration error: {e}[/red]")
        raise typer.Exit(1) from e

    console.print(
        Panel.fit(
            f"[bold blue]{kind.capitalize()} study[/bold blue]\n"
            f"{problem.name}: {', '.join(study.methods)} with {study.sub_integrator}, "
            f"{len(study.dt_values)} step sizes from {study.dt_values[0]:.4e}",
            border_style="blue",
        )
    )

    try:
        result = _run_study(study, problem, kind)
        n = result.n_operators
        orders = {m: create_method(m, n).design_order for m in study.methods}
        _print_rows(result, orders)
        if kind == "work-precision":
            _print_efficiency(result, orders)
        _write_artifacts(config, study, result, f"{kind}_{problem.name}", kind)
        if other is not None:
            _compare_forms(config, study, other, result, kind)
    except SplittingError as e:
        console.print(f"[red]Error: {e}[/red]")
        raise typer.Exit(1) from e

    if check_orders and not _check_slopes(result, orders):
        raise typer.Exit(1)
    console.print("[bold green]Study complete![/bold green]")


def _print_efficiency(result: StudyResult, orders: dict[str, int]) -> None:
    report = efficiency_report(result, orders)
    table = Table(title="Efficiency at equal cost")
    table.add_column("higher order")
    table.add_column("lower order")
    table.add_column("RHS evals", justify="right")
    table.add_column("error (higher)", justify="right")
    table.add_column("error (lower)", justify="right")
    for c in report.comparisons:
        higher = "-" if c.higher_error is None else f"{c.higher_error:.3e}"
        mark = "[green]✓[/green]" if c.higher_wins else "[yellow]✗[/yellow]"
        table.add_row(f"{mark} {c.higher}", c.lower, str(c.cost), higher, f"{c.lower_error:.3e}")
    console.print(table)


def _compare_forms(
    config: AppConfig,
    study: StudyConfig,
    other: BenchmarkProblem,
    result: StudyResult,
    kind: str,
) -> None:
    other_study = study.model_copy(update={"problem": other.name})
    other_result = _run_study(other_study, other, f"{kind} ({other.name})")
    _write_artifacts(config, other_study, other_result, f"{kind}_{other.name}", kind)

    if other.name == "complex-ode-real":
        comparison = compare_forms(result, other_result)
    else:
        comparison = compare_forms(other_result, result)
    table = Table(title="Complex against realified form")
    table.add_column("check")
    table.add_column("result", justify="right")
    parity = "[green]identical[/green]" if comparison.eval_parity else "[red]different[/red]"
    table.add_row("RHS evaluations per operator", parity)
    table.add_row("wall time complex / realified", f"{comparison.wall_time_ratio:.3f}")
    console.print(table)


@app.command("list-methods")
def list_methods_command(
    n: int = typer.Option(3, "--n", help="Number of operators N"),
) -> None:
    """List the built-in methods."""
    try:
        summaries = list_methods(n)
    except SplittingError as e:
        console.print(f"[red]Error: {e}[/red]")
        raise typer.Exit(1) from e

    table = Table(title=f"Built-in methods (N = {n})")
    table.add_column("id")
    table.add_column("N", justify="right")
    table.add_column("stages", justify="right")
    table.add_column("order", justify="right")
    table.add_column("sub-flows", justify="right")
    table.add_column("Re > 0")
    table.add_column("min Re", justify="right")
    table.add_column("max arg", justify="right")
    for s in summaries:
        table.add_row(
            s.method_id,
            str(s.n_operators),
            str(s.n_stages),
            str(s.design_order),
            str(s.sub_flows),
            "[green]yes[/green]" if s.positive_real else "[red]no[/red]",
            f"{s.min_real_part:.4f}",
            f"{s.max_argument:.4f}",
        )
    console.print(table)


@app.command("verify-order")
def verify_order_command(
    methods: list[str] = typer.Argument(..., help="Method ids"),
    n: int = typer.Option(3, "--n", help="Number of operators N"),
    tolerance: float = typer.Option(1e-12, "--tolerance", help="Residual tolerance"),
    seed: int = typer.Option(20240917, "--seed", help="Seed of the matrix problem"),
    empirical: bool | None = typer.Option(
        None, "--empirical/--no-empirical", help="Force or skip the matrix-problem fit"
    ),
    order: int | None = typer.Option(None, "--order", help="Order to verify (default: design)"),
) -> None:
    """Verify design orders; exits 1 if any method misses its order."""
    setup_logging(Settings().log_level)
    all_passed = True
    for method_id in methods:
        try:
            verification = verify_method(method_id, n, tolerance, seed, empirical, order)
        except SplittingError as e:
            console.print(f"[red]Error: {e}[/red]")
            raise typer.Exit(1) from e

        report = verification.report
        table = Table(
            title=f"{verification.method} (N = {verification.n_operators}, "
            f"design order {verification.design_order})"
        )
        table.add_column("order", justify="right")
        table.add_column("condition")
        table.add_column("value", justify="right")
        table.add_column("residual", justify="right")
        for c in report.conditions:
            style = "green" if c.residual < report.tolerance else "red"
            table.add_row(
                str(c.order),
                c.label,
                f"{c.value.real:.6g}{c.value.imag:+.6g}i",
                f"[{style}]{c.residual:.3e}[/{style}]",
            )
        console.print(table)
        if verification.empirical is not None:
            fitted = verification.empirical.order
            console.print(f"  empirical order on a matrix problem: {fitted:.3f}")
        if verification.note:
            console.print(f"  [yellow]{verification.note}[/yellow]")

        if verification.passed:
            console.print(f"[green]✓ {verification.method} passes[/green]")
        else:
            console.print(
                f"[red]✗ {verification.method} fails order {verification.required_order}[/red]"
            )
            all_passed = False

    if not all_passed:
        raise typer.Exit(1)


@app.command()
def convergence(
    problem: str | None = typer.Option(None, "--problem", help=PROBLEM_HELP),
    methods: str | None = typer.Option(None, "--methods", help="Comma-separated method ids"),
    dt0: float | None = typer.Option(None, "--dt0", help="Largest step size"),
    ratio: float | None = typer.Option(None, "--ratio", help="Ladder ratio"),
    rungs: int | None = typer.Option(None, "--rungs", help="Number of step sizes"),
    sub: str | None = typer.Option(None, "--sub", help="rk4 | kutta3 | exact"),
    substeps: int | None = typer.Option(None, "--substeps", help="RK steps per sub-flow"),
    seed: int | None = typer.Option(None, "--seed", help="Random seed"),
    workers: int | None = typer.Option(None, "--workers", help="Parallel rows"),
    out: Path | None = typer.Option(None, "--out", help="Output directory"),
    check_orders: bool = typer.Option(
        False, "--check-orders", help="Exit 1 if a fitted order misses its design order"
    ),
    config_path: Path | None = ConfigOption,
    assignments: list[str] | None = SetOption,
) -> None:
    """Run a convergence study and write CSV/SVG."""
    _study_command(
        "convergence",
        config_path,
        assignments,
        {
            "study.problem": problem,
            "study.methods": methods,
            "ladder.dt0": dt0,
            "ladder.ratio": ratio,
            "ladder.rungs": rungs,
            "study.sub_integrator": sub,
            "study.substeps": substeps,
            "study.seed": seed,
            "study.workers": workers,
            "output.dir": str(out) if out else None,
        },
        check_orders,
    )


@app.command("work-precision")
def work_precision(
    problem: str | None = typer.Option(None, "--problem", help=PROBLEM_HELP),
    methods: str | None = typer.Option(None, "--methods", help="Comma-separated method ids"),
    dt0: float | None = typer.Option(None, "--dt0", help="Largest step size"),
    ratio: float | None = typer.Option(None, "--ratio", help="Ladder ratio"),
    rungs: int | None = typer.Option(None, "--rungs", help="Number of step sizes"),
    sub: str | None = typer.Option(None, "--sub", help="rk4 | kutta3 | exact"),
    substeps: int | None = typer.Option(None, "--substeps", help="RK steps per sub-flow"),
    seed: int | None = typer.Option(None, "--seed", help="Random seed"),
    workers: int | None = typer.Option(None, "--workers", help="Parallel rows"),
    out: Path | None = typer.Option(None, "--out", help="Output directory"),
    compare: bool = typer.Option(
        False, "--compare-forms", help="Also run the other complex-ode form and compare costs"
    ),
    config_path: Path | None = ConfigOption,
    assignments: list[str] | None = SetOption,
) -> None:
    """Run a work-precision study: error against RHS evaluations."""
    _study_command(
        "work-precision",
        config_path,
        assignments,
        {
            "study.problem": problem,
            "study.methods": methods,
            "ladder.dt0": dt0,
            "ladder.ratio": ratio,
            "ladder.rungs": rungs,
            "study.sub_integrator": sub,
            "study.substeps": substeps,
            "study.seed": seed,
            "study.workers": workers,
            "output.dir": str(out) if out else None,
        },
        False,
        compare,
    )


@app.command("bch-check")
def bch_check(
    n: int | None = typer.Option(None, "--n", help="Number of matrices N"),
    dimension: int | None = typer.Option(None, "--d", help="Matrix dimension"),
    seed: int | None = typer.Option(None, "--seed", help="Random seed"),
    t0: float | None = typer.Option(None, "--t0", help="Largest t"),
    refinements: int | None = typer.Option(None, "--refinements", help="Number of halvings"),
    commuting: bool = typer.Option(False, "--commuting", help="Use commuting (diagonal) matrices"),
    config_path: Path | None = ConfigOption,
    assignments: list[str] | None = SetOption,
) -> None:
    """Check the N-term BCH expansion on a seeded random matrix set."""
    try:
        config = _load_config(config_path, assignments)
        _apply_flags(
            config,
            {
                "bch.n_operators": n,
                "bch.dimension": dimension,
                "bch.seed": seed,
                "bch.t0": t0,
                "bch.refinements": refinements,
            },
        )
        section = config.bch
        report = run_bch_check(
            section.n_operators,
            section.dimension,
            section.seed,
            section.t0,
            section.refinements,
            commuting=commuting,
        )
    except SplittingError as e:
        console.print(f"[red]Error: {e}[/red]")
        raise typer.Exit(1) from e

    table = Table(title=f"BCH truncation (N = {report.n_operators}, d = {report.dimension})")
    table.add_column("t", justify="right")
    table.add_column("error", justify="right")
    table.add_column("ratio", justify="right")
    ratios = [None, *report.ratios]
    for t, error, ratio in zip(report.t_values, report.errors, ratios):
        table.add_row(f"{t:.5f}", f"{error:.3e}", "-" if ratio is None else f"{ratio:.2f}")
    console.print(table)
    console.print(f"  closed form vs pairwise folding: {report.pairwise_gap:.2e}")
    if report.exact:
        console.print("[green]✓ truncated expansion is exact (commuting matrices)[/green]")
    elif report.passed:
        console.print("[green]✓ halving ratios within the expected window[/green]")
    else:
        console.print("[red]✗ BCH check failed[/red]")
        raise typer.Exit(1)


@app.command()
def render(
    csv_path: Path = typer.Argument(..., help="Study CSV"),
    kind: str = typer.Option("convergence", "--kind", help="convergence | work-precision"),
    out: Path | None = typer.Option(None, "--out", help="Output directory (default: CSV folder)"),
) -> None:
    """Render a study CSV as an SVG chart."""
    try:
        result = read_study_csv(csv_path)
        path = SvgWriter(out or csv_path.parent, kind).write(result, csv_path.stem)
    except SplittingError as e:
        console.print(f"[red]Error: {e}[/red]")
        raise typer.Exit(1) from e
    console.print(f"[green]SVG written to {path}[/green]")


@app.command()
def validate(
    config_path: Path | None = ConfigOption,
    assignments: list[str] | None = SetOption,
) -> None:
    """Validate configuration files."""
    console.print("[bold]Validating configuration...[/bold]")

    try:
        settings = Settings()
        console.print("[green]✓ environment settings loaded[/green]")
        console.print(f"  - Log level: {settings.log_level}")
        console.print(f"  - Output directory: {settings.output_dir}")
    except Exception as e:
        console.print(f"[red]✗ settings error: {e}[/red]")
        raise typer.Exit(1) from e

    try:
        config = _load_config(config_path, assignments)
        source = config.path or "built-in defaults"
        console.print(f"[green]✓ {source} loaded[/green]")
        study, problem = _prepare_study(config)
        for method_id in study.methods:
            create_method(method_id, problem.split_ode().n_operators)
        console.print(f"  - Problem: {problem.name}")
        console.print(f"  - Methods: {', '.join(study.methods)}")
        console.print(f"  - Sub-integrator: {study.sub_integrator} x {study.substeps_per_flow}")
        console.print(
            f"  - Ladder: {len(study.dt_values)} steps from {study.dt_values[0]:.4e}"
        )
    except SplittingError as e:
        console.print(f"[red]✗ configuration error: {e}[/red]")
        raise typer.Exit(1) from e

    console.print("[bold green]Configuration is valid![/bold green]")


if __name__ == "__main__":
    app()
