"""CLI module for fracspde."""

import itertools
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Literal, Optional, Sequence, Tuple

import click
from pydantic import BaseModel, ConfigDict, PositiveInt, ValidationError

from fracspde import __version__
from fracspde.errors import (
    ConditioningError,
    ConvergenceError,
    DomainError,
    FracSPDEError,
    RegimeError,
    UnsupportedParameterError,
)
from fracspde.kernel.asymptote import infinity_asymptote
from fracspde.kernel.expansion import origin_expansion
from fracspde.kernel.green import KERNEL_TOLERANCE, green_function, kernel_profile, profile_constants
from fracspde.kernel.params import EquationParams
from fracspde.report.compare import compare_files, markdown_summary
from fracspde.report.schemas import SCHEMAS, json_schema
from fracspde.report.writer import CommandOutput, flatten, provenance, write_output
from fracspde.runner.batch_runner import run_batches
from fracspde.settings import (
    DEFAULT_COMPARE_DIGITS,
    DEFAULT_INCREMENT_LAGS,
    DEFAULT_MAX_PANELS,
    DEFAULT_MC_BATCH,
    DEFAULT_MODE_COUNT,
    DEFAULT_QUAD_ABS_TOL,
    DEFAULT_QUAD_REL_TOL,
    DEFAULT_SEED,
    DEFAULT_SLND_CONFIGS,
    DEFAULT_SLND_GIVEN,
    DEFAULT_TAU_MAX,
    DEFAULT_THREADS,
    DEFAULT_XI_MAX,
    EXIT_NUMERICAL,
    EXIT_REGIME,
    EXIT_USAGE,
    FLOAT_DIGITS,
    OUTPUT_DIR_ENV,
)
from fracspde.simulator.harmonizable import sample_field
from fracspde.simulator.points import SpacetimePoint
from fracspde.simulator.slnd import SlndKind, slnd_ratios
from fracspde.simulator.small_ball import BallAxis, small_ball_mc
from fracspde.simulator.statistics import fit_exponent
from fracspde.solvability.exponents import exponents
from fracspde.solvability.params import NoiseParams, check_hypothesis
from fracspde.solvability.regime import solvability_report
from fracspde.specfun.params import EvalTolerance
from fracspde.variance.constants import k_constant
from fracspde.variance.increments import Axis, increment_variance
from fracspde.variance.params import Method, QuadratureSpec

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

logger = logging.getLogger(__name__)


class RunConfig(BaseModel):
    """Options shared by every command of one invocation."""

    model_config = ConfigDict(frozen=True)

    threads: PositiveInt = DEFAULT_THREADS
    output_dir: Optional[Path] = None
    format: Literal["json", "csv"] = "json"


class FloatList(click.ParamType):
    """Comma-separated floats, e.g. '0.1,0.2,0.5'."""

    name = "floats"

    def convert(self, value: Any, param: Optional[click.Parameter], ctx: Optional[click.Context]) -> List[float]:
        if isinstance(value, (list, tuple)):
            return [float(v) for v in value]
        try:
            return [float(item) for item in str(value).split(",") if item.strip()]
        except ValueError:
            self.fail(f"'{value}' is not a comma-separated list of numbers", param, ctx)


FLOATS = FloatList()


def _pair(values: List[float], name: str) -> Tuple[float, float]:
    if len(values) != 2 or values[0] >= values[1]:
        raise click.BadParameter(f"{name} must be 'low,high' with low < high, got {values}")
    return values[0], values[1]


def equation_options(f: Callable) -> Callable:
    """--alpha (decimal or ratio such as 3/2), --beta, --gamma, --nu, --d."""
    options = [
        click.option("--alpha", required=True, help="Spatial order, decimal or exact ratio such as 3/2"),
        click.option("--beta", type=float, required=True, help="Time-fractional order in (0, 2]"),
        click.option("--gamma", type=float, default=0.0, show_default=True, help="Order of the noise integral"),
        click.option("--nu", type=float, default=1.0, show_default=True, help="Diffusion coefficient"),
        click.option("--d", "d", type=int, default=1, show_default=True, help="Spatial dimension"),
    ]
    for option in reversed(options):
        f = option(f)
    return f


def noise_options(f: Callable) -> Callable:
    f = click.option("--ell", type=float, required=True, help="Riesz exponent of the spatial covariance")(f)
    return click.option("--H", "H", type=float, default=0.5, show_default=True, help="Hurst index in [1/2, 1)")(f)


def quadrature_options(f: Callable) -> Callable:
    f = click.option("--max-panels", type=int, default=DEFAULT_MAX_PANELS, show_default=True)(f)
    f = click.option("--abs-tol", type=float, default=DEFAULT_QUAD_ABS_TOL, show_default=True)(f)
    return click.option("--rel-tol", type=float, default=DEFAULT_QUAD_REL_TOL, show_default=True)(f)


def build_equation(alpha: str, beta: float, gamma: float, nu: float, d: int) -> EquationParams:
    value, ratio = EquationParams.parse_alpha(alpha)
    return EquationParams(alpha=value, beta=beta, gamma=gamma, nu=nu, d=d, alpha_ratio=ratio)


def build_params(
    alpha: str, beta: float, gamma: float, nu: float, d: int, H: float, ell: float
) -> Tuple[EquationParams, NoiseParams]:
    p = build_equation(alpha, beta, gamma, nu, d)
    n = NoiseParams(H=H, ell=ell)
    check_hypothesis(p, n)
    return p, n


def build_quadrature(rel_tol: float, abs_tol: float, max_panels: int) -> QuadratureSpec:
    return QuadratureSpec(rel_tol=rel_tol, abs_tol=abs_tol, max_panels=max_panels)


def all_params(p: EquationParams, n: Optional[NoiseParams] = None) -> Dict[str, Any]:
    return {**p.to_dict(), **(n.to_dict() if n is not None else {})}


def emit(ctx: click.Context, output: CommandOutput) -> None:
    """Write to <output-dir>/<command>.<format> when an output directory is set, else to stdout."""
    config: RunConfig = ctx.obj
    if config.output_dir is not None:
        path = write_output(output, config.format, config.output_dir / f"{output.command}.{config.format}")
        click.echo(f"{output.command}: wrote {path}", err=True)
    else:
        click.echo(output.render(config.format, FLOAT_DIGITS), nl=False)


def scalar_output(command: str, document: Dict[str, Any]) -> CommandOutput:
    """Output whose CSV view is the flattened (key, value) list of the document body."""
    body = {k: v for k, v in document.items() if k != "provenance"}
    return CommandOutput(command, document, flatten(body), ["key", "value"])


def fit_dict(fit: Optional[Tuple[float, float, float]]) -> Optional[Dict[str, float]]:
    if fit is None:
        return None
    slope, intercept, r2 = fit
    return {"slope": slope, "intercept": intercept, "r2": r2}


@click.group()
@click.version_option(__version__, prog_name="fracspde")
@click.option("--threads", type=click.IntRange(min=1), default=DEFAULT_THREADS, show_default=True,
              help="Maximum concurrent worker threads")
@click.option("--output-dir", type=click.Path(file_okay=False, path_type=Path), envvar=OUTPUT_DIR_ENV,
              help=f"Write <command>.<format> here instead of stdout (env {OUTPUT_DIR_ENV})")
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json", show_default=True,
              help="Output format")
@click.option("--verbose", "-v", is_flag=True, help="Debug logging")
@click.option("--quiet", "-q", is_flag=True, help="Warnings and errors only")
@click.pass_context
def main(ctx: click.Context, threads: int, output_dir: Optional[Path], fmt: str, verbose: bool, quiet: bool):
    """fracspde - Kernels, solvability, variance constants and Gaussian simulation for stochastic fractional equations.

    \b
    CSV columns:
      check, exponents, kconst  key, value (dotted paths into the JSON document)
      kernel eval               t, r, value
      kernel expand             z, partial_sum
      kernel asym               r, leading_term, kernel
      kernel profile            z, profile, series
      varinc                    lag, variance
      simulate                  replicate, one column per point
      condvar                   distance, conditional_variance, ratio
      smallball                 eps, prob
    """
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)
    logging.getLogger("fracspde").setLevel(level)
    ctx.obj = RunConfig(threads=threads, output_dir=output_dir, format=fmt)


@main.command()
@equation_options
@noise_options
@click.pass_context
def check(ctx: click.Context, alpha: str, beta: float, gamma: float, nu: float, d: int, H: float, ell: float):
    """Solvability verdict, exponents, regime tags and moduli."""
    p, n = build_params(alpha, beta, gamma, nu, d, H, ell)
    report = solvability_report(p, n)
    document = {"provenance": provenance("check", report.pop("params")), **report}
    emit(ctx, scalar_output("check", document))


@main.command(name="exponents")
@equation_options
@noise_options
@click.pass_context
def exponents_command(
    ctx: click.Context, alpha: str, beta: float, gamma: float, nu: float, d: int, H: float, ell: float
):
    """The seven regularity exponents."""
    p, n = build_params(alpha, beta, gamma, nu, d, H, ell)
    document = {"provenance": provenance("exponents", all_params(p, n)), "exponents": exponents(p, n).to_dict()}
    emit(ctx, scalar_output("exponents", document))


@main.command()
@equation_options
@noise_options
@quadrature_options
@click.option("--oracle/--no-oracle", default=True, show_default=True, help="Also evaluate the quadrature oracle")
@click.pass_context
def kconst(
    ctx: click.Context,
    alpha: str,
    beta: float,
    gamma: float,
    nu: float,
    d: int,
    H: float,
    ell: float,
    rel_tol: float,
    abs_tol: float,
    max_panels: int,
    oracle: bool,
):
    """Variance constant K: closed form and quadrature oracle."""
    p, n = build_params(alpha, beta, gamma, nu, d, H, ell)
    q = build_quadrature(rel_tol, abs_tol, max_panels)
    closed = k_constant(p, n, Method.CLOSED_FORM, q)
    reference = None
    if closed.fallback:
        closed, reference = None, closed
    elif oracle:
        reference = k_constant(p, n, Method.QUADRATURE, q)
    difference = None
    if closed is not None and reference is not None:
        difference = abs(closed.value - reference.value) / abs(reference.value)
    document = {
        "provenance": provenance("kconst", all_params(p, n), rel_tol=rel_tol),
        "closed": closed.to_dict() if closed else None,
        "oracle": reference.to_dict() if reference else None,
        "relative_difference": difference,
    }
    emit(ctx, scalar_output("kconst", document))


@main.group()
def kernel():
    """Fundamental solution: values, origin series, tails and profile."""


def _tolerance(rel_tol: float) -> EvalTolerance:
    return EvalTolerance(abs_tol=KERNEL_TOLERANCE.abs_tol, rel_tol=rel_tol)


@kernel.command(name="eval")
@equation_options
@click.option("--t", "times", type=FLOATS, default="1", show_default=True, help="Times")
@click.option("--r", "radii", type=FLOATS, required=True, help="Distances |x|")
@click.option("--rel-tol", type=float, default=KERNEL_TOLERANCE.rel_tol, show_default=True)
@click.pass_context
def kernel_eval(
    ctx: click.Context,
    alpha: str,
    beta: float,
    gamma: float,
    nu: float,
    d: int,
    times: List[float],
    radii: List[float],
    rel_tol: float,
):
    """G(t, x) on the product of --t and --r."""
    p = build_equation(alpha, beta, gamma, nu, d)
    tol = _tolerance(rel_tol)
    pairs = list(itertools.product(times, radii))
    tasks = [(lambda t=t, r=r: green_function(p, t, r, tol)) for t, r in pairs]
    values = run_batches(tasks, ctx.obj.threads, label="kernel")
    rows = [{"t": t, "r": r, "value": v} for (t, r), v in zip(pairs, values)]
    document = {"provenance": provenance("kernel-eval", all_params(p)), "rows": rows}
    emit(ctx, CommandOutput("kernel-eval", document, rows, ["t", "r", "value"]))


@kernel.command(name="expand")
@equation_options
@click.option("--terms", type=click.IntRange(min=1), default=8, show_default=True, help="Number of series terms")
@click.option("--z", "points", type=FLOATS, default="0.1,0.01,0.001", show_default=True,
              help="Arguments at which the partial sum is evaluated")
@click.pass_context
def kernel_expand(
    ctx: click.Context, alpha: str, beta: float, gamma: float, nu: float, d: int, terms: int, points: List[float]
):
    """Small-argument expansion of the kernel profile."""
    p = build_equation(alpha, beta, gamma, nu, d)
    expansion = origin_expansion(p, terms)
    rows = [{"z": z, "partial_sum": expansion.evaluate(z)} for z in points]
    document = {
        "provenance": provenance("kernel-expand", all_params(p), terms=terms),
        "expansion": expansion.to_dict(),
        "rows": rows,
    }
    emit(ctx, CommandOutput("kernel-expand", document, rows, ["z", "partial_sum"]))


@kernel.command(name="asym")
@equation_options
@click.option("--r", "radii", type=FLOATS, default="10,20,40", show_default=True, help="Large distances |x|")
@click.option("--exact/--no-exact", default=False, show_default=True, help="Also evaluate G(1, x) by quadrature")
@click.pass_context
def kernel_asym(
    ctx: click.Context, alpha: str, beta: float, gamma: float, nu: float, d: int, radii: List[float], exact: bool
):
    """Leading large-|x| term of G(1, x)."""
    p = build_equation(alpha, beta, gamma, nu, d)
    asymptote = infinity_asymptote(p)
    kernel_values: List[Optional[float]] = [None] * len(radii)
    if exact:
        tasks = [(lambda r=r: green_function(p, 1.0, r)) for r in radii]
        kernel_values = run_batches(tasks, ctx.obj.threads, label="kernel")
    rows = [
        {"r": r, "leading_term": asymptote.leading_term(r), "kernel": value}
        for r, value in zip(radii, kernel_values)
    ]
    document = {
        "provenance": provenance("kernel-asym", all_params(p)),
        "asymptote": asymptote.to_dict(),
        "rows": rows,
    }
    emit(ctx, CommandOutput("kernel-asym", document, rows, ["r", "leading_term", "kernel"]))


@kernel.command(name="profile")
@equation_options
@click.option("--z", "points", type=FLOATS, default="0.001,0.01,0.1,1", show_default=True, help="Profile arguments")
@click.option("--terms", type=click.IntRange(min=1), default=8, show_default=True, help="Series terms for comparison")
@click.pass_context
def kernel_profile_command(
    ctx: click.Context, alpha: str, beta: float, gamma: float, nu: float, d: int, points: List[float], terms: int
):
    """Profile f(z) by quadrature next to its origin series."""
    p = build_equation(alpha, beta, gamma, nu, d)
    expansion = origin_expansion(p, terms)
    tasks = [(lambda z=z: kernel_profile(p, z)) for z in points]
    profile = run_batches(tasks, ctx.obj.threads, label="profile")
    rows = [{"z": z, "profile": f, "series": expansion.evaluate(z)} for z, f in zip(points, profile)]
    c1, c2 = profile_constants(p)
    document = {
        "provenance": provenance("kernel-profile", all_params(p), terms=terms),
        "constants": {"C1": c1, "C2": c2},
        "rows": rows,
    }
    emit(ctx, CommandOutput("kernel-profile", document, rows, ["z", "profile", "series"]))


@main.command()
@equation_options
@noise_options
@quadrature_options
@click.option("--axis", type=click.Choice([a.value for a in Axis]), default="time", show_default=True)
@click.option("--lags", type=FLOATS, default=",".join(repr(h) for h in DEFAULT_INCREMENT_LAGS),
              help="Increment sizes (default 2^-10 ... 2^-4)")
@click.option("--t", "t", type=float, default=1.0, show_default=True, help="Base time")
@click.option("--x", "x0", type=float, default=0.0, show_default=True, help="First coordinate of the base position")
@click.pass_context
def varinc(
    ctx: click.Context,
    alpha: str,
    beta: float,
    gamma: float,
    nu: float,
    d: int,
    H: float,
    ell: float,
    rel_tol: float,
    abs_tol: float,
    max_panels: int,
    axis: str,
    lags: List[float],
    t: float,
    x0: float,
):
    """Increment variances over a sweep of lags, with a log-log slope fit."""
    p, n = build_params(alpha, beta, gamma, nu, d, H, ell)
    q = build_quadrature(rel_tol, abs_tol, max_panels)
    direction = Axis(axis)
    if any(h <= 0.0 for h in lags) or (direction is Axis.TIME and max(lags) > t):
        raise click.BadParameter("lags must be positive (and at most --t on the time axis)")
    base = (x0,) + (0.0,) * (d - 1)

    def increment(h: float) -> float:
        if direction is Axis.TIME:
            return increment_variance(p, n, (t, base), (t - h, base), direction, q)
        return increment_variance(p, n, (t, base), (t, (x0 + h,) + base[1:]), direction, q)

    values = run_batches([(lambda h=h: increment(h)) for h in lags], ctx.obj.threads, label="increments")
    rows = [{"lag": h, "variance": v} for h, v in zip(lags, values)]
    ex = exponents(p, n)
    exponent = ex.rho if direction is Axis.TIME else ex.rho_tilde
    fit = fit_exponent(lags, values) if len(lags) >= 4 and min(values) > 0.0 else None
    document = {
        "provenance": provenance("varinc", all_params(p, n), t=t, x=x0, rel_tol=rel_tol),
        "axis": direction.value,
        "expected_slope": 2.0 * min(exponent, 1.0),
        "rows": rows,
        "fit": fit_dict(fit),
    }
    emit(ctx, CommandOutput("varinc", document, rows, ["lag", "variance"]))


@main.command()
@equation_options
@noise_options
@click.option("--t", "times", type=FLOATS, default="1", show_default=True, help="Times")
@click.option("--x", "positions", type=FLOATS, default="0", show_default=True, help="Positions")
@click.option("--mode-count", type=int, default=DEFAULT_MODE_COUNT, show_default=True, help="Spectral cells")
@click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True)
@click.option("--replicates", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--tau-max", type=float, default=DEFAULT_TAU_MAX, show_default=True)
@click.option("--xi-max", type=float, default=DEFAULT_XI_MAX, show_default=True)
@click.pass_context
def simulate(
    ctx: click.Context,
    alpha: str,
    beta: float,
    gamma: float,
    nu: float,
    d: int,
    H: float,
    ell: float,
    times: List[float],
    positions: List[float],
    mode_count: int,
    seed: int,
    replicates: int,
    tau_max: float,
    xi_max: float,
):
    """Spectral samples of u on the product of --t and --x."""
    p, n = build_params(alpha, beta, gamma, nu, d, H, ell)
    points = [SpacetimePoint(t=t, x=x) for t, x in itertools.product(times, positions)]
    sample = sample_field(p, n, points, mode_count, seed, replicates, tau_max, xi_max)
    body = {k: v for k, v in sample.to_dict().items() if k != "seed"}
    document = {
        "provenance": provenance("simulate", all_params(p, n), seed=seed, mode_count=sample.mode_count),
        **body,
    }
    labels = [f"u({pt.t:g};{pt.x[0]:g})" for pt in points]
    rows = [{"replicate": i, **dict(zip(labels, values))} for i, values in enumerate(sample.values.tolist())]
    emit(ctx, CommandOutput("simulate", document, rows, ["replicate", *labels]))


@main.command()
@equation_options
@noise_options
@quadrature_options
@click.option("--kind", type=click.Choice([k.value for k in SlndKind]), default="two_sided", show_default=True)
@click.option("--window", type=FLOATS, default="1,2", show_default=True,
              help="Time window (time kinds) or position window (space)")
@click.option("--anchor", type=float, default=None,
              help="Fixed position (time kinds, default 0) or time (space, default 1)")
@click.option("--configs", type=int, default=DEFAULT_SLND_CONFIGS, show_default=True)
@click.option("--given", type=int, default=DEFAULT_SLND_GIVEN, show_default=True, help="Conditioning points")
@click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True)
@click.pass_context
def condvar(
    ctx: click.Context,
    alpha: str,
    beta: float,
    gamma: float,
    nu: float,
    d: int,
    H: float,
    ell: float,
    rel_tol: float,
    abs_tol: float,
    max_panels: int,
    kind: str,
    window: List[float],
    anchor: Optional[float],
    configs: int,
    given: int,
    seed: int,
):
    """Conditional variances over random configurations (nondeterminism sweep)."""
    p, n = build_params(alpha, beta, gamma, nu, d, H, ell)
    q = build_quadrature(rel_tol, abs_tol, max_panels)
    family = SlndKind(kind)
    if anchor is None:
        anchor = 1.0 if family is SlndKind.SPACE else 0.0
    result = slnd_ratios(
        p, n, family, _pair(window, "--window"), configs, given, anchor, seed, ctx.obj.threads, q
    )
    document = {
        "provenance": provenance("condvar", all_params(p, n), seed=seed, anchor=anchor, window=window),
        **result.to_dict(),
    }
    rows = [
        {"distance": gap, "conditional_variance": value, "ratio": ratio, "floor": floor}
        for gap, value, ratio, floor in zip(result.distances, result.variances, result.ratios, result.floors)
    ]
    emit(ctx, CommandOutput("condvar", document, rows, ["distance", "conditional_variance", "ratio", "floor"]))


@main.command()
@equation_options
@noise_options
@quadrature_options
@click.option("--axis", type=click.Choice([a.value for a in BallAxis]), default="time", show_default=True)
@click.option("--interval", type=FLOATS, default="1,2", show_default=True, help="Interval of the sup-norm")
@click.option("--x0", type=float, default=None, help="Fixed position (time axis, default 0) or time (space, default 1)")
@click.option("--eps", "eps_list", type=FLOATS, default="0.05,0.1,0.2,0.3,0.4", show_default=True, help="Radii")
@click.option("--samples", type=int, default=100000, show_default=True)
@click.option("--grid", type=int, default=256, show_default=True)
@click.option("--batch", type=int, default=DEFAULT_MC_BATCH, show_default=True)
@click.option("--fit-band", type=FLOATS, default="0,1", show_default=True,
              help="Probability band (low,high) of the radii used in the exponent fit")
@click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True)
@click.pass_context
def smallball(
    ctx: click.Context,
    alpha: str,
    beta: float,
    gamma: float,
    nu: float,
    d: int,
    H: float,
    ell: float,
    rel_tol: float,
    abs_tol: float,
    max_panels: int,
    axis: str,
    interval: List[float],
    x0: Optional[float],
    eps_list: List[float],
    samples: int,
    grid: int,
    batch: int,
    fit_band: List[float],
    seed: int,
):
    """Monte Carlo small-ball probabilities from the exact finite-dimensional law."""
    p, n = build_params(alpha, beta, gamma, nu, d, H, ell)
    q = build_quadrature(rel_tol, abs_tol, max_panels)
    direction = BallAxis(axis)
    if x0 is None:
        x0 = 1.0 if direction is BallAxis.SPACE else 0.0
    curve = small_ball_mc(
        p, n, _pair(interval, "--interval"), x0, eps_list, samples, grid, seed, direction, batch, ctx.obj.threads, q
    )
    document = {
        "provenance": provenance("smallball", all_params(p, n), seed=seed, grid=grid, x0=x0, interval=interval),
        **curve.to_dict(),
        "fit": fit_dict(curve.exponent_fit(*_pair(fit_band, "--fit-band"))),
    }
    rows = [{"eps": e, "prob": pr} for e, pr in zip(curve.eps, curve.prob)]
    emit(ctx, CommandOutput("smallball", document, rows, ["eps", "prob"]))


@main.command()
@click.argument("command", type=click.Choice(sorted(SCHEMAS)))
def schema(command: str):
    """Print the JSON Schema of a command's document."""
    click.echo(json_schema(command), nl=False)


@main.command()
@click.argument("left", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.argument("right", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--digits", type=click.IntRange(min=1, max=FLOAT_DIGITS), default=DEFAULT_COMPARE_DIGITS,
              show_default=True, help="Significant digits compared")
@click.option("--output", type=click.Path(dir_okay=False, path_type=Path), help="Write the Markdown summary here")
def compare(left: Path, right: Path, digits: int, output: Optional[Path]):
    """Compare two JSON result files and print a Markdown summary."""
    summary = markdown_summary(compare_files(left, right, digits))
    if output is not None:
        output.parent.mkdir(parents=True, exist_ok=True)
        with open(output, "w", encoding="utf-8") as f:
            f.write(summary)
        click.echo(f"Comparison saved to {output}", err=True)
    else:
        click.echo(summary)


def exit_code_for(error: BaseException) -> int:
    """Process exit status for an exception raised by a command."""
    if isinstance(error, RegimeError):
        return EXIT_REGIME
    if isinstance(error, (ConvergenceError, ConditioningError)):
        return EXIT_NUMERICAL
    if isinstance(error, (click.UsageError, DomainError, UnsupportedParameterError, ValidationError)):
        return EXIT_USAGE
    if isinstance(error, click.ClickException):
        return error.exit_code
    return 1


def run(args: Optional[Sequence[str]] = None) -> None:
    """Console entry point: run the command group and map errors to exit statuses."""
    try:
        code = main.main(args=args, prog_name="fracspde", standalone_mode=False)
    except click.ClickException as e:
        e.show()
        code = exit_code_for(e)
    except click.Abort:
        click.echo("Aborted!", err=True)
        code = 1
    except (FracSPDEError, ValidationError) as e:
        click.echo(f"Error: {type(e).__name__}: {e}", err=True)
        code = exit_code_for(e)
    sys.exit(code if isinstance(code, int) else 0)


if __name__ == "__main__":
    run()
