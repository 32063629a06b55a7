"""Command line interface for the DEMON vessel classifier."""

import sys
from functools import wraps
from typing import Any, Callable, Dict, Optional, Tuple

import click
from loguru import logger
from rich.console import Console
from rich.table import Table

from . import __version__
from .config import (
    AppConfig,
    CascadeConfig,
    DemonConfig,
    FeatureConfig,
    TrainConfig,
    load_config,
    resolve_seed,
)
from .core import DemonSonarOrchestrator, FeatureExtractor
from .evaluation import DEFAULT_WIDTHS
from .exceptions import AudioFormatError, DemonSonarError
from .features import FEATURE_NAMES, feature_matrix, read_feature_table
from .synth import default_synth_spec

console = Console(stderr=True)

EXIT_CONTRACT = 2
EXIT_IO = 3
LOG_FORMAT = "{time:HH:mm:ss} | {level: <8} | {message}"


def configure_logging(level: str) -> None:
    """Send loguru output to stderr at ``level``."""
    logger.remove()
    logger.add(sys.stderr, level=level, format=LOG_FORMAT)


def exit_code_for(error: BaseException) -> Optional[int]:
    """Exit code of a handled error, ``None`` for unexpected ones."""
    if isinstance(error, OSError):
        return EXIT_IO
    if isinstance(error, (ValueError, AudioFormatError, DemonSonarError)):
        return EXIT_CONTRACT
    return None


def handle_errors(command: Callable) -> Callable:
    """Print handled errors in red and exit with their code."""

    @wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except Exception as e:
            code = exit_code_for(e)
            if code is None:
                raise
            console.print(f"❌ [bold red]Error: {e}[/bold red]")
            sys.exit(code)

    return wrapper


def _options(*decorators: Callable) -> Callable:
    def apply(f: Callable) -> Callable:
        for decorator in reversed(decorators):
            f = decorator(f)
        return f

    return apply


def _opt(flag: str, kind: type, default: Any, help_text: str) -> Callable:
    return click.option(
        flag,
        type=kind,
        default=default,
        show_default=default is not None,
        help=help_text,
    )


seed_option = click.option(
    "--seed",
    type=int,
    default=None,
    help="Seed, overriding the group --seed and DEMONSONAR_SEED [default: 0]",
)

demon_options = _options(
    _opt("--carrier-lo", float, None, "Carrier low edge (Hz) [default: 0.1 x rate]"),
    _opt("--carrier-hi", float, None, "Carrier high edge (Hz) [default: 0.45 x rate]"),
    _opt("--carrier-taps", int, 129, "Carrier bandpass length"),
    _opt("--envelope-rate", float, 200.0, "Envelope rate after decimation (Hz)"),
    _opt("--frame-len", int, 1024, "Envelope spectrum frame (power of two)"),
    _opt("--overlap", float, 0.5, "Welch frame overlap in [0, 1)"),
    _opt("--max-line", float, 100.0, "Analysis ceiling for line features (Hz)"),
)

feature_options = _options(
    _opt("--shaft-min", float, 1.0, "Lowest shaft rate searched (Hz)"),
    _opt("--shaft-max", float, 15.0, "Highest shaft rate searched (Hz)"),
    _opt("--harmonics", int, 5, "Harmonics per comb"),
    _opt("--blade-min", int, 2, "Smallest blade count"),
    _opt("--blade-max", int, 7, "Largest blade count"),
    _opt("--peak-threshold", float, 3.0, "Line detection threshold (x median)"),
)

cascade_options = _options(
    _opt("--epochs", int, 500, "Training epochs"),
    _opt("--lr", float, 0.05, "Learning rate"),
    _opt("--batch-size", int, 16, "Mini-batch size"),
    _opt("--split-ratio", float, 0.8, "Training fraction of each class"),
    _opt("--coarse-classes", int, 5, "Vessel categories"),
    _opt("--fine-classes", int, 10, "Vessel models in the refined category"),
    _opt("--refine-category", int, 1, "Category refined by the fine network"),
    click.option(
        "--no-refine", is_flag=True, help="Train the coarse network only"
    ),
)


def build_extractor(kwargs: Dict[str, Any]) -> FeatureExtractor:
    demon = DemonConfig(
        carrier_lo_hz=kwargs["carrier_lo"],
        carrier_hi_hz=kwargs["carrier_hi"],
        carrier_taps=kwargs["carrier_taps"],
        envelope_rate_hz=kwargs["envelope_rate"],
        frame_len=kwargs["frame_len"],
        overlap_frac=kwargs["overlap"],
        max_line_hz=kwargs["max_line"],
    )
    features = FeatureConfig(
        shaft_min_hz=kwargs["shaft_min"],
        shaft_max_hz=kwargs["shaft_max"],
        n_harmonics=kwargs["harmonics"],
        blade_min=kwargs["blade_min"],
        blade_max=kwargs["blade_max"],
        peak_threshold=kwargs["peak_threshold"],
    )
    return FeatureExtractor(demon, features)


def build_cascade_config(
    kwargs: Dict[str, Any], seed: int, hidden: int
) -> CascadeConfig:
    return CascadeConfig(
        coarse_classes=kwargs["coarse_classes"],
        fine_classes=kwargs["fine_classes"],
        refine_category=None if kwargs["no_refine"] else kwargs["refine_category"],
        split_ratio=kwargs["split_ratio"],
        train=TrainConfig(
            learning_rate=kwargs["lr"],
            epochs=kwargs["epochs"],
            batch_size=kwargs["batch_size"],
            seed=seed,
            hidden_width=hidden,
        ),
    )


def command_seed(ctx: click.Context, seed: Optional[int]) -> int:
    """Resolve the seed for a command from its flag and the group state."""
    state = ctx.find_root().obj
    flag = seed if seed is not None else state["seed_flag"]
    return resolve_seed(flag, state["file"], state["app"])


def parse_widths(text: str) -> Tuple[int, ...]:
    try:
        widths = tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError as e:
        raise click.BadParameter(f"widths must be integers: {text}") from e
    if not widths or any(w < 1 for w in widths):
        raise click.BadParameter(f"widths must be positive integers: {text}")
    return widths


def _orchestrator(
    extractor: Optional[FeatureExtractor] = None,
) -> DemonSonarOrchestrator:
    return DemonSonarOrchestrator(extractor=extractor)


@click.group()
@click.version_option(version=__version__)
@click.option(
    "--config",
    "config_file",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="key=value file of option defaults, keys use '_' [default: none]",
)
@click.option(
    "--log-level",
    default=None,
    help="Log level [default: DEMONSONAR_LOG_LEVEL or INFO]",
)
@click.option(
    "--seed",
    type=int,
    default=None,
    help="Seed for every command [default: config file, DEMONSONAR_SEED, then 0]",
)
@click.pass_context
def main(ctx, config_file, log_level, seed):
    """DEMON line-spectrum features and cascaded vessel classification."""
    try:
        config = load_config(config_file)
        app: AppConfig = config["app"]
        if log_level is not None:
            app = AppConfig(log_level=log_level)
    except Exception as e:
        console.print(f"❌ [bold red]Configuration error: {e}[/bold red]")
        sys.exit(exit_code_for(e) or EXIT_CONTRACT)

    configure_logging(app.log_level)
    file_values = config["file"]
    ctx.obj = {"app": app, "file": file_values, "seed_flag": seed}

    # Config-file values become option defaults; explicit flags still win
    ctx.default_map = {}
    for name, command in main.commands.items():
        params = {p.name for p in command.params} - {"seed"}
        defaults = {k: v for k, v in file_values.items() if k in params}
        if defaults:
            ctx.default_map[name] = defaults

    console.print("🔊 [bold blue]DEMON Sonar[/bold blue]", style="bold")


@main.command()
@click.option(
    "--out",
    "out_dir",
    type=click.Path(file_okay=False),
    required=True,
    help="Output directory",
)
@click.option(
    "--classes", type=int, default=5, show_default=True, help="Coarse classes (2-5)"
)
@click.option(
    "--per-class", type=int, default=40, show_default=True, help="Recordings per class"
)
@click.option(
    "--duration",
    type=float,
    default=10.0,
    show_default=True,
    help="Seconds per recording",
)
@click.option(
    "--sample-rate",
    type=float,
    default=16000.0,
    show_default=True,
    help="Sample rate (Hz)",
)
@seed_option
@click.pass_context
@handle_errors
def synth(ctx, out_dir, classes, per_class, duration, sample_rate, seed):
    """Generate a synthetic labeled dataset of vessel recordings."""
    spec = default_synth_spec(
        n_classes=classes,
        per_class=per_class,
        duration_s=duration,
        sample_rate_hz=sample_rate,
        seed=command_seed(ctx, seed),
    )
    manifest_path = _orchestrator().synthesize(spec, out_dir)
    click.echo(str(manifest_path))


@main.command()
@click.argument("wav", type=click.Path(dir_okay=False))
@click.option("--out", "out_prefix", required=True, help="Output path prefix")
@click.option(
    "--slice",
    "slice_s",
    type=float,
    default=10.0,
    show_default=True,
    help="DEMON-gram slice length (s)",
)
@demon_options
@feature_options
@handle_errors
def analyze(wav, out_prefix, slice_s, **kwargs):
    """Write the DEMON spectrum, detected lines, DEMON-gram and features of WAV."""
    orchestrator = _orchestrator(build_extractor(kwargs))
    paths = orchestrator.analyze_recording(wav, out_prefix, slice_s)

    values = feature_matrix(read_feature_table(paths["features"]))[0]
    table = Table(title="Salient features")
    table.add_column("Feature", style="cyan")
    table.add_column("Value", style="magenta", justify="right")
    for name, value in zip(FEATURE_NAMES, values):
        table.add_row(name, f"{value:.4f}")
    console.print(table)

    for path in paths.values():
        click.echo(str(path))


@main.command()
@click.argument("manifest", type=click.Path(dir_okay=False))
@click.option(
    "--model-out",
    required=True,
    type=click.Path(dir_okay=False),
    help="Model file to write",
)
@click.option(
    "--split-out",
    type=click.Path(dir_okay=False),
    default=None,
    help="Write the features with a train/val split column [default: none]",
)
@click.option(
    "--hidden",
    type=int,
    default=20,
    show_default=True,
    help="Hidden units (e.g. 12, 16, 20, 28)",
)
@cascade_options
@demon_options
@feature_options
@seed_option
@click.pass_context
@handle_errors
def train(ctx, manifest, model_out, split_out, hidden, seed, **kwargs):
    """Train the cascade on a manifest or feature CSV."""
    config = build_cascade_config(kwargs, command_seed(ctx, seed), hidden)
    _orchestrator(build_extractor(kwargs)).train(manifest, config, model_out, split_out)
    click.echo(str(model_out))


@main.command()
@click.argument("model", type=click.Path(dir_okay=False))
@click.argument("source", type=click.Path(dir_okay=False))
@demon_options
@feature_options
@handle_errors
def predict(model, source, **kwargs):
    """Predict a WAV file or every row of a feature CSV."""
    results = _orchestrator(build_extractor(kwargs)).predict(model, source)
    for path, prediction in results:
        line = prediction.format()
        click.echo(line if path is None else f"{path} {line}")


@main.command()
@click.argument("model", type=click.Path(dir_okay=False))
@click.argument("manifest", type=click.Path(dir_okay=False))
@click.option("--report", "report_prefix", required=True, help="Report path prefix")
@click.option(
    "--subset",
    type=click.Choice(["all", "train", "val"]),
    default="all",
    show_default=True,
    help="Rows of a split file to evaluate",
)
@click.option(
    "--format",
    "formats",
    type=click.Choice(["csv", "json", "txt"]),
    multiple=True,
    default=("csv",),
    show_default=True,
    help="Report formats",
)
@demon_options
@feature_options
@handle_errors
def evaluate(model, manifest, report_prefix, subset, formats, **kwargs):
    """Evaluate a model and write confusion/metrics reports."""
    coarse, fine, _ = _orchestrator(build_extractor(kwargs)).evaluate(
        model, manifest, report_prefix, subset, formats
    )
    click.echo(f"coarse_accuracy={coarse.overall_accuracy!r}")
    if fine is not None:
        click.echo(f"fine_accuracy={fine.overall_accuracy!r}")
        click.echo(f"fine_routed_accuracy={fine.routed_accuracy!r}")


@main.command()
@click.argument("manifest", type=click.Path(dir_okay=False))
@click.option("--report", "report_prefix", required=True, help="Report path prefix")
@click.option(
    "--widths",
    default=",".join(str(w) for w in DEFAULT_WIDTHS),
    show_default=True,
    help="Comma-separated hidden widths",
)
@cascade_options
@demon_options
@feature_options
@seed_option
@click.pass_context
@handle_errors
def sweep(ctx, manifest, report_prefix, widths, seed, **kwargs):
    """Train and evaluate one cascade per hidden width on a shared split."""
    width_list = parse_widths(widths)
    config = build_cascade_config(kwargs, command_seed(ctx, seed), width_list[0])
    result, paths = _orchestrator(build_extractor(kwargs)).sweep(
        manifest, width_list, config, report_prefix
    )

    table = Table(title="Hidden width sweep")
    table.add_column("Width", style="cyan", justify="right")
    table.add_column("Coarse", style="magenta", justify="right")
    table.add_column("Fine", style="magenta", justify="right")
    for row in result.results:
        fine = f"{row.fine.overall_accuracy:.3f}" if row.fine is not None else "-"
        table.add_row(str(row.hidden_width), f"{row.coarse.overall_accuracy:.3f}", fine)
    console.print(table)

    click.echo(str(paths["sweep"]))
    click.echo(str(paths["fine_by_width"]))


if __name__ == "__main__":
    main()
