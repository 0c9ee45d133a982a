"""Command line interface: ``specpinn run | compare | spectrum | evaluate``."""

import json
import logging
import sys
from pathlib import Path
from typing import Optional, Tuple

import click
from pydantic import ValidationError

from specpinn._version import __version__
from specpinn.artifacts import comparison_table, find_reports, load_reports, write_comparison
from specpinn.config import _strip_comments
from specpinn.experiment import ExperimentConfig, load_composite, run_experiment, write_spectra
from specpinn.logger import logger, set_logging_level
from specpinn.models.nn.checkpoint import CheckpointError
from specpinn.multistage.loss import ResidualError, residual_field
from specpinn.multistage.metrics import rms
from specpinn.multistage.runner import evaluate_error
from specpinn.multistage.trainer import StageTrainingError
from specpinn.problems.base import OracleError

EXIT_CONFIG_ERROR: int = 2
EXIT_TRAINING_ABORT: int = 3
EXIT_EVALUATION_ERROR: int = 4


def _format_validation_error(error: ValidationError) -> str:
    lines = list()
    for item in error.errors():
        location = ".".join(str(part) for part in item["loc"]) or "<root>"
        lines.append(f"  {location}: {item['msg']}")
    return "\n".join(lines)


def _load_config(
    filename: Path,
    seed: Optional[int] = None,
    stages: Optional[int] = None,
) -> ExperimentConfig:
    """Read and validate a config, applying overrides before validation; exits with 2 on errors."""
    try:
        with open(filename) as handle:
            data = _strip_comments(json.load(handle))
    except json.JSONDecodeError as error:
        click.echo(f"Invalid config '{filename}': line {error.lineno}, column {error.colno}: {error.msg}", err=True)
        sys.exit(EXIT_CONFIG_ERROR)
    if seed is not None or stages is not None:
        run = data.setdefault("run", {}) if isinstance(data, dict) else {}
        if seed is not None:
            run["seed"] = seed
        if stages is not None:
            run["stages"] = stages
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as error:
        click.echo(f"Invalid config '{filename}':\n{_format_validation_error(error)}", err=True)
        sys.exit(EXIT_CONFIG_ERROR)


@click.group()
@click.version_option(__version__, prog_name="specpinn")
@click.option("-v", "--verbose", count=True, help="Increase verbosity (-v info, -vv debug).")
def main(verbose: int) -> None:
    """Spectral-prior guided multistage physics-informed neural networks."""
    set_logging_level(
        logging.DEBUG if verbose > 1 else logging.INFO if verbose == 1 else logging.WARNING
    )


@main.command()
@click.option("--config", "config_file", required=True, type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--out", "output_root", type=click.Path(file_okay=False, path_type=Path), help="Output root directory.")
@click.option("--seed", type=int, help="Override the master seed.")
@click.option("--stages", type=click.IntRange(min=0), help="Override the number of correction stages.")
def run(config_file: Path, output_root: Optional[Path], seed: Optional[int], stages: Optional[int]) -> None:
    """Run the experiment described by a JSON config."""
    cfg = _load_config(config_file, seed=seed, stages=stages)
    try:
        directory, result = run_experiment(cfg, output_root)
    except StageTrainingError as error:
        click.echo(f"Training aborted at stage {error.stage}: {error}", err=True)
        sys.exit(EXIT_TRAINING_ABORT)
    except (OracleError, ResidualError) as error:
        logger.error(f"Run aborted while evaluating the composite: {error}")
        click.echo(f"Evaluation failed: {error}", err=True)
        sys.exit(EXIT_EVALUATION_ERROR)
    report = result.report
    click.echo(f"run directory: {directory}")
    click.echo(f"final loss: {report.final_loss:.6e}")
    click.echo(f"residual RMS per stage: {[stage.residual_rms for stage in report.stages]}")
    if report.l2_error is not None:
        for name, value in zip(report.component_names, report.l2_error):
            click.echo(f"L2({name}): {value:.6e}")


@main.command()
@click.argument("directory", type=click.Path(exists=True, file_okay=False, path_type=Path))
@click.option("--out", "output", type=click.Path(dir_okay=False, path_type=Path), help="Table CSV file.")
def compare(directory: Path, output: Optional[Path]) -> None:
    """Tabulate relative L2 errors of all completed runs under DIRECTORY."""
    reports = load_reports(find_reports(directory))
    if not reports:
        click.echo(f"No completed run reports under '{directory}'", err=True)
        sys.exit(1)
    table = comparison_table(reports)
    output = output or Path(directory) / "comparison.csv"
    write_comparison(output, table)
    click.echo(table.to_string())
    click.echo(f"written to {output}")


@main.command()
@click.argument("checkpoints", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--config", "config_file", required=True, type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--out", "output", type=click.Path(file_okay=False, path_type=Path), default=Path("."))
@click.option("--resolution", type=(int, int), help="Spectrum grid (defaults to the run's).")
@click.option("--modes", "num_modes", type=click.IntRange(min=1), help="Number of listed modes.")
def spectrum(
    checkpoints: Tuple[Path, ...],
    config_file: Path,
    output: Path,
    resolution: Optional[Tuple[int, int]],
    num_modes: Optional[int],
) -> None:
    """Dump the residual spectrum of the composite built from CHECKPOINTS."""
    cfg = _load_config(config_file)
    problem = cfg.problem.create_problem()
    try:
        solution = load_composite(checkpoints, problem)
    except CheckpointError as error:
        click.echo(str(error), err=True)
        sys.exit(EXIT_CONFIG_ERROR)
    residual = residual_field(solution, problem, resolution or cfg.run.spectrum_resolution)
    output.mkdir(parents=True, exist_ok=True)
    names = write_spectra(output, residual, problem.component_names, num_modes or cfg.run.init.num_features)
    for name, field in zip(names, residual):
        click.echo(f"{name}: residual RMS {rms(field.values):.6e}")


@main.command()
@click.argument("checkpoints", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--config", "config_file", required=True, type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--resolution", type=(int, int), help="Evaluation grid (defaults to the run's).")
def evaluate(checkpoints: Tuple[Path, ...], config_file: Path, resolution: Optional[Tuple[int, int]]) -> None:
    """Relative L2 error of the composite built from CHECKPOINTS against the reference."""
    cfg = _load_config(config_file)
    problem = cfg.problem.create_problem()
    try:
        solution = load_composite(checkpoints, problem)
        errors = evaluate_error(solution, problem, resolution or cfg.run.eval_resolution)
    except (CheckpointError, OracleError) as error:
        click.echo(str(error), err=True)
        sys.exit(EXIT_CONFIG_ERROR)
    for name, value in zip(problem.component_names, errors):
        click.echo(f"L2({name}): {value:.6e}")


if __name__ == "__main__":
    main()
