"""Configuration-driven experiments: one JSON file fully determines a run."""

from __future__ import annotations

import os
from datetime import datetime
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import numpy as np
from pydantic import Field, field_validator

from specpinn.artifacts import write_grid, write_loss_history, write_spectrum
from specpinn.config import _CFG
from specpinn.logger import logger, run_log
from specpinn.models.nn.checkpoint import CheckpointError, load_checkpoint, save_checkpoint
from specpinn.multistage.runner import RunResult, run_method
from specpinn.multistage.settings import RunConfig
from specpinn.multistage.solution import CompositeSolution, StageRecord
from specpinn.problems.base import ProblemInterface
from specpinn.problems.settings import ProblemConfig
from specpinn.spectral.grid import GridField, grid_points
from specpinn.spectral.modes import extract_top_modes, non_redundant_mask
from specpinn.spectral.transform import dft2

OUTPUT_ROOT_ENV: str = "SPECPINN_OUTPUT_ROOT"


class ExperimentConfig(_CFG):
    """Problem, run settings, output root and the resolution of exported grids."""

    problem: ProblemConfig = Field(default_factory=ProblemConfig)
    run: RunConfig = Field(default_factory=RunConfig)
    output_dir: str = "runs"
    export_resolution: Tuple[int, int] = (64, 64)

    @field_validator("export_resolution")
    @classmethod
    def _check_resolution(cls, value: Tuple[int, int]) -> Tuple[int, int]:
        if min(value) < 2:
            raise ValueError(f"grid resolution must be at least 2 per axis, got {value}")
        return value


def resolve_output_root(cfg: ExperimentConfig, override: Optional[Path] = None) -> Path:
    """Command-line override, then the environment variable, then the configured directory."""
    if override is not None:
        return Path(override)
    return Path(os.environ.get(OUTPUT_ROOT_ENV, cfg.output_dir))


def create_run_directory(root: Path, name: str) -> Path:
    """New ``<root>/<name>-<timestamp>`` directory; never reuses an existing one."""
    stamp = datetime.now().strftime("%Y%m%d-%H%M%S")
    directory = Path(root) / f"{name}-{stamp}"
    suffix = 1
    while directory.exists():
        directory = Path(root) / f"{name}-{stamp}-{suffix}"
        suffix += 1
    directory.mkdir(parents=True)
    return directory


def write_spectra(
    directory: Path,
    residual: Sequence[GridField],
    component_names: Sequence[str],
    num_modes: int,
) -> List[str]:
    """Write one spectrum CSV per residual component; returns the file names."""
    names = list()
    for field, component in zip(residual, component_names):
        spectrum = dft2(field)
        n_f = min(num_modes, int(non_redundant_mask(spectrum).sum()))
        name = f"spectrum_{component}.csv"
        write_spectrum(directory / name, field, extract_top_modes(spectrum, n_f))
        names.append(name)
    return names


def write_solution(
    filename: Path,
    solution: CompositeSolution,
    problem: ProblemInterface,
    resolution: Tuple[int, int],
) -> None:
    """Composite solution on the export grid, with reference columns when available."""
    points = grid_points(problem.domain, resolution)
    values = np.asarray(solution.evaluate(points))
    names = list(problem.component_names)
    if problem.has_reference:
        values = np.concatenate([values, np.asarray(problem.reference(points))], axis=-1)
        names += [f"{name}_ref" for name in problem.component_names]
    write_grid(filename, points, values, problem.coordinate_names, names)  # type: ignore


def run_experiment(cfg: ExperimentConfig, output_root: Optional[Path] = None) -> Tuple[Path, RunResult]:
    """Run the configured method and write every artifact into a fresh run directory."""
    root = resolve_output_root(cfg, output_root)
    directory = create_run_directory(root, f"{cfg.problem.label}-{cfg.run.method}")
    with run_log(directory / "run.log"):
        logger.info(f"Writing run artifacts into '{directory}'")
        cfg.to_json(directory / "config.json")
        problem = cfg.problem.create_problem()
        result = run_method(cfg.run, problem, problem_info=cfg.problem.to_dict())
        report = result.report

        for record, stage_report in zip(result.solution.stages, report.stages):
            checkpoint = f"stage_{stage_report.stage}.ckpt"
            save_checkpoint(
                directory / checkpoint,
                record.network,
                stage=stage_report.stage,
                epsilon=record.epsilon,
                problem=problem.name,
            )
            loss_csv = f"stage_{stage_report.stage}_loss.csv"
            write_loss_history(directory / loss_csv, record.loss_history)
            stage_report.checkpoint, stage_report.loss_csv = checkpoint, loss_csv

        write_solution(directory / "solution.csv", result.solution, problem, cfg.export_resolution)
        report.solution_csv = "solution.csv"
        report.spectrum_csv = write_spectra(
            directory,
            result.residuals,
            problem.component_names,
            cfg.run.init_for(len(report.stages)).num_features,
        )
        report.to_json(directory / "report.json")
        logger.info(
            f"Final residual RMS {report.final_residual_rms:.6e}, relative L2 error {report.l2_error}"
        )
    return directory, result


def load_composite(checkpoints: Sequence[Path], problem: ProblemInterface) -> CompositeSolution:
    """Rebuild a composite solution from stage checkpoints (ordered by stage index)."""
    records = list()
    for filename in checkpoints:
        network, header = load_checkpoint(filename)
        if header.get("problem") not in (None, problem.name):
            logger.error(
                f"Checkpoint '{filename}' was trained on '{header.get('problem')}', not '{problem.name}'",
                exception=CheckpointError,
            )
        if network.in_features != 2 or network.out_features != problem.num_outputs:
            logger.error(
                f"Checkpoint '{filename}' maps {network.in_features} inputs to"
                f" {network.out_features} outputs; '{problem.name}' needs 2 -> {problem.num_outputs}",
                exception=CheckpointError,
            )
        record = StageRecord(network, epsilon=float(header.get("epsilon", 1.0)), seed=network.seed)
        records.append((int(header.get("stage", 0)), record))
    stages = tuple(record for _, record in sorted(records, key=lambda item: item[0]))
    return CompositeSolution(stages=stages, num_outputs=problem.num_outputs)
