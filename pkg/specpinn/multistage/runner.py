from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple, Union

import jax.numpy as jnp
import numpy as np

from specpinn._version import __version__
from specpinn.logger import logger
from specpinn.multistage.initializers import (
    COLLOCATION_SEED,
    create_initializer,
    derive_seed,
    plain_network,
)
from specpinn.multistage.loss import residual_field
from specpinn.multistage.metrics import ErrorMetric, rms
from specpinn.multistage.report import RunReport, StageReport
from specpinn.multistage.settings import RunConfig
from specpinn.multistage.solution import CompositeSolution, StageRecord
from specpinn.multistage.trainer import StageTrainer, StageTrainingResult, loss_summary
from specpinn.problems.base import CollocationPoints, OracleError, ProblemInterface
from specpinn.spectral.grid import GridField, grid_points
from specpinn.types import Array

INPUT_DIMENSION: int = 2


def evaluate_error(
    solution: CompositeSolution,
    problem: ProblemInterface,
    resolution: Tuple[int, int],
    reference: Optional[Array] = None,
) -> List[float]:
    """Relative L2 error of each output component against the reference on a uniform grid."""
    if not problem.has_reference:
        logger.error(f"Problem '{problem.name}' has no reference solution", exception=OracleError)
    points = grid_points(problem.domain, resolution)
    if reference is None:
        reference = problem.reference(points)
    metric = ErrorMetric.create("L2")
    return [float(value) for value in metric(solution.evaluate(points), reference)]


@dataclass
class RunResult:
    """Composite solution, run report and the artifacts the report points to."""

    solution: CompositeSolution
    report: RunReport
    residuals: List[GridField] = field(default_factory=list)
    points: Dict[int, CollocationPoints] = field(default_factory=dict, repr=False)


class MultistageRunner:
    """
    Sequential state machine over stages.

    Stage 0 is a plain PINN; every further stage is built by the method's
    initializer from the residual of the current composite and trained with the
    earlier stages frozen. The residual RMS on the spectrum grid scales the next
    stage. Stage 0 depends only on the master seed, so it is identical across methods.
    """

    def __init__(self, cfg: RunConfig, problem: ProblemInterface, problem_info: Optional[Dict[str, Any]] = None) -> None:
        self.cfg = cfg
        self.problem = problem
        self.problem_info = problem_info or {"name": problem.name}
        self._reference: Optional[Array] = None

    def _collocation(self, stage: int) -> CollocationPoints:
        seed_stage = stage if self.cfg.resample_per_stage else 0
        return self.problem.sample_collocation(
            self.cfg.num_interior,
            self.cfg.num_boundary,
            self.cfg.num_initial,
            seed=derive_seed(self.cfg.seed, seed_stage, COLLOCATION_SEED),
        )

    def _error(self, solution: CompositeSolution) -> Optional[List[float]]:
        if not self.problem.has_reference:
            return None
        if self._reference is None:
            points = grid_points(self.problem.domain, self.cfg.eval_resolution)
            self._reference = self.problem.reference(points)
        return evaluate_error(solution, self.problem, self.cfg.eval_resolution, self._reference)

    def _residual(self, solution: CompositeSolution) -> Tuple[List[GridField], float]:
        fields = residual_field(solution, self.problem, self.cfg.spectrum_resolution)
        return fields, rms(jnp.stack([f.values for f in fields]))

    def _stage_report(
        self,
        stage: int,
        seed: int,
        epsilon: float,
        result: StageTrainingResult,
        residual_rms: float,
        previous_rms: Optional[float],
        initialization: Dict[str, Any],
        l2_error: Optional[List[float]],
    ) -> StageReport:
        initial = loss_summary(result.initial_terms)
        final = loss_summary(result.final_terms)
        # a stage that lowered its loss must not raise the residual
        guard_ok = previous_rms is None or not final[0] < initial[0] or residual_rms <= previous_rms
        if not guard_ok:
            logger.warning(
                f"Stage {stage} lowered its loss but raised the residual RMS"
                f" from {previous_rms:.6e} to {residual_rms:.6e}"
            )
        return StageReport(
            stage=stage,
            seed=seed,
            epsilon=epsilon,
            initial_loss=initial[0],
            final_loss=final[0],
            final_interior_loss=final[1],
            final_boundary_loss=final[2],
            final_initial_loss=final[3],
            residual_rms=residual_rms,
            l2_error=l2_error,
            guard_ok=guard_ok,
            line_search_failed=result.line_search_failed,
            wolfe_satisfied=result.wolfe_satisfied,
            initialization=initialization,
        )

    def run(self) -> RunResult:
        cfg, problem = self.cfg, self.problem
        start = time.perf_counter()
        report = RunReport(
            version=__version__,
            method=cfg.method,
            problem=self.problem_info,
            config=cfg.to_dict(),
            component_names=list(problem.component_names),
        )
        result = RunResult(solution=CompositeSolution(num_outputs=problem.num_outputs), report=report)
        logger.info(f"Running {cfg.method} on {problem.name} with {cfg.num_correction_stages} correction stages")

        # stage 0: plain PINN
        init = cfg.init_for(0)
        network = plain_network(init, INPUT_DIMENSION, problem.num_outputs, cfg.seed, 0)
        result.points[0] = self._collocation(0)
        trained = StageTrainer(
            problem, result.points[0], cfg.weights, cfg.optim_for(0), stage=0
        ).fit(network)
        solution = result.solution.append(
            StageRecord(
                network=trained.network,
                epsilon=1.0,
                loss_history=tuple(trained.loss_history),
                seed=network.seed,
            )
        )
        residual, residual_rms = self._residual(solution)
        report.stages.append(
            self._stage_report(0, network.seed, 1.0, trained, residual_rms, None, {}, self._error(solution))
        )
        logger.info(f"Stage 0: residual RMS {residual_rms:.6e}")

        if cfg.num_correction_stages > 0:
            initializer = create_initializer(cfg.method)
        for stage in range(1, cfg.num_correction_stages + 1):
            if residual_rms < cfg.epsilon_tol:
                logger.info(f"Residual RMS {residual_rms:.3e} below tolerance, stopping before stage {stage}")
                report.early_stopped = True
                break
            epsilon = residual_rms
            init = cfg.init_for(stage)
            network, info = initializer(
                residual, init, INPUT_DIMENSION, problem.num_outputs, cfg.seed, stage
            )
            result.points[stage] = self._collocation(stage)
            trained = StageTrainer(
                problem,
                result.points[stage],
                cfg.weights,
                cfg.optim_for(stage),
                frozen=solution,
                epsilon=epsilon,
                stage=stage,
            ).fit(network)
            solution = solution.append(
                StageRecord(
                    network=trained.network,
                    epsilon=epsilon,
                    loss_history=tuple(trained.loss_history),
                    initialization=info,
                    seed=network.seed,
                )
            )
            previous_rms = residual_rms
            residual, residual_rms = self._residual(solution)
            report.stages.append(
                self._stage_report(
                    stage,
                    network.seed,
                    epsilon,
                    trained,
                    residual_rms,
                    previous_rms,
                    info,
                    self._error(solution),
                )
            )
            logger.info(f"Stage {stage}: residual RMS {previous_rms:.6e} -> {residual_rms:.6e}")

        result.solution, result.residuals = solution, residual
        self._finalize(report)
        logger.info(f"Run finished in {time.perf_counter() - start:.1f} s")
        return result

    @staticmethod
    def _finalize(report: RunReport) -> None:
        last = report.stages[-1]
        report.epsilons = [stage.epsilon for stage in report.stages]
        report.final_loss = last.final_loss
        report.final_interior_loss = last.final_interior_loss
        report.final_residual_rms = last.residual_rms
        report.l2_error = last.l2_error
        sequence = [stage.residual_rms for stage in report.stages]
        report.monotone_residual = bool(np.all(np.diff(sequence) < 0.0))
        report.accepted = report.monotone_residual and all(stage.guard_ok for stage in report.stages)
        if not report.accepted:
            logger.warning(f"Residual RMS sequence {sequence} is not strictly decreasing")
        report.complete = True


def _check_method(cfg: RunConfig, expected: Union[str, Tuple[str, ...]]) -> None:
    expected = (expected,) if isinstance(expected, str) else expected
    if cfg.method not in expected:
        logger.error(f"Expected method {expected}, got '{cfg.method}'", exception=ValueError)


def run_pinn(cfg: RunConfig, problem: ProblemInterface) -> RunResult:
    """Plain PINN: stage 0 only."""
    _check_method(cfg, "pinn")
    return MultistageRunner(cfg, problem).run()


def run_si_mspinn(cfg: RunConfig, problem: ProblemInterface) -> RunResult:
    """Multistage PINN with spectrum-informed embedding layers."""
    _check_method(cfg, "si_mspinn")
    return MultistageRunner(cfg, problem).run()


def run_rff_mspinn(cfg: RunConfig, problem: ProblemInterface) -> RunResult:
    """Multistage PINN with PSD-sampled random Fourier feature layers."""
    _check_method(cfg, "rff_mspinn")
    return MultistageRunner(cfg, problem).run()


def run_msnn_baseline(cfg: RunConfig, problem: ProblemInterface) -> RunResult:
    """Multistage network with plain stages and first-layer scale factors."""
    _check_method(cfg, "msnn")
    return MultistageRunner(cfg, problem).run()


def run_method(cfg: RunConfig, problem: ProblemInterface, problem_info: Optional[Dict[str, Any]] = None) -> RunResult:
    """Run whichever method the configuration selects."""
    return MultistageRunner(cfg, problem, problem_info).run()
