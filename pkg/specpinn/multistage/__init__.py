from specpinn.multistage.initializers import create_initializer, derive_seed, scale_factor
from specpinn.multistage.loss import (
    LossTerms,
    ResidualError,
    composite_loss_terms,
    pinn_loss,
    residual_field,
)
from specpinn.multistage.metrics import ErrorMetric, rms
from specpinn.multistage.report import RunReport, StageReport
from specpinn.multistage.runner import (
    MultistageRunner,
    RunResult,
    evaluate_error,
    run_method,
    run_msnn_baseline,
    run_pinn,
    run_rff_mspinn,
    run_si_mspinn,
)
from specpinn.multistage.settings import LossWeights, Method, RunConfig, StageOverride
from specpinn.multistage.solution import CompositeSolution, StageRecord
from specpinn.multistage.trainer import StageTrainer, StageTrainingError

__all__ = [
    "RunConfig",
    "LossWeights",
    "StageOverride",
    "Method",
    "StageRecord",
    "CompositeSolution",
    "LossTerms",
    "ResidualError",
    "pinn_loss",
    "composite_loss_terms",
    "residual_field",
    "rms",
    "ErrorMetric",
    "derive_seed",
    "scale_factor",
    "create_initializer",
    "StageTrainer",
    "StageTrainingError",
    "RunReport",
    "StageReport",
    "RunResult",
    "MultistageRunner",
    "evaluate_error",
    "run_method",
    "run_pinn",
    "run_si_mspinn",
    "run_rff_mspinn",
    "run_msnn_baseline",
]
