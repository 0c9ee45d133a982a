from specpinn.optim.adam import adam_minimize
from specpinn.optim.base import NonFiniteLossError, Objective, OptimizationResult
from specpinn.optim.lbfgs import lbfgs_minimize
from specpinn.optim.settings import OptimConfig

__all__ = [
    "OptimConfig",
    "OptimizationResult",
    "Objective",
    "NonFiniteLossError",
    "adam_minimize",
    "lbfgs_minimize",
]
