from typing import Tuple

from pydantic import Field, model_validator

from specpinn.config import _CFG


class OptimConfig(_CFG):
    """Adam followed by L-BFGS, both full batch."""

    adam_steps: int = Field(5000, ge=0)
    adam_lr: float = Field(1e-3, gt=0.0)
    adam_betas: Tuple[float, float] = (0.9, 0.999)
    adam_eps: float = Field(1e-8, ge=0.0)
    lbfgs_max_iters: int = Field(2000, ge=0)
    lbfgs_history: int = Field(10, ge=1)
    lbfgs_grad_tol: float = Field(1e-9, ge=0.0)
    line_search: Tuple[float, float] = Field((1e-4, 0.9), description="strong-Wolfe (c1, c2)")
    max_linesearch_steps: int = Field(30, ge=1)
    progress: bool = False

    @model_validator(mode="after")
    def _check_constants(self) -> "OptimConfig":
        c1, c2 = self.line_search
        if not 0.0 < c1 < c2 < 1.0:
            raise ValueError(f"line search constants must satisfy 0 < c1 < c2 < 1, got {self.line_search}")
        if not all(0.0 <= beta < 1.0 for beta in self.adam_betas):
            raise ValueError(f"Adam betas must be in [0, 1), got {self.adam_betas}")
        return self
