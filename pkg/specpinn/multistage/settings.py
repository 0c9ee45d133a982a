from typing import List, Literal, Optional, Tuple

from pydantic import Field, field_validator, model_validator

from specpinn.config import _CFG
from specpinn.models.nn.settings import InitConfig
from specpinn.optim.settings import OptimConfig

Method = Literal["pinn", "msnn", "si_mspinn", "rff_mspinn"]


class LossWeights(_CFG):
    """PINN loss weights of the interior, boundary and initial-condition terms."""

    interior: float = Field(1.0, gt=0.0)
    boundary: float = Field(1.0, gt=0.0)
    initial: float = Field(1.0, gt=0.0)


class StageOverride(_CFG):
    """Replace the network and/or optimizer settings of one stage."""

    stage: int = Field(ge=0)
    init: Optional[InitConfig] = None
    optim: Optional[OptimConfig] = None


class RunConfig(_CFG):
    """
    A single multistage run.

    ``stages`` counts the correction stages trained after the base stage 0
    (``pinn`` never trains any).
    """

    method: Method = "si_mspinn"
    stages: int = Field(2, ge=0)
    init: InitConfig = Field(default_factory=InitConfig)
    optim: OptimConfig = Field(default_factory=OptimConfig)
    stage_overrides: List[StageOverride] = Field(default_factory=list)
    num_interior: int = Field(2540, ge=1)
    num_boundary: int = Field(80, ge=1)
    num_initial: int = Field(80, ge=1)
    weights: LossWeights = Field(default_factory=LossWeights)
    spectrum_resolution: Tuple[int, int] = (64, 64)
    eval_resolution: Tuple[int, int] = (64, 64)
    resample_per_stage: bool = True
    epsilon_tol: float = Field(1e-14, ge=0.0)
    seed: int = 0

    @field_validator("spectrum_resolution", "eval_resolution")
    @classmethod
    def _check_resolution(cls, value: Tuple[int, int]) -> Tuple[int, int]:
        if min(value) < 2:
            raise ValueError(f"grid resolution must be at least 2 per axis, got {value}")
        return value

    @model_validator(mode="after")
    def _check_overrides(self) -> "RunConfig":
        stages = [override.stage for override in self.stage_overrides]
        if len(stages) != len(set(stages)):
            raise ValueError(f"duplicate stage overrides {stages}")
        return self

    @property
    def num_correction_stages(self) -> int:
        return 0 if self.method == "pinn" else self.stages

    def _override(self, stage: int) -> Optional[StageOverride]:
        for override in self.stage_overrides:
            if override.stage == stage:
                return override
        return None

    def init_for(self, stage: int) -> InitConfig:
        override = self._override(stage)
        return override.init if override and override.init else self.init

    def optim_for(self, stage: int) -> OptimConfig:
        override = self._override(stage)
        return override.optim if override and override.optim else self.optim
