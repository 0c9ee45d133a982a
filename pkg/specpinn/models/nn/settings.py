from typing import Optional, Tuple

from pydantic import Field, model_validator

from specpinn.config import _CFG


class InitConfig(_CFG):
    """Network construction and initialization settings of one stage."""

    seed: Optional[int] = Field(None, description="fixed seed; derived from the master seed when unset")
    depth: int = Field(4, ge=2, description="dense layers including the output layer")
    width: int = Field(20, ge=1)
    activation: str = "tanh"
    num_features: int = Field(16, ge=1, description="n_f (spectral embedding) or m (RFF)")
    scale_factor: Optional[float] = Field(None, gt=0.0, description="MSNN kappa; 2*pi*f_d when unset")
    scale_factor_bounds: Tuple[float, float] = (1.0, 500.0)
    freeze_first_layer: bool = False

    @model_validator(mode="after")
    def _check_bounds(self) -> "InitConfig":
        low, high = self.scale_factor_bounds
        if not (0.0 < low <= high):
            raise ValueError(f"invalid scale factor bounds {self.scale_factor_bounds}")
        return self

    @property
    def hidden_layers(self) -> Tuple[int, ...]:
        return (self.width,) * (self.depth - 1)
