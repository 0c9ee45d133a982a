from typing import Any, Dict, List, Optional

from pydantic import Field

from specpinn.config import _CFG


class StageReport(_CFG):
    """Per-stage entry of a run report."""

    stage: int
    seed: int
    epsilon: float
    initial_loss: float
    final_loss: float
    final_interior_loss: float
    final_boundary_loss: float
    final_initial_loss: float
    residual_rms: float = Field(description="interior residual RMS of the composite after this stage")
    l2_error: Optional[List[float]] = None
    guard_ok: bool = True
    line_search_failed: bool = False
    wolfe_satisfied: bool = True
    initialization: Dict[str, Any] = Field(default_factory=dict)
    checkpoint: Optional[str] = None
    loss_csv: Optional[str] = None


class RunReport(_CFG):
    """
    Structured summary of one run (written as ``report.json``).

    Paths are relative to the run directory.
    """

    version: str
    method: str
    problem: Dict[str, Any]
    config: Dict[str, Any]
    component_names: List[str]
    stages: List[StageReport] = Field(default_factory=list)
    epsilons: List[float] = Field(default_factory=list)
    final_loss: Optional[float] = None
    final_interior_loss: Optional[float] = None
    final_residual_rms: Optional[float] = None
    l2_error: Optional[List[float]] = None
    early_stopped: bool = False
    monotone_residual: bool = True
    accepted: bool = True
    solution_csv: Optional[str] = None
    spectrum_csv: List[str] = Field(default_factory=list)
    complete: bool = False
