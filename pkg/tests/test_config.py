import os

os.environ["JAX_PLATFORM_NAME"] = "cpu"

import json
from pathlib import Path

import pytest
from pydantic import ValidationError

from specpinn.experiment import ExperimentConfig
from specpinn.models.nn import InitConfig
from specpinn.multistage import RunConfig


class TestConfig:
    def test_item_access(self) -> None:
        cfg = InitConfig()
        assert cfg["width"] == 20
        cfg["width"] = 8
        assert cfg.width == 8
        assert "num_features" in cfg.keywords()

    def test_validate_assignment(self) -> None:
        cfg = InitConfig()
        with pytest.raises(ValidationError):
            cfg["depth"] = 1

    def test_unknown_key(self) -> None:
        with pytest.raises(ValidationError):
            RunConfig.from_dict({"method": "pinn", "learning_rate": 0.1})

    def test_comments_stripped(self) -> None:
        cfg = ExperimentConfig.from_dict(
            {
                "_comment": "top",
                "problem": {"name": "helmholtz", "_note": "nested", "eps_r": 2.0},
                "run": {"stage_overrides": [{"stage": 1, "_why": "longer", "optim": {"adam_steps": 7}}]},
            }
        )
        assert cfg.problem.eps_r == 2.0
        assert cfg.run.optim_for(1).adam_steps == 7
        assert cfg.run.optim_for(0).adam_steps == cfg.run.optim.adam_steps

    def test_json_round_trip(self, tmp_path: Path) -> None:
        cfg = ExperimentConfig.from_dict({"run": {"method": "rff_mspinn", "stages": 3, "seed": 5}})
        cfg.to_json(tmp_path / "config.json")
        loaded = ExperimentConfig.from_json(tmp_path / "config.json")
        assert loaded == cfg
        assert json.loads((tmp_path / "config.json").read_text())["run"]["seed"] == 5

    @pytest.mark.parametrize(
        "data",
        [
            {"run": {"stages": -1}},
            {"run": {"spectrum_resolution": [1, 64]}},
            {"run": {"stage_overrides": [{"stage": 1}, {"stage": 1}]}},
            {"run": {"weights": {"boundary": 0.0}}},
            {"problem": {"name": "poisson"}},
            {"problem": {"n_trunc": 56}},
            {"export_resolution": [64, 1]},
        ],
    )
    def test_invalid(self, data: dict) -> None:
        with pytest.raises(ValidationError):
            ExperimentConfig.from_dict(data)
