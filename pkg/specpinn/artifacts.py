"""
CSV artifacts written with pandas.

* loss history: ``step, phase, loss``
* grid: coordinate columns (``x, t`` or ``x, y``) then one column per component
* spectrum: ``kind`` (``grid`` or ``mode``), ``x, y, residual, k_x, k_y, amplitude,
  phase, power``; one row per grid point followed by one row per selected mode
* comparison: methods as rows, ``<problem> L2(<component>)`` columns

Floats are written with 17 significant digits so values survive a round trip.
"""

from __future__ import annotations

from pathlib import Path
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np
import pandas as pd

from specpinn.logger import logger
from specpinn.multistage.report import RunReport
from specpinn.multistage.solution import LossEntry
from specpinn.spectral.grid import GridField, grid_points
from specpinn.spectral.modes import SpectralModes
from specpinn.spectral.transform import dft2
from specpinn.types import Array

FLOAT_FORMAT: str = "%.17g"

METHOD_LABELS: Dict[str, str] = {
    "pinn": "PINN",
    "msnn": "MSNN",
    "si_mspinn": "SI-MSPINNs",
    "rff_mspinn": "RFF-MSPINNs",
}


def write_loss_history(filename: Path, history: Iterable[LossEntry]) -> None:
    frame = pd.DataFrame(list(history), columns=["step", "phase", "loss"])
    frame.to_csv(filename, index=False, float_format=FLOAT_FORMAT)


def read_loss_history(filename: Path) -> pd.DataFrame:
    return pd.read_csv(filename, dtype={"step": np.int64, "phase": str, "loss": np.float64})


def write_grid(
    filename: Path,
    points: Array,
    values: Array,
    coordinate_names: Sequence[str],
    component_names: Sequence[str],
) -> None:
    """Write point coordinates and field components, one row per point."""
    points, values = np.asarray(points), np.asarray(values).reshape(len(points), -1)
    columns = {name: points[:, i] for i, name in enumerate(coordinate_names)}
    columns.update({name: values[:, i] for i, name in enumerate(component_names)})
    pd.DataFrame(columns).to_csv(filename, index=False, float_format=FLOAT_FORMAT)


def read_grid(filename: Path) -> pd.DataFrame:
    return pd.read_csv(filename, dtype=np.float64)


def spectrum_frame(residual: GridField, modes: SpectralModes) -> pd.DataFrame:
    """Residual samples with their DFT coefficients, followed by the selected modes."""
    spectrum = dft2(residual)
    KX, KY = spectrum.index_grid()
    points = np.asarray(grid_points(residual.domain, residual.resolution))
    coefficients = np.asarray(spectrum.coefficients).ravel()
    grid = pd.DataFrame(
        {
            "kind": "grid",
            "x": points[:, 0],
            "y": points[:, 1],
            "residual": np.asarray(residual.values).ravel(),
            "k_x": KX.ravel(),
            "k_y": KY.ravel(),
            "amplitude": np.abs(coefficients),
            "phase": np.angle(coefficients),
            "power": np.abs(coefficients) ** 2,
        }
    )
    indices = np.asarray(modes.indices)
    mode_rows = pd.DataFrame(
        {
            "kind": "mode",
            "x": np.nan,
            "y": np.nan,
            "residual": np.nan,
            "k_x": indices[:, 0],
            "k_y": indices[:, 1],
            "amplitude": modes.scale * np.asarray(modes.amplitudes),
            "phase": np.asarray(modes.phases),
            "power": np.nan,
        }
    )
    return pd.concat([grid, mode_rows], ignore_index=True)


def write_spectrum(filename: Path, residual: GridField, modes: SpectralModes) -> None:
    spectrum_frame(residual, modes).to_csv(filename, index=False, float_format=FLOAT_FORMAT)


def read_spectrum(filename: Path) -> pd.DataFrame:
    return pd.read_csv(filename, dtype={"kind": str, "k_x": np.int64, "k_y": np.int64})


def _problem_label(report: RunReport) -> str:
    problem = report.problem
    if problem.get("name") == "helmholtz":
        return f"eps={problem.get('eps_r', 1.0):g}"
    if "viscosity" in problem:
        return f"{problem.get('name')}(nu={problem['viscosity']:.4g})"
    return str(problem.get("name"))


def find_reports(directory: Path) -> List[Path]:
    return sorted(Path(directory).rglob("report.json"))


def load_reports(paths: Iterable[Path]) -> List[Tuple[Path, RunReport]]:
    """Load run reports, listing and skipping unreadable or incomplete ones."""
    reports = list()
    for path in paths:
        try:
            report = RunReport.from_json(path)
        except (OSError, ValueError) as error:
            logger.warning(f"Skipping unreadable report '{path}': {error}")
            continue
        if not report.complete:
            logger.warning(f"Skipping incomplete run '{path.parent}'")
            continue
        reports.append((path, report))
    return reports


def comparison_table(reports: Sequence[Tuple[Path, RunReport]]) -> pd.DataFrame:
    """
    Relative L2 errors with methods as rows and ``<problem> L2(<component>)`` columns.

    Runs without a reference error get ``n/a``; a later report of the same
    method and problem replaces an earlier one.
    """
    cells: Dict[Tuple[str, str], str] = dict()
    methods: List[str] = list()
    columns: List[str] = list()
    for path, report in reports:
        method = METHOD_LABELS.get(report.method, report.method)
        if method not in methods:
            methods.append(method)
        for index, component in enumerate(report.component_names):
            column = f"{_problem_label(report)} L2({component})"
            if column not in columns:
                columns.append(column)
            if (method, column) in cells:
                logger.warning(f"Replacing {method} / {column} with '{path}'")
            cells[(method, column)] = (
                f"{report.l2_error[index]:.6e}" if report.l2_error is not None else "n/a"
            )
    order = [label for label in METHOD_LABELS.values() if label in methods]
    order += [method for method in methods if method not in order]
    table = pd.DataFrame(index=pd.Index(order, name="method"), columns=columns, dtype=object)
    for (method, column), value in cells.items():
        table.loc[method, column] = value
    return table.fillna("n/a")


def write_comparison(filename: Path, table: pd.DataFrame) -> None:
    table.to_csv(filename)


def read_comparison(filename: Path) -> pd.DataFrame:
    return pd.read_csv(filename, index_col="method", dtype=str, keep_default_na=False)
