from specpinn.spectral.grid import (
    GridField,
    SamplingError,
    grid_axes,
    grid_points,
    sample_on_grid,
)
from specpinn.spectral.modes import SpectralModes, extract_top_modes, non_redundant_mask
from specpinn.spectral.sampling import (
    DegenerateResidualError,
    FrequencyDistribution,
    build_rff_layer,
    normalize_psd,
    sample_frequencies,
    uniform_distribution,
)
from specpinn.spectral.transform import (
    Spectrum,
    combine_psd,
    dft2,
    dominant_frequency,
    frequency_indices,
    inverse_dft2,
    psd,
)

__all__ = [
    "GridField",
    "SamplingError",
    "grid_axes",
    "grid_points",
    "sample_on_grid",
    "Spectrum",
    "dft2",
    "inverse_dft2",
    "psd",
    "combine_psd",
    "dominant_frequency",
    "frequency_indices",
    "SpectralModes",
    "extract_top_modes",
    "non_redundant_mask",
    "FrequencyDistribution",
    "DegenerateResidualError",
    "normalize_psd",
    "uniform_distribution",
    "sample_frequencies",
    "build_rff_layer",
]
