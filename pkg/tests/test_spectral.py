import os

os.environ["JAX_PLATFORM_NAME"] = "cpu"

import math
from typing import Tuple

import jax
import jax.numpy as jnp
import numpy as np
import pytest

from specpinn.spectral import (
    DegenerateResidualError,
    FrequencyDistribution,
    GridField,
    SamplingError,
    Spectrum,
    build_rff_layer,
    combine_psd,
    dft2,
    dominant_frequency,
    extract_top_modes,
    frequency_indices,
    grid_axes,
    grid_points,
    inverse_dft2,
    non_redundant_mask,
    normalize_psd,
    psd,
    sample_frequencies,
    sample_on_grid,
    uniform_distribution,
)

UNIT = ((0.0, 1.0), (0.0, 1.0))
SYMMETRIC = ((-1.0, 1.0), (-1.0, 1.0))


def random_field(seed: int, resolution: Tuple[int, int], domain=UNIT) -> GridField:
    values = jax.random.normal(jax.random.PRNGKey(seed), resolution)
    return GridField(values=values, domain=domain)


def direct_dft(values: np.ndarray) -> np.ndarray:
    nx, ny = values.shape
    fx = np.exp(-2j * np.pi * np.outer(np.arange(nx), np.arange(nx)) / nx)
    fy = np.exp(-2j * np.pi * np.outer(np.arange(ny), np.arange(ny)) / ny)
    return fx @ values @ fy.T / (nx * ny)


class TestGrid:
    def test_axes(self) -> None:
        xs, ys = grid_axes(UNIT, (4, 2))
        assert jnp.allclose(xs, jnp.array([0.0, 0.25, 0.5, 0.75]))
        assert jnp.allclose(ys, jnp.array([0.0, 0.5]))

    def test_points_order(self) -> None:
        points = grid_points(SYMMETRIC, (2, 2))
        assert jnp.allclose(points, jnp.array([[-1.0, -1.0], [-1.0, 0.0], [0.0, -1.0], [0.0, 0.0]]))

    @pytest.mark.parametrize(
        "f, expected",
        [
            (lambda p: jnp.full(p.shape[0], 3.0), lambda X, Y: jnp.full(X.shape, 3.0)),
            (lambda p: p[:, 0], lambda X, Y: X),
            (lambda p: jnp.cos(2.0 * math.pi * p[:, 1]), lambda X, Y: jnp.cos(2.0 * math.pi * Y)),
        ],
    )
    def test_sample_on_grid(self, f, expected) -> None:
        field = sample_on_grid(f, UNIT, (8, 4))
        X, Y = jnp.meshgrid(*grid_axes(UNIT, (8, 4)), indexing="ij")
        assert field.resolution == (8, 4)
        assert jnp.allclose(field.values, expected(X, Y))

    def test_non_finite_value(self) -> None:
        with pytest.raises(SamplingError):
            sample_on_grid(lambda p: 1.0 / p[:, 0], UNIT, (8, 8))

    @pytest.mark.parametrize("resolution", [(1, 8), (8, 1), (0, 0)])
    def test_invalid_resolution(self, resolution) -> None:
        with pytest.raises(ValueError):
            grid_axes(UNIT, resolution)


class TestTransform:
    @pytest.mark.parametrize(
        "n, expected",
        [
            (4, [0, 1, 2, -1]),
            (5, [0, 1, 2, -2, -1]),
        ],
    )
    def test_frequency_indices(self, n: int, expected) -> None:
        assert frequency_indices(n).tolist() == expected

    def test_constant(self) -> None:
        spectrum = dft2(GridField(values=jnp.full((8, 8), 2.5), domain=UNIT))
        expected = jnp.zeros((8, 8), dtype=complex).at[0, 0].set(2.5)
        assert jnp.allclose(spectrum.coefficients, expected, atol=1e-14)

    def test_single_cosine(self) -> None:
        domain = ((0.0, 2.0 * math.pi), (0.0, 2.0 * math.pi))
        field = sample_on_grid(lambda p: jnp.cos(3.0 * p[:, 0]), domain, (32, 32))
        amplitude = dft2(field).amplitude
        assert jnp.allclose(amplitude[3, 0], 0.5)
        assert jnp.allclose(amplitude[29, 0], 0.5)
        assert jnp.allclose(amplitude.at[3, 0].set(0.0).at[29, 0].set(0.0), 0.0, atol=1e-13)

    @pytest.mark.parametrize("seed", range(20))
    def test_against_direct_sum(self, seed: int) -> None:
        field = random_field(seed, (32, 32))
        expected = direct_dft(np.asarray(field.values))
        assert np.allclose(np.asarray(dft2(field).coefficients), expected, atol=1e-12)

    def test_against_direct_sum_rectangular(self) -> None:
        field = random_field(100, (32, 24))
        expected = direct_dft(np.asarray(field.values))
        assert np.allclose(np.asarray(dft2(field).coefficients), expected, atol=1e-12)

    def test_inverse(self) -> None:
        field = random_field(1, (16, 12))
        assert jnp.allclose(inverse_dft2(dft2(field)).values, field.values, atol=1e-12)

    def test_linearity(self) -> None:
        f, g = random_field(2, (16, 16)), random_field(3, (16, 16))
        combined = dft2(GridField(values=2.0 * f.values - g.values, domain=UNIT)).coefficients
        assert jnp.allclose(combined, 2.0 * dft2(f).coefficients - dft2(g).coefficients, atol=1e-13)

    def test_parseval(self) -> None:
        field = random_field(4, (16, 20))
        power = psd(dft2(field)).values
        assert jnp.allclose(jnp.sum(power), jnp.mean(field.values**2), rtol=1e-12)

    def test_translation_invariance(self) -> None:
        field = random_field(5, (16, 16))
        shifted = GridField(values=jnp.roll(field.values, (3, -5), axis=(0, 1)), domain=UNIT)
        assert jnp.allclose(dft2(shifted).amplitude, dft2(field).amplitude, atol=1e-13)

    def test_psd(self) -> None:
        spectrum = Spectrum(coefficients=jnp.array([[3.0 + 4.0j, 0.0], [0.0, 0.0]]), domain=UNIT)
        assert jnp.allclose(psd(spectrum).values, jnp.array([[25.0, 0.0], [0.0, 0.0]]))
        zero = Spectrum(coefficients=jnp.zeros((4, 4), dtype=complex), domain=UNIT)
        assert jnp.allclose(psd(zero).values, 0.0)

    def test_combine_psd(self) -> None:
        a = GridField(values=jnp.ones((4, 4)), domain=UNIT)
        b = GridField(values=2.0 * jnp.ones((4, 4)), domain=UNIT)
        assert jnp.allclose(combine_psd(a, b).values, 3.0)

    def test_frequencies(self) -> None:
        spectrum = dft2(random_field(0, (8, 8), domain=SYMMETRIC))
        FX, _ = spectrum.cyclic_frequencies()
        WX, _ = spectrum.angular_frequencies()
        assert np.allclose(FX[:, 0], [0.0, 0.5, 1.0, 1.5, 2.0, -1.5, -1.0, -0.5])
        assert np.allclose(WX, 2.0 * math.pi * FX)

    def test_dominant_frequency(self) -> None:
        field = sample_on_grid(lambda p: jnp.cos(2.0 * math.pi * 4.0 * p[:, 0]), UNIT, (32, 32))
        assert dominant_frequency(psd(dft2(field))) == pytest.approx(4.0)


class TestTopModes:
    @pytest.mark.parametrize("domain", [UNIT, SYMMETRIC, ((0.5, 2.5), (-0.25, 0.75))])
    def test_single_cosine(self, domain) -> None:
        length = domain[0][1] - domain[0][0]
        k = 2.0 * math.pi * 3.0 / length
        field = sample_on_grid(lambda p: 2.0 * jnp.cos(k * p[:, 0] + 0.7), domain, (32, 32))
        modes = extract_top_modes(dft2(field), 1)
        assert modes.num_modes == 1
        assert jnp.allclose(modes.frequencies, jnp.array([[k, 0.0]]))
        assert jnp.allclose(modes.amplitudes, jnp.array([1.0]))
        assert modes.scale == pytest.approx(2.0)
        assert jnp.allclose(modes.phases, jnp.array([0.7]), atol=1e-10)
        assert modes.indices.tolist() == [[3, 0]]

    @pytest.mark.parametrize("value, phase", [(3.0, 0.0), (-3.0, math.pi)])
    def test_constant(self, value: float, phase: float) -> None:
        field = GridField(values=jnp.full((8, 8), value), domain=UNIT)
        modes = extract_top_modes(dft2(field), 1)
        assert modes.indices.tolist() == [[0, 0]]
        assert modes.scale == pytest.approx(3.0)
        assert jnp.allclose(modes.phases, jnp.array([phase]))

    def test_two_cosines(self) -> None:
        def f(p):
            x, y = p[:, 0], p[:, 1]
            return 5.0 * jnp.cos(2.0 * math.pi * 2.0 * x) + jnp.cos(2.0 * math.pi * (x + 3.0 * y))

        field = sample_on_grid(f, UNIT, (16, 16))
        first = extract_top_modes(dft2(field), 1)
        assert first.indices.tolist() == [[2, 0]]
        modes = extract_top_modes(dft2(field), 2)
        assert modes.indices.tolist() == [[2, 0], [1, 3]]
        assert jnp.allclose(modes.amplitudes, jnp.array([1.0, 0.2]))
        assert modes.scale == pytest.approx(5.0)
        assert jnp.allclose(modes.phases, 0.0, atol=1e-8)
        assert jnp.allclose(modes.frequencies, 2.0 * math.pi * jnp.array([[2.0, 0.0], [1.0, 3.0]]))

    @pytest.mark.parametrize(
        "resolution, domain",
        [((16, 16), UNIT), ((15, 12), SYMMETRIC), ((8, 9), ((0.5, 2.5), (-0.25, 0.75)))],
    )
    def test_reconstruction(self, resolution, domain) -> None:
        field = random_field(7, resolution, domain)
        spectrum = dft2(field)
        modes = extract_top_modes(spectrum, int(non_redundant_mask(spectrum).sum()))
        rebuilt = modes.evaluate(grid_points(domain, resolution)).reshape(resolution)
        assert jnp.allclose(rebuilt, field.values, atol=1e-10)

    def test_no_conjugate_pairs(self) -> None:
        field = random_field(8, (12, 12))
        spectrum = dft2(field)
        modes = extract_top_modes(spectrum, 70)
        selected = {(kx % 12, ky % 12) for kx, ky in modes.indices.tolist()}
        assert len(selected) == 70
        for kx, ky in selected:
            partner = ((-kx) % 12, (-ky) % 12)
            assert partner == (kx, ky) or partner not in selected

    def test_descending_amplitudes(self) -> None:
        modes = extract_top_modes(dft2(random_field(9, (16, 16))), 20)
        assert jnp.all(jnp.diff(modes.amplitudes) <= 0.0)
        assert jnp.all(jnp.abs(modes.phases) <= math.pi)

    @pytest.mark.parametrize("n_f", [0, 1000])
    def test_invalid_count(self, n_f: int) -> None:
        with pytest.raises(ValueError):
            extract_top_modes(dft2(random_field(0, (8, 8))), n_f)


class TestFrequencySampling:
    def test_normalize_psd(self) -> None:
        power = GridField(values=jnp.array([[1.0, 3.0], [0.0, 0.0]]), domain=UNIT)
        distribution = normalize_psd(power)
        assert jnp.allclose(distribution.probabilities, jnp.array([0.25, 0.75, 0.0, 0.0]))
        assert distribution.support.shape == (4, 2)
        assert jnp.allclose(distribution.support[1], jnp.array([0.0, 1.0]))

    def test_normalize_random_psd(self) -> None:
        power = psd(dft2(random_field(3, (16, 16))))
        assert jnp.allclose(jnp.sum(normalize_psd(power).probabilities), 1.0, atol=1e-12)

    def test_uniform(self) -> None:
        distribution = uniform_distribution(UNIT, (4, 4))
        assert jnp.allclose(distribution.probabilities, 1.0 / 16.0)

    def test_degenerate(self) -> None:
        with pytest.raises(DegenerateResidualError):
            normalize_psd(GridField(values=jnp.zeros((4, 4)), domain=UNIT))

    def test_negative(self) -> None:
        with pytest.raises(ValueError):
            normalize_psd(GridField(values=jnp.array([[1.0, -1.0], [0.0, 0.0]]), domain=UNIT))

    def test_concentrated(self) -> None:
        support = jnp.array([[0.0, 0.0], [3.0, 1.0], [1.0, 1.0]])
        distribution = FrequencyDistribution(support=support, probabilities=jnp.array([0.0, 1.0, 0.0]))
        samples = sample_frequencies(distribution, 50, seed=0)
        assert jnp.allclose(samples, jnp.array([3.0, 1.0]))

    def test_two_point(self) -> None:
        distribution = FrequencyDistribution(
            support=jnp.array([[0.0, 0.0], [1.0, 0.0]]), probabilities=jnp.array([0.5, 0.5])
        )
        samples = sample_frequencies(distribution, 100_000, seed=1)
        assert abs(float(jnp.mean(samples[:, 0])) - 0.5) < 0.01

    def test_total_variation(self) -> None:
        weights = jax.random.uniform(jax.random.PRNGKey(2), (64,))
        probabilities = weights / jnp.sum(weights)
        support = jnp.stack([jnp.arange(64.0), jnp.zeros(64)], axis=-1)
        samples = sample_frequencies(FrequencyDistribution(support, probabilities), 100_000, seed=3)
        counts = np.bincount(np.asarray(samples[:, 0]).astype(int), minlength=64)
        tv = 0.5 * np.sum(np.abs(counts / counts.sum() - np.asarray(probabilities)))
        assert tv <= 0.02

    def test_determinism(self) -> None:
        distribution = normalize_psd(psd(dft2(random_field(4, (8, 8)))))
        first = sample_frequencies(distribution, 32, seed=5)
        assert jnp.array_equal(first, sample_frequencies(distribution, 32, seed=5))
        assert not jnp.array_equal(first, sample_frequencies(distribution, 32, seed=6))

    def test_invalid_count(self) -> None:
        with pytest.raises(ValueError):
            sample_frequencies(uniform_distribution(UNIT, (4, 4)), 0, seed=0)


class TestRFFLayer:
    def test_single_frequency(self) -> None:
        B, b = build_rff_layer([[0.0, 0.0]], seed=0)
        assert jnp.allclose(B, jnp.zeros((1, 2)))
        assert b.shape == (1,)
        assert 0.0 <= float(b[0]) < 2.0 * math.pi

    def test_draw_order(self) -> None:
        freqs = jnp.array([[1.0, 0.0], [0.0, 2.0], [3.0, 3.0]])
        B, b = build_rff_layer(freqs, seed=1)
        assert jnp.array_equal(B, freqs)
        assert b.shape == (3,)

    def test_phase_distribution(self) -> None:
        _, b = build_rff_layer(jnp.zeros((100_000, 2)), seed=2)
        assert jnp.all((b >= 0.0) & (b < 2.0 * math.pi))
        assert abs(float(jnp.mean(b)) - math.pi) < 0.02

    def test_empty(self) -> None:
        with pytest.raises(ValueError):
            build_rff_layer(jnp.zeros((0, 2)), seed=0)
