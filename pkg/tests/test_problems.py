import os

os.environ["JAX_PLATFORM_NAME"] = "cpu"

import math

import jax
import jax.numpy as jnp
import numpy as np
import pytest
from pydantic import ValidationError

from specpinn.autodiff import eval_with_derivatives
from specpinn.problems.burgers import SERIES_MIN_CONDITION, _cole_hopf_series, _hermite_reference
from specpinn.problems import (
    EPSILON_0,
    BurgersProblem,
    HelmholtzProblem,
    ProblemConfig,
    abc_residual,
    burgers_condition_target,
    burgers_conditions,
    burgers_reference,
    burgers_residual,
    helmholtz_reference,
    helmholtz_residual,
    mie_coefficients,
    mie_laplacian,
    mie_solution,
    permittivity,
)
from specpinn.spectral import grid_points

SHARP_VISCOSITY = 0.01 / math.pi


def polar(points: np.ndarray):
    points = np.asarray(points)
    return np.hypot(points[:, 0], points[:, 1]), np.arctan2(points[:, 1], points[:, 0])


class TestBurgersEquation:
    @pytest.mark.parametrize(
        "args, expected",
        [
            ((0.0, 0.0, 0.0, 0.0, 1.0), 0.0),
            ((1.0, 0.0, 1.0, 0.0, 1.0), 1.0),
            ((0.0, 0.0, 0.0, 1.0, 0.5), -0.5),
            ((2.0, 1.0, 3.0, 4.0, 0.25), 6.0),
        ],
    )
    def test_residual(self, args, expected: float) -> None:
        assert burgers_residual(*args) == pytest.approx(expected)

    @pytest.mark.parametrize(
        "x, t, expected",
        [
            (0.0, 0.0, 0.0),
            (0.5, 0.0, -1.0),
            (-0.5, 0.0, 1.0),
            (-1.0, 0.3, 0.0),
            (1.0, 0.0, 0.0),
        ],
    )
    def test_condition_target(self, x: float, t: float, expected: float) -> None:
        assert float(burgers_condition_target(x, t)) == pytest.approx(expected, abs=1e-15)

    def test_conditions(self) -> None:
        x, t = np.array([0.5, 1.0]), np.array([0.0, 0.7])
        assert np.allclose(burgers_conditions(x, t, np.array([-1.0, 0.25])), [0.0, 0.25])

    def test_condition_off_set(self) -> None:
        with pytest.raises(ValueError):
            burgers_condition_target(0.2, 0.5)


class TestBurgersReference:
    def test_initial_condition(self) -> None:
        x = np.linspace(-1.0, 1.0, 9)
        assert np.allclose(burgers_reference(x, 0.0, nu=1.0), -np.sin(np.pi * x))

    def test_small_time(self) -> None:
        assert float(burgers_reference(0.5, 1e-8, nu=1.0)) == pytest.approx(-1.0, abs=1e-6)

    @pytest.mark.parametrize("nu", [1.0, SHARP_VISCOSITY])
    def test_odd_symmetry(self, nu: float) -> None:
        x = np.array([0.1, 0.3, 0.6, 0.9])
        t = np.array([0.25, 0.5, 0.75, 0.9])
        assert np.allclose(burgers_reference(-x, t, nu), -burgers_reference(x, t, nu), atol=1e-12)
        assert np.allclose(burgers_reference(0.0, t, nu), 0.0, atol=1e-12)

    def test_sharp_bounds(self) -> None:
        X, T = np.meshgrid(np.linspace(-1.0, 1.0, 21), np.linspace(0.0, 1.0, 11))
        values = burgers_reference(X, T, SHARP_VISCOSITY)
        assert values.shape == X.shape
        assert np.all(np.abs(values) <= 1.0 + 1e-9)

    def test_pde_by_finite_differences(self) -> None:
        x = np.array([-0.7, -0.2, 0.3, 0.55, 0.8])
        t = np.array([0.2, 0.35, 0.5, 0.65, 0.8])
        h = 1e-3
        xs = np.concatenate([x, x + h, x - h, x, x])
        ts = np.concatenate([t, t, t, t + h, t - h])
        u, up, um, ut_p, ut_m = np.split(burgers_reference(xs, ts, nu=1.0), 5)
        u_x = (up - um) / (2.0 * h)
        u_xx = (up - 2.0 * u + um) / h**2
        u_t = (ut_p - ut_m) / (2.0 * h)
        assert np.allclose(burgers_residual(u, u_t, u_x, u_xx, 1.0), 0.0, atol=1e-5)

    def test_invalid_arguments(self) -> None:
        with pytest.raises(ValueError):
            burgers_reference(0.0, -0.1, nu=1.0)
        with pytest.raises(ValueError):
            burgers_reference(0.0, 0.5, nu=0.0)

    @pytest.mark.parametrize("resolution", [(32, 32), (64, 64), (128, 64)])
    def test_default_viscosity_grid(self, resolution) -> None:
        X, T = np.meshgrid(
            np.linspace(-1.0, 1.0, resolution[0]), np.linspace(0.0, 1.0, resolution[1])
        )
        values = burgers_reference(X, T, nu=1.0)
        assert values.shape == X.shape
        assert np.all(np.isfinite(values))
        # the sine mode decays like exp(-pi^2 t) once the nonlinearity is negligible
        assert np.all(np.abs(values[-1]) <= np.exp(-np.pi**2 * 0.9))

    @pytest.mark.parametrize("nu", [1.0, 0.1])
    def test_series_matches_quadrature(self, nu: float) -> None:
        x = np.array([-0.8, -0.35, 0.15, 0.45, 0.7])
        t = np.array([0.02, 0.05, 0.1, 0.2, 0.3])
        series, condition = _cole_hopf_series(x, t, nu)
        assert np.all(condition >= SERIES_MIN_CONDITION)
        assert np.allclose(series, _hermite_reference(x, t, nu, tol=1e-11), atol=1e-9)


class TestBurgersProblem:
    problem = BurgersProblem()

    def test_attributes(self) -> None:
        assert self.problem.domain == ((-1.0, 1.0), (0.0, 1.0))
        assert self.problem.num_outputs == 1
        assert self.problem.component_names == ("u",)
        assert self.problem.is_time_dependent

    def test_pytree_static_attributes(self) -> None:
        leaves, treedef = jax.tree_util.tree_flatten(BurgersProblem(viscosity=0.5))
        assert leaves == []
        assert BurgersProblem._get_jit_static_attributes() == ("viscosity", "name")
        assert jax.tree_util.tree_unflatten(treedef, leaves) == BurgersProblem(viscosity=0.5)

    def test_collocation(self) -> None:
        points = self.problem.sample_collocation(100, 80, 30, seed=0)
        assert points.counts == (100, 80, 30)
        assert jnp.all((points.interior[:, 0] >= -1.0) & (points.interior[:, 0] <= 1.0))
        assert jnp.all((points.interior[:, 1] >= 0.0) & (points.interior[:, 1] <= 1.0))
        assert jnp.allclose(jnp.abs(points.boundary[:, 0]), 1.0)
        assert int(jnp.sum(points.boundary[:, 0] < 0.0)) == 40
        assert jnp.allclose(points.boundary_normals[:, 0], jnp.sign(points.boundary[:, 0]))
        assert jnp.allclose(points.initial[:, 1], 0.0)

    def test_collocation_determinism(self) -> None:
        first = self.problem.sample_collocation(10, 6, 4, seed=3)
        second = self.problem.sample_collocation(10, 6, 4, seed=3)
        other = self.problem.sample_collocation(10, 6, 4, seed=4)
        for a, b in zip(first, second):
            assert jnp.array_equal(a, b)
        assert not jnp.array_equal(first.interior, other.interior)

    def test_residuals_of_initial_profile(self) -> None:
        # u = -sin(pi x) exp(-t): exact conditions, residual known in closed form
        def u(p):
            return -jnp.sin(math.pi * p[0]) * jnp.exp(-p[1])

        points = self.problem.sample_collocation(20, 8, 8, seed=1)
        bundle = eval_with_derivatives(u, points.interior)
        x, t = points.interior[:, 0], points.interior[:, 1]
        value = -jnp.sin(math.pi * x) * jnp.exp(-t)
        expected = -value + value * (-math.pi * jnp.cos(math.pi * x) * jnp.exp(-t)) + math.pi**2 * value
        assert jnp.allclose(self.problem.interior_residual(points.interior, bundle)[:, 0], expected)
        initial = eval_with_derivatives(u, points.initial)
        assert jnp.allclose(self.problem.initial_residual(points.initial, initial), 0.0, atol=1e-14)
        boundary = eval_with_derivatives(u, points.boundary)
        residual = self.problem.boundary_residual(points.boundary, points.boundary_normals, boundary)
        assert jnp.allclose(residual, 0.0, atol=1e-14)

    def test_reference_shape(self) -> None:
        points = grid_points(self.problem.domain, (4, 4))
        assert self.problem.reference(points).shape == (16, 1)

    def test_invalid_viscosity(self) -> None:
        with pytest.raises(ValueError):
            BurgersProblem(viscosity=-1.0)


class TestHelmholtzEquation:
    problem = HelmholtzProblem(eps_r=2.0)

    def test_wavenumber(self) -> None:
        assert self.problem.wavenumber == pytest.approx(2.0 * math.pi)
        assert self.problem.interior_wavenumber == pytest.approx(2.0 * math.pi * math.sqrt(2.0))

    @pytest.mark.parametrize(
        "x, y, expected",
        [
            (0.0, 0.0, 2.0 * EPSILON_0),
            (0.9, 0.9, EPSILON_0),
            (0.25, 0.0, 2.0 * EPSILON_0),
            (0.0, -0.3, EPSILON_0),
        ],
    )
    def test_permittivity(self, x: float, y: float, expected: float) -> None:
        assert float(permittivity(x, y, self.problem)) == pytest.approx(expected)

    def test_zero_field(self) -> None:
        residual = helmholtz_residual(jnp.zeros((5, 2)), jnp.zeros((5, 2)), jnp.zeros(5), jnp.zeros(5), self.problem)
        assert jnp.allclose(residual, 0.0)

    def test_plane_wave_outside_disk(self) -> None:
        k = self.problem.wavenumber
        x = jnp.array([0.5, -0.8, 0.9])
        y = jnp.array([0.5, 0.1, -0.9])
        fields = jnp.stack([jnp.cos(k * x), jnp.zeros_like(x)], axis=-1)
        laplacians = jnp.stack([-(k**2) * jnp.cos(k * x), jnp.zeros_like(x)], axis=-1)
        assert jnp.allclose(helmholtz_residual(fields, laplacians, x, y, self.problem), 0.0, atol=1e-12)

    @pytest.mark.parametrize("x, y", [(1.0, 0.3), (-1.0, -0.6), (0.2, 1.0), (-0.7, -1.0), (1.0, 1.0)])
    def test_abc_incident_field(self, x: float, y: float) -> None:
        k = self.problem.wavenumber
        normal_x = 1.0 if x == 1.0 else (-1.0 if x == -1.0 else 0.0)
        fields = jnp.array([-math.cos(k * x), 0.0])
        normal_derivatives = jnp.array([normal_x * k * math.sin(k * x), 0.0])
        residual = abc_residual(fields, normal_derivatives, jnp.array(x), jnp.array(y), self.problem)
        assert jnp.allclose(residual, 0.0, atol=1e-12)

    def test_abc_zero_field(self) -> None:
        k = self.problem.wavenumber
        residual = abc_residual(jnp.zeros(2), jnp.zeros(2), jnp.array(0.0), jnp.array(1.0), self.problem)
        assert jnp.allclose(residual, jnp.array([0.0, -k]))

    def test_abc_off_boundary(self) -> None:
        with pytest.raises(ValueError):
            abc_residual(jnp.zeros(2), jnp.zeros(2), jnp.array(0.0), jnp.array(0.5), self.problem)


class TestMieSeries:
    def test_coefficients_without_scatterer(self) -> None:
        alpha, beta = mie_coefficients(HelmholtzProblem(eps_r=1.0))
        assert np.allclose(alpha, 0.0, atol=1e-14)
        assert np.allclose(beta, 1.0, atol=1e-12)

    def test_plane_wave_without_scatterer(self) -> None:
        problem = HelmholtzProblem(eps_r=1.0)
        points = np.asarray(grid_points(problem.domain, (64, 64)))
        r, theta = polar(points)
        field = mie_solution(r, theta, problem)
        expected = np.exp(1j * problem.wavenumber * points[:, 0])
        error = np.hypot(field.E_rz - expected.real, field.E_iz - expected.imag)
        assert np.linalg.norm(error) / np.linalg.norm(np.abs(expected)) <= 1e-8

    def test_interface_continuity(self) -> None:
        problem = HelmholtzProblem(eps_r=1.5, n_trunc=15)
        theta = np.linspace(-np.pi, np.pi, 37)
        inside = mie_solution(np.full_like(theta, problem.radius * (1.0 - 1e-12)), theta, problem)
        outside = mie_solution(np.full_like(theta, problem.radius * (1.0 + 1e-12)), theta, problem)
        assert np.allclose(inside.E_rz, outside.E_rz, atol=1e-6)
        assert np.allclose(inside.E_iz, outside.E_iz, atol=1e-6)

    def test_truncation_convergence(self) -> None:
        r = np.linspace(0.01, 0.5, 25)
        theta = np.linspace(-3.0, 3.0, 25)
        coarse = mie_solution(r, theta, HelmholtzProblem(eps_r=1.5, n_trunc=15))
        fine = mie_solution(r, theta, HelmholtzProblem(eps_r=1.5, n_trunc=20))
        assert np.allclose(coarse.E_rz, fine.E_rz, atol=1e-8)
        assert np.allclose(coarse.E_iz, fine.E_iz, atol=1e-8)

    @pytest.mark.parametrize("eps_r", [1.0, 1.5, 2.0])
    def test_analytic_laplacian(self, eps_r: float) -> None:
        problem = HelmholtzProblem(eps_r=eps_r)
        points = np.asarray(jax.random.uniform(jax.random.PRNGKey(0), (200, 2), minval=-1.0, maxval=1.0))
        r, theta = polar(points)
        keep = (np.abs(r - problem.radius) > 1e-3) & (r > 1e-3)
        points, r, theta = points[keep], r[keep], theta[keep]
        fields = np.stack(mie_solution(r, theta, problem), axis=-1)
        laplacians = np.stack(mie_laplacian(r, theta, problem), axis=-1)
        residual = helmholtz_residual(fields, laplacians, points[:, 0], points[:, 1], problem)
        assert np.allclose(residual, 0.0, atol=1e-9)

    def test_finite_difference_laplacian(self) -> None:
        problem = HelmholtzProblem(eps_r=1.5)
        h = 5e-3
        points = np.array([[0.1, 0.05], [-0.5, 0.3], [0.7, -0.6], [0.0, 0.9], [-0.12, -0.1]])
        shifts = [np.zeros(2), np.array([h, 0.0]), np.array([-h, 0.0]), np.array([0.0, h]), np.array([0.0, -h])]
        values = []
        for shift in shifts:
            r, theta = polar(points + shift)
            values.append(np.stack(mie_solution(r, theta, problem), axis=-1))
        center = values[0]
        laplacians = (sum(values[1:]) - 4.0 * center) / h**2
        residual = helmholtz_residual(center, laplacians, points[:, 0], points[:, 1], problem)
        scale = problem.interior_wavenumber**2 * np.max(np.abs(center))
        assert np.all(np.abs(residual) <= 1e-3 * scale)

    def test_reference_without_scatterer(self) -> None:
        problem = HelmholtzProblem(eps_r=1.0)
        points = np.asarray(grid_points(problem.domain, (32, 32)))
        reference = helmholtz_reference(points[:, 0], points[:, 1], problem)
        assert np.allclose(reference.E_rz, -np.cos(problem.wavenumber * points[:, 0]), atol=1e-10)
        assert np.allclose(reference.E_iz, 0.0, atol=1e-10)

    def test_reference_symmetry(self) -> None:
        # the -cos(kx) excitation and the disk are both even in x and y
        problem = HelmholtzProblem(eps_r=2.0)
        x, y = np.array([0.3, 0.7, 0.1]), np.array([0.2, -0.4, 0.9])
        first = helmholtz_reference(x, y, problem)
        mirrored = helmholtz_reference(-x, -y, problem)
        assert np.allclose(first.E_rz, mirrored.E_rz, atol=1e-10)
        assert np.allclose(first.E_iz, mirrored.E_iz, atol=1e-10)


class TestHelmholtzProblem:
    problem = HelmholtzProblem(eps_r=1.0)

    def test_collocation(self) -> None:
        points = self.problem.sample_collocation(200, 80, 10, seed=2)
        assert points.counts == (200, 80, 0)
        on_x = jnp.isclose(jnp.abs(points.boundary[:, 0]), 1.0)
        on_y = jnp.isclose(jnp.abs(points.boundary[:, 1]), 1.0)
        assert jnp.all(on_x | on_y)
        assert int(jnp.sum(on_x)) == 40
        assert jnp.allclose(jnp.linalg.norm(points.boundary_normals, axis=-1), 1.0)

    def test_plane_wave_residuals(self) -> None:
        k = self.problem.wavenumber

        def u(p):
            return jnp.stack([-jnp.cos(k * p[0]), 0.0 * p[1]])

        points = self.problem.sample_collocation(50, 40, 0, seed=0)
        interior = eval_with_derivatives(u, points.interior)
        assert jnp.allclose(self.problem.interior_residual(points.interior, interior), 0.0, atol=1e-10)
        boundary = eval_with_derivatives(u, points.boundary)
        residual = self.problem.boundary_residual(points.boundary, points.boundary_normals, boundary)
        assert jnp.allclose(residual, 0.0, atol=1e-10)
        assert self.problem.initial_residual(points.initial, interior).shape == (0, 0)

    def test_reference_shape(self) -> None:
        assert self.problem.reference(grid_points(self.problem.domain, (4, 4))).shape == (16, 2)

    @pytest.mark.parametrize(
        "kwargs", [{"eps_r": 0.5}, {"mu_r": 2.0}, {"radius": 1.5}, {"frequency": -1.0}, {"n_trunc": 0}]
    )
    def test_invalid(self, kwargs: dict) -> None:
        with pytest.raises(ValueError):
            HelmholtzProblem(**kwargs)


class TestProblemConfig:
    def test_burgers(self) -> None:
        cfg = ProblemConfig(name="burgers", viscosity=0.5)
        problem = cfg.create_problem()
        assert isinstance(problem, BurgersProblem)
        assert problem.viscosity == 0.5
        assert cfg.label == "burgers-nu0.5"

    def test_helmholtz(self) -> None:
        cfg = ProblemConfig(name="helmholtz", eps_r=1.5)
        problem = cfg.create_problem()
        assert isinstance(problem, HelmholtzProblem)
        assert problem.eps_r == 1.5
        assert cfg.label == "helmholtz-eps1.5"

    @pytest.mark.parametrize(
        "kwargs", [{"name": "poisson"}, {"viscosity": 0.0}, {"eps_r": 0.9}, {"n_trunc": 100}]
    )
    def test_invalid(self, kwargs: dict) -> None:
        with pytest.raises(ValidationError):
            ProblemConfig(**kwargs)
