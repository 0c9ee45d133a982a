from specpinn.problems.base import CollocationPoints, OracleError, ProblemInterface
from specpinn.problems.burgers import (
    BURGERS_DOMAIN,
    BurgersProblem,
    burgers_condition_target,
    burgers_conditions,
    burgers_reference,
    burgers_residual,
)
from specpinn.problems.helmholtz import (
    EPSILON_0,
    HELMHOLTZ_DOMAIN,
    SPEED_OF_LIGHT,
    FieldPair,
    HelmholtzProblem,
    abc_residual,
    helmholtz_reference,
    helmholtz_residual,
    mie_coefficients,
    mie_laplacian,
    mie_solution,
    permittivity,
    relative_permittivity,
)
from specpinn.problems.settings import ProblemConfig

__all__ = [
    "CollocationPoints",
    "OracleError",
    "ProblemInterface",
    "ProblemConfig",
    "BURGERS_DOMAIN",
    "BurgersProblem",
    "burgers_residual",
    "burgers_condition_target",
    "burgers_conditions",
    "burgers_reference",
    "HELMHOLTZ_DOMAIN",
    "SPEED_OF_LIGHT",
    "EPSILON_0",
    "FieldPair",
    "HelmholtzProblem",
    "helmholtz_residual",
    "abc_residual",
    "mie_coefficients",
    "mie_solution",
    "mie_laplacian",
    "helmholtz_reference",
    "permittivity",
    "relative_permittivity",
]
