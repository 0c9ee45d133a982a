from typing import Literal, Union

from pydantic import Field

from specpinn.config import _CFG
from specpinn.problems.burgers import BurgersProblem
from specpinn.problems.helmholtz import HelmholtzProblem

ProblemName = Literal["burgers", "helmholtz"]


class ProblemConfig(_CFG):
    """Problem selector and parameters; fields of the other problem are ignored."""

    name: ProblemName = "burgers"
    viscosity: float = Field(1.0, gt=0.0)
    frequency: float = Field(3.0e8, gt=0.0)
    eps_r: float = Field(1.0, ge=1.0)
    radius: float = Field(0.25, gt=0.0, lt=1.0)
    n_trunc: int = Field(30, ge=1, le=55)

    def create_problem(self) -> Union[BurgersProblem, HelmholtzProblem]:
        if self.name == "burgers":
            return BurgersProblem(viscosity=self.viscosity)
        return HelmholtzProblem(
            frequency=self.frequency,
            eps_r=self.eps_r,
            radius=self.radius,
            n_trunc=self.n_trunc,
        )

    @property
    def label(self) -> str:
        """Short run label, e.g. ``helmholtz-eps1.5``."""
        if self.name == "helmholtz":
            return f"helmholtz-eps{self.eps_r:g}"
        return f"burgers-nu{self.viscosity:.4g}"
