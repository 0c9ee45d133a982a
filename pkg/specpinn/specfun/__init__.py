from specpinn.specfun.bessel import (
    MAX_ORDER,
    SpecialFunctionError,
    bessel_deriv,
    bessel_j,
    bessel_second_deriv,
    bessel_y,
    hankel1,
)

__all__ = [
    "MAX_ORDER",
    "SpecialFunctionError",
    "bessel_j",
    "bessel_y",
    "hankel1",
    "bessel_deriv",
    "bessel_second_deriv",
]
