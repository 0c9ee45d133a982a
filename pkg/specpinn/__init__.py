"""
Specpinn is a Python library on basis of Google JAX for solving partial differential
equations with multistage physics-informed neural networks. Each correction stage
is initialized from the spectrum of the residual left by the previous stages,
either with its dominant Fourier modes or with frequencies sampled from its
power spectral density.
"""

import os

os.environ["JAX_ENABLE_X64"] = "1"  # enable double precision
os.environ["XLA_PYTHON_CLIENT_PREALLOCATE"] = "false"  # disable memory preallocation

import jax  # noqa: E402

from specpinn._version import __version__ as version  # noqa: E402

jax.config.update("jax_enable_x64", True)

__author__ = """Specpinn Developers"""
__email__ = "specpinn@users.noreply.github.com"
__version__ = version
