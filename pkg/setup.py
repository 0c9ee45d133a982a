#!/usr/bin/env python

"""The setup script."""

from setuptools import find_packages, setup

with open("README.rst") as readme_file:
    readme = readme_file.read()

with open("HISTORY.rst") as history_file:
    history = history_file.read()

requirements = [
    "Click>=7.0",
    "tqdm>=4.6",
    "frozendict>=2.3",
    "jax>=0.4.30",
    "flax>=0.8",
    "optax>=0.2.3",
    "pydantic>=2.0",
    "pandas>=1.5.3",
    "scipy>=1.10",
]

test_requirements = [
    "pytest>=3",
]

_dict = {}
with open("specpinn/_version.py") as f:
    exec(f.read(), _dict)
__version__ = _dict["__version__"]

setup(
    author="Specpinn Developers",
    author_email="specpinn@users.noreply.github.com",
    python_requires=">=3.9",
    classifiers=[
        "Development Status :: 2 - Pre-Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: GNU General Public License v3 (GPLv3)",
        "Natural Language :: English",
        "Programming Language :: Python :: 3.9",
    ],
    description="Spectral-prior guided multistage physics-informed neural networks, based on JAX.",
    entry_points={
        "console_scripts": [
            "specpinn=specpinn.cli:main",
        ],
    },
    install_requires=requirements,
    license="GNU General Public License v3",
    long_description=readme + "\n\n" + history,
    include_package_data=True,
    keywords="specpinn",
    name="specpinn",
    packages=find_packages(include=["specpinn", "specpinn.*"]),
    test_suite="tests",
    tests_require=test_requirements,
    version=__version__,
    zip_safe=False,
)
