"""Build script: compiles the Cython kernel module.

The package works without the extension (pure-Python kernels are selected at
import time when the compiled module is missing), but the default build
compiles it. `pip install -e . --no-build-isolation` is the intended dev install.
"""
from setuptools import setup
from Cython.Build import cythonize

setup(
    ext_modules=cythonize(
        ["src/snarklab/kernels/_cyk.pyx"],
        language_level=3,
        compiler_directives={
            "boundscheck": False,
            "wraparound": False,
            "initializedcheck": False,
            "cdivision": True,
        },
    ),
)
