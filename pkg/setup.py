"""Build script for the compiled prediction kernels.

The package works without the extension (a numpy fallback is selected at
import time); building it just makes the lattice sweeps faster.
"""
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    extensions = cythonize(
        [
            Extension(
                "jroc._backend._kernels",
                ["src/jroc/_backend/_kernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
else:
    extensions = []

setup(ext_modules=extensions)
