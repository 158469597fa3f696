"""Build script: compiles the optional Cython summation kernels.

The package works without the extension (a NumPy fallback is selected at
import time), so a failed compile is not fatal for development installs:
run with DISTVERSA_SKIP_EXT=1 to skip the extension entirely.
"""

import os

import numpy
from setuptools import Extension, setup

if os.environ.get("DISTVERSA_SKIP_EXT"):
    setup()
else:
    from Cython.Build import cythonize

    extensions = [
        Extension(
            "distversa._kernels._native",
            ["src/distversa/_kernels/_native.pyx"],
            include_dirs=[numpy.get_include()],
            extra_compile_args=["-O3"],
        )
    ]
    setup(
        ext_modules=cythonize(
            extensions,
            compiler_directives={"language_level": "3"},
        )
    )
