"""Build script: compiles the optional propagation kernel.

The package works without the extension (a pure-numpy backend is selected at
import time); building it just makes ensembles faster.
"""

from setuptools import Extension, setup
from Cython.Build import cythonize

extensions = [
    Extension(
        "ddmagsim.engine._kernel",
        ["src/ddmagsim/engine/_kernel.pyx"],
        extra_compile_args=["-O3"],
    )
]

setup(ext_modules=cythonize(extensions, language_level=3))
