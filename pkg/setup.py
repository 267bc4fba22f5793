"""Build script: compiles the optional native kernel extension.

The package is fully functional without the extension (a pure-Python
implementation of the same kernels is selected at import time), so any
failure to cythonize degrades to a pure build instead of aborting.
"""

from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/tsix/_kernels/_native.pyx",
        compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
