"""Build script for the optional compiled kernel backend.

The package is fully functional without the extension (a pure NumPy/Python
backend is selected at import time).  Building the extension speeds up the
state-space minimizers and the Monte Carlo sampler:

    python setup.py build_ext --inplace

Requires Cython and a C compiler.  Set JMENTROPY_NO_EXT=1 to skip the
extension entirely (pure-Python install).
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Build the speedup extension if possible, warn and continue if not."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            print(f"WARNING: compiled kernels skipped ({exc}); "
                  f"the pure-Python backend will be used")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"WARNING: building {ext.name} failed ({exc}); "
                  f"the pure-Python backend will be used")


ext_modules = []
cmdclass = {}
if not os.environ.get("JMENTROPY_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        extensions = [
            Extension(
                "jmentropy._kernels._speedups",
                ["src/jmentropy/_kernels/_speedups.pyx"],
                extra_compile_args=["-O3"],
            )
        ]
        ext_modules = cythonize(
            extensions,
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
        cmdclass = {"build_ext": optional_build_ext}

setup(ext_modules=ext_modules, cmdclass=cmdclass)
