"""Build script: compiles the optional elimination kernel.

The package is pure Python except for raywitt._echelon, a Cython
translation of raywitt._echelon_py.  If Cython or a C compiler is
missing (or RAYWITT_SKIP_EXT=1 is set) the install proceeds without it
and the pure-Python kernel is used at runtime.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("RAYWITT_SKIP_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("raywitt._echelon", ["src/raywitt/_echelon.pyx"])],
            language_level="3",
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
