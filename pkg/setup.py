"""Builds the optional compiled search kernel.

If Cython or a C compiler is unavailable the package installs without it
and falls back to the pure-Python kernel at import time.
"""

import os

from setuptools import setup

ext_modules = []
if not os.environ.get("PCSP_ADJOINT_PURE"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "pcsp_adjoint._search_ext",
                    ["src/pcsp_adjoint/_search_ext.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
