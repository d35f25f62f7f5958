import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("SRAK_PURE"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("srak.coeffs._kernel_cy", ["src/srak/coeffs/_kernel_cy.pyx"])],
            language_level=3,
        )
    except ImportError:
        # No Cython: the pure-Python kernel is selected at import time.
        ext_modules = []

setup(ext_modules=ext_modules)
