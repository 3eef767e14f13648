"""Builds the optional compiled closure kernel.

The package is fully functional without it: fuzzonto.closure falls back to
the pure-Python kernel when the extension is absent.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("fuzzonto._closure_cy", ["src/fuzzonto/_closure_cy.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
