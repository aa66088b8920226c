"""Build script. The compiled kernel is optional: if Cython is missing the
package installs anyway and falls back to the pure-Python evaluator."""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/maclane/_speedups.pyx"],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
