"""Build script: compiles the optional Monte Carlo kernel extension.

The package is fully functional without the extension (a NumPy fallback is
selected at import time), so any failure to cythonize or compile degrades
to a pure-Python build instead of aborting the install.
"""

from setuptools import setup


def _extensions():
    try:
        import numpy
        from Cython.Build import cythonize
    except ImportError:
        return []
    try:
        return cythonize(
            "src/homsim/mc/_kernel.pyx",
            compiler_directives={"language_level": "3"},
            include_path=[numpy.get_include()],
        )
    except Exception:
        return []


def _include_dirs():
    try:
        import numpy

        return [numpy.get_include()]
    except ImportError:
        return []


ext_modules = _extensions()
for ext in ext_modules:
    ext.include_dirs.extend(_include_dirs())

setup(ext_modules=ext_modules)
