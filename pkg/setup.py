"""Build script: compiles the optional fast kernel extension.

The package works without the extension (a pure-Python twin is selected
at import time); the build simply skips it when Cython is unavailable.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("qeuler._altsum_cy", ["src/qeuler/_altsum_cy.pyx"])],
        language_level="3",
    )

setup(ext_modules=ext_modules)
