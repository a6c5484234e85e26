"""Build script.

The gate kernels have a compiled variant (src/qtm/_kernels_c.pyx). If Cython
is not available the build still succeeds and the package falls back to the
numpy kernels at import time.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("qtm._kernels_c", ["src/qtm/_kernels_c.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
