"""Build script: compiles the float-kernel extension when Cython and a C
compiler are available, otherwise installs pure Python only (the package
falls back to haraeq._kernels_py at import time)."""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("haraeq._kernels", ["src/haraeq/_kernels.pyx"])],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
