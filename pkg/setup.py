import os

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install
    cythonize = None

ext_modules = []
if cythonize is not None and not os.environ.get("BROOKSLAB_NO_EXT"):
    ext_modules = cythonize(
        [Extension("brookslab._kernels", ["src/brookslab/_kernels.pyx"], extra_compile_args=["-O3"])],
        language_level="3",
    )

setup(ext_modules=ext_modules)
