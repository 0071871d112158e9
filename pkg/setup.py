"""Build script: compiles the optional Cython kernel extension when possible.

A plain ``pip install .`` works without Cython or a C compiler; the package
then falls back to the NumPy kernel implementations at import time.
"""

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "biflogis.kernels._native",
                ["src/biflogis/kernels/_native.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # No Cython available: install pure-python only.
    pass

setup(ext_modules=ext_modules)
