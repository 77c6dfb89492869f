"""Builds the optional Cython kernels; the package falls back to pure Python without them."""

from setuptools import setup

try:
    import numpy as np
    from Cython.Build import cythonize
    from setuptools import Extension
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "schmidt_lab._kernels._ckernels",
                ["src/schmidt_lab/_kernels/_ckernels.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
