"""Builds the optional Cython split-search kernel.

The package works without the extension: sarcalab.kernels falls back to a
vectorized numpy implementation when the compiled module is absent.
"""

from setuptools import setup

try:
    import numpy as np
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "sarcalab.kernels._split_c",
                ["src/sarcalab/kernels/_split_c.pyx"],
                include_dirs=[np.get_include()],
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
