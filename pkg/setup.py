"""Build hook for the optional compiled search kernel.

The package is pure Python; the Cython extension only accelerates the
isotropic-vector search. A missing compiler or Cython degrades to the
pure fallback selected at import time.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "quatgenus._fastkernel",
                ["src/quatgenus/_fastkernel.pyx"],
                optional=True,
            )
        ],
        language_level=3,
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
