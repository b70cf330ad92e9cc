import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("NLSPECTRA_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("nlspectra._core", ["src/nlspectra/_core.pyx"])],
            language_level="3",
        )
    except ImportError:
        # pure-Python fallback is selected at import time
        ext_modules = []

setup(ext_modules=ext_modules)
