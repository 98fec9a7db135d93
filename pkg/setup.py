"""Build the optional Cython elimination kernels.

The package works without them: ``ophh._kernels_py`` is used when the
compiled module cannot be imported.
"""
import os

from setuptools import setup

ext_modules = []
if os.environ.get("OPHH_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "ophh._kernels",
                    ["src/ophh/_kernels.pyx"],
                    language="c++",
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
