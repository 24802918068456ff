"""Build script for the optional compiled kernel extension.

The package works without the extension: adspeech._kernels falls back to
pure-numpy implementations when the compiled module is missing.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "adspeech._kernels._core",
                ["src/adspeech/_kernels/_core.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
