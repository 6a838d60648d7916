from setuptools import Extension, setup

try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "quadgor._rrefcore",
                ["src/quadgor/_rrefcore.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        language_level="3",
    )
except ImportError:
    # Pure-Python/numpy fallback is selected at import time in quadgor.linalg.
    ext_modules = []

setup(ext_modules=ext_modules)
