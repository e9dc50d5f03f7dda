from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
    ext_modules = cythonize(
        [
            Extension(
                "dlsimon._corekernel",
                ["src/dlsimon/_corekernel.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    # Pure-python install still works; kernels.py falls back to numpy.
    ext_modules = []

setup(ext_modules=ext_modules)
