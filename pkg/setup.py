"""Build the optional Cython tableau kernel.

The extension is marked optional: if no compiler is available the package
installs without it and falls back to the pure-Python kernel at import time.

    pip install -e . --no-build-isolation
    python setup.py build_ext --inplace
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pragma: no cover
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "gptlab._kernels._ctableau",
                ["src/gptlab/_kernels/_ctableau.pyx"],
                extra_compile_args=["-O2"],
                optional=True,
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
        },
    )

setup(ext_modules=ext_modules)
