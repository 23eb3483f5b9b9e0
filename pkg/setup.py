"""Build the optional compiled kernels.

The package works without them (itn._backend falls back to the pure-Python
kernels), so a missing Cython or C compiler must not break installation.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    # -ffp-contract=off: the pure-Python fallback must produce bit-identical
    # floats; FMA contraction would change rounding in the EM accumulator.
    extensions = cythonize(
        [
            Extension(
                "itn._kernels_c",
                ["src/itn/_kernels_c.pyx"],
                extra_compile_args=["-O2", "-ffp-contract=off"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
