"""Build script: compiles the optional Cython kernel module.

The package works without the extension (a numpy fallback is selected at
import time), so a failed compile is downgraded to a warning rather than
aborting the install.

-ffp-contract=off matters: the numpy and C kernels must produce
bit-identical floats, and fused multiply-add would silently change
rounding on hardware that supports it.
"""

import sys

from setuptools import Extension, setup

ext_modules = []
try:
    import numpy as np
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "metade._kernels_cy",
                ["src/metade/_kernels_cy.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3", "-ffp-contract=off"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - machines without a toolchain
    sys.stderr.write(f"metade: skipping Cython extension ({exc}); numpy fallback will be used\n")

setup(ext_modules=ext_modules)
