"""Build script for the optional Cython kernel extension.

The package works without the extension (a pure-numpy fallback is selected
at import time); set RISCE_NO_EXT=1 to skip compiling it.
"""

import os

from setuptools import Extension, setup

if os.environ.get("RISCE_NO_EXT"):
    setup()
else:
    import numpy as np
    from Cython.Build import cythonize

    extensions = [
        Extension(
            "risce._kernels",
            ["src/risce/_kernels.pyx"],
            include_dirs=[np.get_include()],
            define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            extra_compile_args=["-O3"],
        )
    ]
    setup(
        ext_modules=cythonize(
            extensions, compiler_directives={"language_level": 3}
        )
    )
