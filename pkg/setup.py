import sys

import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None and "--pure-python" not in sys.argv:
    ext_modules = cythonize(
        [
            Extension(
                "curvtopo._kernels",
                ["src/curvtopo/_kernels.pyx"],
                include_dirs=[np.get_include()],
                language="c++",
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": 3},
    )
if "--pure-python" in sys.argv:
    sys.argv.remove("--pure-python")

setup(ext_modules=ext_modules)
