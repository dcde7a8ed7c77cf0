import numpy as np
from Cython.Build import cythonize
from setuptools import Extension, setup

# Compiled inner-loop kernels (1-D convolution and max-pool forward/backward).
# The package falls back to the numpy implementation if this extension is
# missing, so a failed build only costs speed.
extensions = [
    Extension(
        "ecgcl.nn._kernels",
        ["src/ecgcl/nn/_kernels.pyx"],
        include_dirs=[np.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        extra_compile_args=["-O3"],
    )
]

setup(ext_modules=cythonize(extensions, language_level="3"))
