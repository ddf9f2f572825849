from setuptools import setup, Extension
from Cython.Build import cythonize
import numpy as np

ext = Extension(
    "f4exotic._ckernels",
    ["src/f4exotic/_ckernels.pyx"],
    include_dirs=[np.get_include()],
    extra_compile_args=["-O3"],
    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
)

setup(ext_modules=cythonize([ext], language_level="3"))
