import sys

from setuptools import setup

ext_modules = []
try:
    import numpy as np
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("gammares._wcore", ["src/gammares/_wcore.pyx"],
                   include_dirs=[np.get_include()],
                   define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")])],
        language_level=3,
    )
except Exception as exc:  # no Cython / no compiler: pure-Python fallback is used
    print(f"gammares: building without compiled kernel ({exc})", file=sys.stderr)

setup(ext_modules=ext_modules)
