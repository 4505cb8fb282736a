"""Build script for the compiled measurement kernel.

The package is fully functional without the extension (a NumPy fallback
is selected at import time), so the extension build is marked optional.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    extensions = []
else:
    extensions = cythonize(
        [
            Extension(
                "qcorr._kernel._measured_info",
                ["src/qcorr/_kernel/_measured_info.pyx"],
                optional=True,
            )
        ],
        language_level="3",
    )

setup(ext_modules=extensions)
