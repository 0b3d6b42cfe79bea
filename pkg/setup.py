"""Build hook for the optional compiled search kernel.

The package is pure Python except for treepack/_bb.pyx, a Cython version of
the branch-and-bound set-packing kernel used by the exact oracle.  If Cython
(or a C compiler) is unavailable the extension is skipped and the package
falls back to the pure-Python kernel at import time.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/treepack/_bb.pyx"],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
