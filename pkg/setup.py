"""Build hook for the optional Cython search kernel.

Without Cython or a C compiler the package still installs and runs on the
pure-Python kernel.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize
except ImportError:
    pass
else:
    ext_modules = cythonize(
        [Extension("magiclab._ckernel", ["src/magiclab/_ckernel.pyx"])],
        compiler_directives={"language_level": 3},
        quiet=True,
    )

setup(ext_modules=ext_modules)
