import os

from setuptools import Extension, setup

# The compiled kernels are optional: without Cython or a C compiler the
# package installs with the pure-Python fallback only.
ext_modules = []
if os.environ.get("ZETAFORGE_NO_EXT", "") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [Extension("zetaforge._ckernels", ["src/zetaforge/_ckernels.pyx"],
                       extra_compile_args=["-O2"])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
