import os

from setuptools import setup

ext_modules = []
if not os.environ.get("CRHOM_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:  # pure-Python install
        pass
    else:
        ext_modules = cythonize(
            ["src/crhom/_kernels_c.pyx"],
            compiler_directives={"language_level": "3"},
            quiet=True,
        )

setup(ext_modules=ext_modules)
