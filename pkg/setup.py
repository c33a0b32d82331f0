import os

from setuptools import setup

ext_modules = []
if not os.environ.get("DYNCOVER_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            ["src/dyncover/_speedups.pyx"], compiler_directives={"language_level": "3"}, quiet=True
        )

setup(ext_modules=ext_modules)
