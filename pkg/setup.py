from setuptools import Extension, setup
from Cython.Build import cythonize

setup(
    ext_modules=cythonize(
        [Extension("sexpand._core", ["src/sexpand/_core.pyx"])],
        compiler_directives={"language_level": "3"},
    )
)
