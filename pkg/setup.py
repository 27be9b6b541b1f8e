from setuptools import setup

# The compiled kernel is optional: without Cython (or a C compiler) the
# package falls back to the pure-Python twin selected in holonorm.backend.
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/holonorm/_gauss_c.pyx"],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules, package_dir={"": "src"})
