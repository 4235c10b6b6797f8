from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("zncover._kernel", ["src/zncover/_kernel.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # Pure-Python install still works; zncover._backend falls back.
    ext_modules = []

setup(ext_modules=ext_modules)
