from setuptools import setup, Extension

try:
    from Cython.Build import cythonize
except ImportError:  # the numpy fallback kernel is used instead
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("grasslines.core._kernels", ["src/grasslines/core/_kernels.pyx"])],
        compiler_directives={"language_level": 3},
    )

setup(ext_modules=ext_modules)
