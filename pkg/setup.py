from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
    extensions = cythonize(
        [Extension("infoload._kernels", ["src/infoload/_kernels.pyx"],
                   extra_compile_args=["-O3", "-march=native", "-funsafe-math-optimizations", "-fno-math-errno"])],
        language_level=3,
    )
except ImportError:
    # no Cython: the pure-numpy fallback kernel is used at runtime
    extensions = []

setup(ext_modules=extensions)
