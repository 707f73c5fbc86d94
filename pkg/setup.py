from setuptools import Extension, setup

# The compiled BDD kernel is optional: if Cython (or a C compiler) is
# unavailable the package falls back to the pure-Python kernel at import.
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "ltldep._bddcore_c",
                ["src/ltldep/_bddcore_c.pyx"],
                extra_compile_args=["-O2"],
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
