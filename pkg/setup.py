"""Build script: compiles the optional MPFR-backed kernel extension.

The extension is a pure accelerator. If Cython, a C toolchain, or the
mpfr/gmp headers are unavailable, the build degrades to the pure-Python
kernels and the package remains fully functional.

Set SQCOS_PURE_PYTHON=1 to skip the extension build entirely.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """build_ext that downgrades compile failures to a warning."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # toolchain missing
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(f"WARNING: building the sqcos._kernel extension failed ({exc}); "
              "falling back to the pure-Python kernels")


ext_modules = []
cmdclass = {}
if os.environ.get("SQCOS_PURE_PYTHON") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "sqcos._kernel",
                    ["src/sqcos/_kernel.pyx"],
                    libraries=["mpfr", "gmp"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
        cmdclass = {"build_ext": optional_build_ext}
    except ImportError:
        print("WARNING: Cython not available; installing without the "
              "compiled kernel extension")

setup(ext_modules=ext_modules, cmdclass=cmdclass)
