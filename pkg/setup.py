"""Build script: compiles the optional verifier kernel.

The package works without the extension (a numpy fallback is selected at
import time), so a missing compiler or Cython must not fail the install.
Set PDAKIT_NO_EXT=1 to skip the extension build entirely.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing toolchain
            self._skip(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._skip(exc)

    @staticmethod
    def _skip(exc):
        print(f"WARNING: compiled kernel build failed ({exc}); "
              "pdakit will use the pure-python backend")


def extensions():
    if os.environ.get("PDAKIT_NO_EXT"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension("pdakit._kernels.cscan", ["src/pdakit/_kernels/cscan.pyx"])
    return cythonize([ext], language_level=3)


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
