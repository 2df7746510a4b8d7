"""Build script: compiles the optional Cython kernel core.

The package is fully functional without the extension (a pure-Python
twin of every kernel ships in ``pktsample.kernels.pure``).  Set
``PKTSAMPLE_PURE_PYTHON=1`` to skip the compile step entirely, e.g. on
hosts without a C toolchain.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Try to build the extension; fall back to pure Python on failure."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(
            "WARNING: building the pktsample native kernels failed "
            f"({exc!r}); falling back to the pure-Python backend."
        )


def extensions():
    if os.environ.get("PKTSAMPLE_PURE_PYTHON") == "1":
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(
        [
            Extension(
                "pktsample.kernels._native",
                ["src/pktsample/kernels/_native.pyx"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )


setup(
    ext_modules=extensions(),
    cmdclass={"build_ext": OptionalBuildExt},
)
