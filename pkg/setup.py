"""Build script: compiles the optional kernel extension when Cython and a C
toolchain are available; the package works (slower) without it."""

import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Never fail the install because the speedup extension won't build."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # pragma: no cover
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # pragma: no cover
            self._warn(exc)

    @staticmethod
    def _warn(exc):  # pragma: no cover
        sys.stderr.write(f"warning: building the compiled kernels failed ({exc}); "
                         "falling back to the pure-Python backend\n")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:  # pragma: no cover
        return []
    return cythonize(
        [Extension("ffql.kernels._speedups", ["src/ffql/kernels/_speedups.pyx"])],
        language_level=3,
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
