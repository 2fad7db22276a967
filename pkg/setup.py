"""Build the optional compiled polynomial kernels.

The package works without them; a failed compile falls back to the
pure-Python kernels at import time.
"""
import os
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001
            print(f"warning: compiled kernels not built ({exc}); using pure Python", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            print(f"warning: {ext.name} not built ({exc}); using pure Python", file=sys.stderr)


def extensions():
    if os.environ.get("GCCONF_NO_EXT"):
        return []
    try:
        import gmpy2
        from Cython.Build import cythonize
    except ImportError:
        return []
    gdir = os.path.dirname(gmpy2.__file__)
    ext = Extension(
        "gcconf._ckernels",
        ["src/gcconf/_ckernels.pyx"],
        include_dirs=[gdir],
        libraries=["gmp"],
        extra_compile_args=["-O3"],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"}, include_path=[os.path.dirname(gdir)])


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
